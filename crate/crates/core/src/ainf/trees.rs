//! Planar trees for module transfer, encoded as compositions.
//!
//! A composition `(r_1, …, r_k)` of `i - 1` lists the algebra inputs taken
//! by each branching along the module strand, read from the leaf to the
//! root. Every branching then has valence `r_j + 2 ≥ 3` and sits below the
//! rightmost leaf, and distinct compositions give distinct planar trees.

use std::fmt;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleTree {
    pub composition: Vec<usize>,
}

impl AdmissibleTree {
    pub fn new(composition: Vec<usize>) -> Result<AdmissibleTree> {
        if composition.is_empty() || composition.contains(&0) {
            return Err(Error::Arity(format!(
                "{composition:?} is not a composition"
            )));
        }
        Ok(AdmissibleTree { composition })
    }

    /// Number of inputs including the module input.
    pub fn arity(&self) -> usize {
        self.composition.iter().sum::<usize>() + 1
    }

    /// The composite as a string, e.g. `tm_3(id^{⊗2}⊗sm_2)(id^{⊗3}⊗sm_4)(id^{⊗6}⊗t)`
    /// for `(3, 1, 2)`.
    pub fn formula(&self) -> String {
        let k = self.composition.len();
        let mut out = format!("tm_{}", self.composition[k - 1] + 1);
        let mut before = self.composition[k - 1];
        for &r in self.composition[..k - 1].iter().rev() {
            out.push_str(&format!("({}⊗sm_{})", ids(before), r + 1));
            before += r;
        }
        out.push_str(&format!("({}⊗t)", ids(before)));
        out
    }
}

fn ids(n: usize) -> String {
    if n == 1 {
        "id".into()
    } else {
        format!("id^{{⊗{n}}}")
    }
}

impl fmt::Display for AdmissibleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.composition.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All compositions of `i - 1`, lexicographic; there are `2^{i-2}`.
pub fn enumerate_admissible_trees(i: usize) -> Result<Vec<AdmissibleTree>> {
    if i < 2 {
        return Err(Error::Arity(format!(
            "admissible trees need arity at least 2, got {i}"
        )));
    }
    let mut out = Vec::new();
    compositions(i - 1, &mut Vec::new(), &mut out);
    Ok(out)
}

fn compositions(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<AdmissibleTree>) {
    if rest == 0 {
        out.push(AdmissibleTree {
            composition: prefix.clone(),
        });
        return;
    }
    for first in 1..=rest {
        prefix.push(first);
        compositions(rest - first, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arities() {
        let c = |i| {
            enumerate_admissible_trees(i)
                .unwrap()
                .into_iter()
                .map(|t| t.composition)
                .collect::<Vec<_>>()
        };
        assert_eq!(c(2), vec![vec![1]]);
        assert_eq!(c(3), vec![vec![1, 1], vec![2]]);
        assert!(enumerate_admissible_trees(1).is_err());
    }

    #[test]
    fn counts_are_powers_of_two() {
        for i in 2..=9 {
            assert_eq!(enumerate_admissible_trees(i).unwrap().len(), 1 << (i - 2));
        }
    }

    #[test]
    fn composite_of_312() {
        let t = AdmissibleTree::new(vec![3, 1, 2]).unwrap();
        assert_eq!(t.arity(), 7);
        assert_eq!(t.formula(), "tm_3(id^{⊗2}⊗sm_2)(id^{⊗3}⊗sm_4)(id^{⊗6}⊗t)");
        assert!(enumerate_admissible_trees(7).unwrap().contains(&t));
        assert_eq!(
            AdmissibleTree::new(vec![1]).unwrap().formula(),
            "tm_2(id⊗t)"
        );
    }
}

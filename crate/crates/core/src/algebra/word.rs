use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::Error;

/// Generators of the perturbation algebra. Declaration order is the
/// rewriting order `s < t < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S,
    T,
    X,
}

impl Letter {
    /// Cohomological degree: `s` is -1, `t` is 0, `x` is +1.
    pub fn degree(self) -> i64 {
        match self {
            Letter::S => -1,
            Letter::T => 0,
            Letter::X => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self != Letter::T
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::S => 's',
            Letter::T => 't',
            Letter::X => 'x',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            's' => Some(Letter::S),
            't' => Some(Letter::T),
            'x' => Some(Letter::X),
            _ => None,
        }
    }
}

/// A word over `{s, t, x}` in normal form: no factor `ss`, `st`, `ts` or `tt`.
///
/// Only [`normal_form`] and the concatenation helpers build words, so the
/// invariant holds for every value of this type.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Word {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn x_count(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::X).count()
    }

    /// Number of odd letters (`s` and `x`); the parity of the degree.
    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_odd()).count()
    }

    pub fn is_odd(&self) -> bool {
        self.odd_count() % 2 == 1
    }

    /// Concatenation followed by rewriting at the junction; `None` when the
    /// product vanishes.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        let mut out = self.clone();
        for &l in other.0.iter() {
            if !push_reduced(&mut out.0, l) {
                return None;
            }
        }
        Some(out)
    }

    /// The word with its letters reversed. Relations are palindromic, so the
    /// result is again in normal form.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn parse(s: &str) -> Result<Word, Error> {
        if s == "1" {
            return Ok(Word::empty());
        }
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        normal_form_word(&letters)
            .ok_or_else(|| Error::Parse(format!("word {s:?} reduces to zero")))
    }
}

/// Appends `l` to a reduced word. Returns `false` if the word becomes zero.
fn push_reduced(w: &mut SmallVec<[Letter; 16]>, l: Letter) -> bool {
    match (w.last(), l) {
        (Some(Letter::T), Letter::T) => true,
        (Some(Letter::S | Letter::T), Letter::S | Letter::T) => false,
        _ => {
            w.push(l);
            true
        }
    }
}

/// Normal form of a raw letter sequence under `tt -> t`, `ss, st, ts -> 0`.
pub fn normal_form_word(letters: &[Letter]) -> Option<Word> {
    let mut w = SmallVec::new();
    for &l in letters {
        if !push_reduced(&mut w, l) {
            return None;
        }
    }
    Some(Word(w))
}

impl Ord for Word {
    /// Length first, then lexicographic with `s < t < x`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.0.iter() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every normal-form word with exactly `n` letters `x`: the segments between
/// consecutive `x` are empty, `s` or `t`, so there are `3^(n+1)` of them.
pub fn words_with_x_count(n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for i in 0..=n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for w in &out {
            for seg in [None, Some(Letter::S), Some(Letter::T)] {
                let mut v = w.clone();
                if let Some(l) = seg {
                    v.0.push(l);
                }
                if i < n {
                    v.0.push(Letter::X);
                }
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn rewriting_rules() {
        assert_eq!(normal_form_word(&[T, T]).unwrap().to_string(), "t");
        assert!(normal_form_word(&[S, T]).is_none());
        assert!(normal_form_word(&[T, S]).is_none());
        assert!(normal_form_word(&[S, S]).is_none());
        assert_eq!(normal_form_word(&[S, X, S]).unwrap().to_string(), "sxs");
        assert_eq!(
            normal_form_word(&[T, T, T, X, T, T]).unwrap().to_string(),
            "txt"
        );
    }

    #[test]
    fn order_is_length_lex() {
        let mut ws: Vec<Word> = ["x", "t", "s", "1", "sx", "xs", "tx"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        ws.sort();
        let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["1", "s", "t", "x", "sx", "tx", "xs"]);
    }

    #[test]
    fn word_counts() {
        for n in 0..5 {
            let ws = words_with_x_count(n);
            assert_eq!(ws.len(), 3usize.pow(n as u32 + 1));
            assert!(ws.iter().all(|w| w.x_count() == n));
        }
    }

    #[test]
    fn degree_counts_x_minus_s() {
        let w = Word::parse("sxtxsx").unwrap();
        assert_eq!(w.degree(), 1);
        assert_eq!(w.x_count(), 3);
    }
}

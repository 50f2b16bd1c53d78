//! Problem files: graded bases with sparse map entries, in JSON.
//!
//! ```json
//! {
//!   "kind": "ainf",
//!   "basis": {"1": ["u", "v", "w"], "2": ["uv", "wu"]},
//!   "maps": [
//!     {"arity": 1, "inputs": ["w"], "output": "uv", "coeff": "1"},
//!     {"arity": 2, "inputs": ["u", "v"], "output": "uv", "coeff": "1"}
//!   ]
//! }
//! ```
//!
//! Maps are operations `m_n` of degree `2 - n` (for `complex` files only
//! `n = 1`). Optional blocks: `hodge` (`s` and `t` as arity-1 entries),
//! `perturbation` (complex files), `module_basis` and `module_maps` (module
//! files; the last input of a module entry is a module label).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ainf::{AInfModule, AInfStructure, Basis, Idx, MultiMap};
use crate::linear::{ChainComplex, GradedMap, GradedSpace, HodgeData};
use crate::scalar::{format_q, parse_q, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Complex,
    Ainf,
    Module,
}

/// A coefficient, written as `"p/q"` or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Text(String),
    Int(i64),
}

impl Coeff {
    fn value(&self) -> Result<Q> {
        match self {
            Coeff::Text(s) => parse_q(s),
            Coeff::Int(n) => Ok(crate::scalar::q(*n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeBlock {
    #[serde(default)]
    pub s: Vec<Entry>,
    #[serde(default)]
    pub t: Vec<Entry>,
}

/// The file as written, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub kind: Kind,
    #[serde(default)]
    pub basis: BTreeMap<i32, Vec<String>>,
    #[serde(default)]
    pub maps: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_basis: Option<BTreeMap<i32, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_maps: Option<Vec<Entry>>,
}

/// Validated contents of a problem file.
#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Complex {
        complex: ChainComplex,
        hodge: Option<HodgeData>,
        perturbation: Option<GradedMap>,
    },
    AInf(AInfProblem),
    Module {
        algebra: AInfProblem,
        module_space: GradedSpace,
        module_ops: Vec<MultiMap>,
        hodge: Option<HodgeData>,
    },
}

/// An A∞ algebra as operations `m_n`, `ops[n - 1] = m_n`, with optional
/// Hodge data on its underlying complex.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfProblem {
    pub space: GradedSpace,
    pub ops: Vec<MultiMap>,
    pub hodge: Option<HodgeData>,
}

impl AInfProblem {
    /// The structure truncated at `cap`.
    pub fn structure(&self, cap: usize) -> Result<AInfStructure> {
        Ok(
            AInfStructure::from_m_family(&self.space, cap.max(self.ops.len()), &self.ops)?
                .truncate(cap),
        )
    }

    /// Given Hodge data, or the canonical one for `m_1`.
    pub fn hodge_or_default(&self) -> Result<HodgeData> {
        let a = self.structure(1)?;
        let c = ChainComplex::new(self.space.clone(), crate::ainf::decomposition::b1_map(&a))?;
        Ok(match &self.hodge {
            Some(hd) => hd.clone(),
            None => crate::linear::build_hodge(&c),
        })
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    validate(&file)
}

pub fn load_problem(path: &std::path::Path) -> Result<Problem> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}

fn space_of(basis: &BTreeMap<i32, Vec<String>>, what: &str) -> Result<GradedSpace> {
    GradedSpace::from_labels(
        basis
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(n, v)| (*n, v.clone()))
            .collect(),
    )
    .map_err(|e| Error::Semantic(format!("{what}: {e}")))
}

fn lookup(b: &Basis, label: &str, at: &str) -> Result<Idx> {
    b.find(label)
        .ok_or_else(|| Error::Semantic(format!("{at}: unknown label {label:?}")))
}

/// Entries of a linear map with the given shift.
fn linear_map(space: &GradedSpace, entries: &[Entry], shift: i32, what: &str) -> Result<GradedMap> {
    let basis = Basis::suspend(space);
    let mut m = GradedMap::zero(space, shift);
    let mut seen = BTreeMap::new();
    for (k, e) in entries.iter().enumerate() {
        let at = format!("{what}[{k}]");
        if e.arity != 1 || e.inputs.len() != 1 {
            return Err(Error::Semantic(format!(
                "{at}: expected arity 1 with one input"
            )));
        }
        let i = lookup(&basis, &e.inputs[0], &at)?;
        let o = lookup(&basis, &e.output, &at)?;
        if basis.degree(o) != basis.degree(i) + shift {
            return Err(Error::Semantic(format!(
                "{at}: degree mismatch, {} has degree {} but {} has degree {} (shift {shift})",
                e.inputs[0],
                basis.degree(i),
                e.output,
                basis.degree(o)
            )));
        }
        let c = e
            .coeff
            .value()
            .map_err(|err| Error::Semantic(format!("{at}: {err}")))?;
        *seen
            .entry((i, o))
            .or_insert_with(|| Q::from_integer(0.into())) += c;
    }
    for ((i, o), c) in seen {
        let (n, col) = basis.position(i);
        m.set_entry(n, basis.position(o).1, col, c);
    }
    Ok(m)
}

/// Entries of multilinear operations `m_n` of degree `2 - n`. Input labels
/// are resolved in `alg` except the last one when `module` is given.
fn operations(
    alg: &Basis,
    module: Option<&Basis>,
    entries: &[Entry],
    what: &str,
) -> Result<Vec<MultiMap>> {
    let mut ops: Vec<MultiMap> = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let at = format!("{what}[{k}]");
        if e.arity == 0 || e.inputs.len() != e.arity {
            return Err(Error::Semantic(format!(
                "{at}: arity {} with {} inputs",
                e.arity,
                e.inputs.len()
            )));
        }
        let mut word = crate::ainf::TWord::new();
        let mut in_deg = 0;
        for (j, l) in e.inputs.iter().enumerate() {
            let b = match module {
                Some(m) if j + 1 == e.inputs.len() => m,
                _ => alg,
            };
            let i = lookup(b, l, &format!("{at}.inputs[{j}]"))?;
            in_deg += b.degree(i);
            word.push(i);
        }
        let out_basis = module.unwrap_or(alg);
        let o = lookup(out_basis, &e.output, &format!("{at}.output"))?;
        let expected = in_deg + 2 - e.arity as i32;
        if out_basis.degree(o) != expected {
            return Err(Error::Semantic(format!(
                "{at}: degree mismatch, output {} has degree {} but m_{} of these inputs has degree {expected}",
                e.output,
                out_basis.degree(o),
                e.arity
            )));
        }
        let c = e
            .coeff
            .value()
            .map_err(|err| Error::Semantic(format!("{at}: {err}")))?;
        if ops.len() < e.arity {
            ops.resize(e.arity, MultiMap::new());
        }
        ops[e.arity - 1].add_entry(word, o, c);
    }
    Ok(ops)
}

fn hodge_block(space: &GradedSpace, block: &Option<HodgeBlock>) -> Result<Option<HodgeData>> {
    block
        .as_ref()
        .map(|h| {
            Ok(HodgeData {
                s: linear_map(space, &h.s, -1, "hodge.s")?,
                t: linear_map(space, &h.t, 0, "hodge.t")?,
            })
        })
        .transpose()
}

pub fn validate(file: &ProblemFile) -> Result<Problem> {
    let space = space_of(&file.basis, "basis")?;
    let basis = Basis::suspend(&space);
    match file.kind {
        Kind::Complex => {
            let d = linear_map(&space, &file.maps, 1, "maps")?;
            let complex = ChainComplex::new(space.clone(), d)?;
            let hodge = hodge_block(&space, &file.hodge)?;
            let perturbation = file
                .perturbation
                .as_ref()
                .map(|p| linear_map(&space, p, 1, "perturbation"))
                .transpose()?;
            Ok(Problem::Complex {
                complex,
                hodge,
                perturbation,
            })
        }
        Kind::Ainf => {
            let ops = operations(&basis, None, &file.maps, "maps")?;
            let hodge = hodge_block(&space, &file.hodge)?;
            Ok(Problem::AInf(AInfProblem { space, ops, hodge }))
        }
        Kind::Module => {
            let mspace = space_of(
                file.module_basis
                    .as_ref()
                    .ok_or_else(|| Error::Semantic("module file without module_basis".into()))?,
                "module_basis",
            )?;
            let mbasis = Basis::suspend(&mspace);
            let ops = operations(&basis, None, &file.maps, "maps")?;
            let module_ops = operations(
                &basis,
                Some(&mbasis),
                file.module_maps.as_deref().unwrap_or(&[]),
                "module_maps",
            )?;
            let hodge = hodge_block(&mspace, &file.hodge)?;
            Ok(Problem::Module {
                algebra: AInfProblem {
                    space,
                    ops,
                    hodge: None,
                },
                module_space: mspace,
                module_ops,
                hodge,
            })
        }
    }
}

impl Problem {
    /// The module structure of a module problem, truncated at `cap`, with
    /// the Hodge data given for `M`.
    pub fn module(&self, cap: usize) -> Result<Option<(AInfModule, Option<HodgeData>)>> {
        let Problem::Module {
            algebra,
            module_space,
            module_ops,
            hodge,
        } = self
        else {
            return Ok(None);
        };
        let n = cap.max(algebra.ops.len()).max(module_ops.len());
        let a = AInfStructure::from_m_family(&algebra.space, n, &algebra.ops)?;
        let mut m = AInfModule::from_m_family(&a, module_space, module_ops)?;
        m.algebra = m.algebra.truncate(cap);
        m.ops.truncate(cap);
        m.ops.resize(cap, MultiMap::new());
        m.cap = cap;
        Ok(Some((m, hodge.clone())))
    }
}

fn basis_block(space: &GradedSpace) -> BTreeMap<i32, Vec<String>> {
    space.basis().clone()
}

/// Entries of `m_n`-style operations, sorted by arity, then inputs, then
/// output (all by basis order).
fn entries_of(
    ops: &[MultiMap],
    label_in: impl Fn(usize, usize, Idx) -> String,
    label_out: impl Fn(Idx) -> String,
) -> Vec<Entry> {
    let mut out = Vec::new();
    for (k, m) in ops.iter().enumerate() {
        for (w, vals) in m.entries() {
            for (o, c) in vals {
                out.push(Entry {
                    arity: k + 1,
                    inputs: w
                        .iter()
                        .enumerate()
                        .map(|(j, &i)| label_in(w.len(), j, i))
                        .collect(),
                    output: label_out(*o),
                    coeff: Coeff::Text(format_q(c)),
                });
            }
        }
    }
    out
}

/// An A∞ structure as a problem file in the `m`-convention.
pub fn structure_file(a: &AInfStructure) -> ProblemFile {
    let b = &a.basis;
    ProblemFile {
        kind: Kind::Ainf,
        basis: basis_block(a.space()),
        maps: entries_of(
            &a.to_m_family(),
            |_, _, i| b.label(i).to_string(),
            |o| b.label(o).to_string(),
        ),
        ..ProblemFile::default()
    }
}

/// A module together with its algebra as a problem file.
pub fn module_file(m: &AInfModule) -> ProblemFile {
    let (ab, mb) = (&m.algebra.basis, &m.basis);
    let mut file = structure_file(&m.algebra);
    file.kind = Kind::Module;
    file.module_basis = Some(basis_block(m.space()));
    file.module_maps = Some(entries_of(
        &m.to_m_family(),
        |len, j, i| {
            if j + 1 == len {
                mb.label(i).to_string()
            } else {
                ab.label(i).to_string()
            }
        },
        |o| mb.label(o).to_string(),
    ));
    file
}

/// A graded linear map as arity-1 entries.
pub fn linear_entries(space: &GradedSpace, target: &GradedSpace, m: &GradedMap) -> Vec<Entry> {
    let mut out = Vec::new();
    for (n, row, col, c) in m.entries() {
        out.push(Entry {
            arity: 1,
            inputs: vec![space.labels(n)[col].clone()],
            output: target.labels(n + m.shift())[row].clone(),
            coeff: Coeff::Text(format_q(c)),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const MASSEY: &str = r#"{
      "kind": "ainf",
      "basis": {"1": ["u", "v", "w"], "2": ["uv", "wu"]},
      "maps": [
        {"arity": 1, "inputs": ["w"], "output": "uv", "coeff": "1"},
        {"arity": 2, "inputs": ["u", "v"], "output": "uv", "coeff": "1"},
        {"arity": 2, "inputs": ["w", "u"], "output": "wu", "coeff": 1}
      ]
    }"#;

    #[test]
    fn empty_file_is_trivial_complex() {
        let p = parse_problem("{}").unwrap();
        let Problem::Complex {
            complex,
            hodge,
            perturbation,
        } = p
        else {
            panic!()
        };
        assert_eq!(complex.space.total_dim(), 0);
        assert!(hodge.is_none() && perturbation.is_none());
    }

    #[test]
    fn unknown_label_is_named() {
        let text = MASSEY.replace("\"output\": \"wu\"", "\"output\": \"zz\"");
        let err = parse_problem(&text).unwrap_err();
        assert!(
            matches!(&err, Error::Semantic(m) if m.contains("\"zz\"") && m.contains("maps[2]")),
            "{err}"
        );
    }

    #[test]
    fn massey_loads() {
        let Problem::AInf(p) = parse_problem(MASSEY).unwrap() else {
            panic!()
        };
        assert_eq!(p.space.dim(1), 3);
        assert_eq!(p.space.dim(2), 2);
        assert_eq!(p.structure(4).unwrap(), crate::gen::massey().structure(4));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_problem("{\n  \"kind\": }").unwrap_err();
        assert!(
            matches!(&err, Error::Parse(m) if m.contains("line 2")),
            "{err}"
        );
    }

    #[test]
    fn degree_mismatch_is_semantic() {
        let text = MASSEY.replace(
            "\"inputs\": [\"w\"], \"output\": \"uv\"",
            "\"inputs\": [\"w\"], \"output\": \"v\"",
        );
        assert!(
            matches!(parse_problem(&text), Err(Error::Semantic(m)) if m.contains("degree mismatch"))
        );
    }

    #[test]
    fn coefficients_are_canonical() {
        let text = MASSEY.replace("\"coeff\": 1}", "\"coeff\": \"-4/-6\"}");
        let Problem::AInf(p) = parse_problem(&text).unwrap() else {
            panic!()
        };
        let file = structure_file(&p.structure(2).unwrap());
        assert!(file
            .maps
            .iter()
            .any(|e| e.coeff == Coeff::Text("2/3".into())));
    }

    #[test]
    fn structure_round_trip() {
        let Problem::AInf(p) = parse_problem(MASSEY).unwrap() else {
            panic!()
        };
        let a = p.structure(3).unwrap();
        let text = serde_json::to_string(&structure_file(&a)).unwrap();
        let Problem::AInf(q) = parse_problem(&text).unwrap() else {
            panic!()
        };
        assert_eq!(q.structure(3).unwrap(), a);
    }
}

//! The command-line driver.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails (the
//! report is still written), 2 for malformed input or usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::problem::{
    linear_entries, load_problem, module_file, structure_file, AInfProblem, Coeff, Entry, Problem,
};
use super::report::{write_report, ReportFile};
use crate::ainf::{
    codifferential_check, decomposition, enumerate_admissible_trees, perturbed_hodge_reports,
    transfer_minimal, transfer_module, AInfMorphism, AInfStructure, Basis, MultiMap,
};
use crate::algebra::verify_catalog;
use crate::linear::{
    build_hodge, cohomology_dims, gauge_conjugation, make_perturbation, transferred_structure,
    verify_hodge, ChainComplex, GradedSpace,
};
use crate::report::{IdentityReport, Witness};
use crate::scalar::{format_q, Q};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "pertalg",
    version,
    about = "Exact homological perturbation and A-infinity transfer"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the identity catalog of the perturbation algebra up to x-count CAP.
    VerifyAlgebra {
        #[arg(long, default_value_t = 6)]
        cap: usize,
        /// Restrict to these identity ids.
        #[arg(long = "identity")]
        identities: Vec<String>,
    },
    /// Hodge decomposition, perturbation lemma and gauge conjugation for a complex.
    Hodge { file: PathBuf },
    /// Minimal model with its morphisms and the perturbed Hodge axioms.
    Transfer {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Minimal model on the retract.
    Minimal {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Splitting into minimal and linear contractible parts.
    Split {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Module transfer by admissible trees and by series.
    ModuleTransfer {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// List admissible trees of the given arity.
    Trees {
        #[arg(long)]
        arity: usize,
    },
}

/// Runs with process stdio; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let mut report = ReportFile::new(echo);
    if let Err(e) = execute(&cli.command, &mut report) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let _ = stderr.write_all(report.summary().as_bytes());
    if let Err(e) = write_report(&report, cli.out.as_deref(), stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    i32::from(!report.passed())
}

fn execute(cmd: &Command, report: &mut ReportFile) -> Result<()> {
    match cmd {
        Command::VerifyAlgebra { cap, identities } => verify_algebra(*cap, identities, report),
        Command::Hodge { file } => hodge(file, report),
        Command::Transfer { file, cap } => ainf_command(file, *cap, report, Mode::Transfer),
        Command::Minimal { file, cap } => ainf_command(file, *cap, report, Mode::Minimal),
        Command::Split { file, cap } => ainf_command(file, *cap, report, Mode::Split),
        Command::ModuleTransfer { file, cap } => module_command(file, *cap, report),
        Command::Trees { arity } => trees(*arity, report),
    }
}

fn verify_algebra(cap: usize, identities: &[String], report: &mut ReportFile) -> Result<()> {
    let all = verify_catalog::<Q>(cap);
    if let Some(bad) = identities
        .iter()
        .find(|id| !all.iter().any(|r| &r.identity_id == *id))
    {
        return Err(Error::Semantic(format!("unknown identity {bad:?}")));
    }
    report.results = all
        .into_iter()
        .filter(|r| identities.is_empty() || identities.contains(&r.identity_id))
        .collect();
    report.insert("cap", cap);
    Ok(())
}

fn dims_json(space: &GradedSpace) -> Value {
    degree_map(&space.dims())
}

fn degree_map(m: &std::collections::BTreeMap<i32, usize>) -> Value {
    json!(m
        .iter()
        .map(|(n, d)| (n.to_string(), json!(d)))
        .collect::<serde_json::Map<_, _>>())
}

/// Failures of the perturbation input that are verdicts rather than
/// malformed input.
fn as_report(id: &str, e: &Error) -> Option<IdentityReport> {
    let (equation, term) = match e {
        Error::MaurerCartan {
            degree,
            row,
            col,
            entry,
        } => (
            "(d + x)² = 0".to_string(),
            format!("degree {degree}, entry ({row}, {col}) = {entry}"),
        ),
        Error::Singular { which, degree } => (
            format!("1 + {which} invertible"),
            format!("degree {degree}, determinant 0"),
        ),
        _ => return None,
    };
    let grade = match e {
        Error::MaurerCartan { degree, .. } | Error::Singular { degree, .. } => *degree as i64,
        _ => 0,
    };
    Some(IdentityReport::new(
        id,
        0,
        Some(Witness {
            equation,
            term,
            coefficient: String::new(),
            grade,
        }),
    ))
}

fn hodge(file: &Path, report: &mut ReportFile) -> Result<()> {
    let Problem::Complex {
        complex,
        hodge,
        perturbation,
    } = load_problem(file)?
    else {
        return Err(Error::Semantic(
            "hodge expects a file of kind \"complex\"".into(),
        ));
    };
    let hd = hodge.unwrap_or_else(|| build_hodge(&complex));
    let space = &complex.space;
    report.results.extend(verify_hodge(&complex, &hd));
    report.insert("dims", dims_json(space));
    report.insert("cohomology", degree_map(&cohomology_dims(&complex.d)));
    report.insert(
        "hodge",
        json!({"s": linear_entries(space, space, &hd.s), "t": linear_entries(space, space, &hd.t)}),
    );
    let x = perturbation.unwrap_or_else(|| crate::linear::GradedMap::zero(space, 1));
    let p = match make_perturbation(&complex, &hd, x) {
        Ok(p) => p,
        Err(e) => {
            report.results.push(as_report("PERTURBATION", &e).ok_or(e)?);
            return Ok(());
        }
    };
    let tr = transferred_structure(&complex, &hd, &p);
    report.results.extend(tr.reports.iter().cloned());
    let tv = &tr.retract.space;
    let dxi = &tr.d_t + &tr.xi;
    report.insert(
        "transferred",
        json!({
            "basis": tv.basis(),
            "differential": linear_entries(tv, tv, &dxi),
            "incl": linear_entries(tv, space, &tr.incl),
            "proj": linear_entries(space, tv, &tr.proj),
        }),
    );
    match gauge_conjugation(&complex, &hd, &p) {
        Ok((g, rep)) => {
            report.results.push(rep);
            report.insert("gauge", linear_entries(space, space, &g));
        }
        Err(e) => report.results.push(as_report("CONJ", &e).ok_or(e)?),
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Transfer,
    Minimal,
    Split,
}

/// Morphism components as entries in the suspended convention.
fn morphism_entries(f: &AInfMorphism) -> Vec<Entry> {
    maps_entries(&f.comps, &f.source.basis, &f.target.basis)
}

fn maps_entries(ops: &[MultiMap], src: &Basis, tgt: &Basis) -> Vec<Entry> {
    let mut out = Vec::new();
    for (k, m) in ops.iter().enumerate() {
        for (w, vals) in m.entries() {
            for (o, c) in vals {
                out.push(Entry {
                    arity: k + 1,
                    inputs: w.iter().map(|&i| src.label(i).to_string()).collect(),
                    output: tgt.label(*o).to_string(),
                    coeff: Coeff::Text(format_q(c)),
                });
            }
        }
    }
    out
}

/// Stasheff identities of the input under `INPUT-` ids; `None` if they fail.
fn checked_input(
    p: &AInfProblem,
    cap: usize,
    report: &mut ReportFile,
) -> Result<Option<AInfStructure>> {
    let a = p.structure(cap)?;
    let input: Vec<IdentityReport> = codifferential_check(&a)
        .into_iter()
        .map(|mut r| {
            r.identity_id = format!("INPUT-{}", r.identity_id);
            r
        })
        .collect();
    let ok = input.iter().all(IdentityReport::passed);
    report.results.extend(input);
    Ok(ok.then_some(a))
}

fn ainf_command(file: &Path, cap: usize, report: &mut ReportFile, mode: Mode) -> Result<()> {
    let Problem::AInf(p) = load_problem(file)? else {
        return Err(Error::Semantic("expected a file of kind \"ainf\"".into()));
    };
    report.insert("cap", cap);
    report.insert("dims", dims_json(&p.space));
    let Some(a) = checked_input(&p, cap, report)? else {
        return Ok(());
    };
    let hd = p.hodge_or_default()?;
    report.results.extend(crate::linear::verify_hodge_against(
        &crate::ainf::decomposition::b1_map(&a),
        &hd,
    ));
    if !report.passed() {
        return Ok(());
    }
    match mode {
        Mode::Minimal | Mode::Transfer => {
            let min = transfer_minimal(&a, &hd, cap);
            report.results.extend(min.reports.iter().cloned());
            report.insert("structure", structure_file(&min.structure));
            if mode == Mode::Transfer {
                report.results.extend(perturbed_hodge_reports(&a, &hd, cap));
                report.insert("incl", morphism_entries(&min.incl));
                report.insert("proj", morphism_entries(&min.proj));
            }
        }
        Mode::Split => {
            let dec = decomposition(&a, &hd, cap);
            report.results.extend(dec.minimal.reports.iter().cloned());
            report.results.extend(dec.reports.iter().cloned());
            report.insert("minimal", structure_file(&dec.minimal.structure));
            report.insert("structure", structure_file(&dec.split));
            report.insert("iso", morphism_entries(&dec.iso));
        }
    }
    Ok(())
}

fn module_command(file: &Path, cap: usize, report: &mut ReportFile) -> Result<()> {
    let problem = load_problem(file)?;
    let Problem::Module {
        algebra,
        module_space,
        ..
    } = &problem
    else {
        return Err(Error::Semantic(
            "module-transfer expects a file of kind \"module\"".into(),
        ));
    };
    report.insert("cap", cap);
    report.insert("dims", dims_json(&algebra.space));
    report.insert("module_dims", dims_json(module_space));
    if checked_input(algebra, cap, report)?.is_none() {
        return Ok(());
    }
    let (m, hd) = problem.module(cap)?.expect("module problem");
    let input: Vec<IdentityReport> =
        crate::ainf::module::module_check_named(&m, "INPUT-MODULE-STASHEFF");
    let ok = input.iter().all(IdentityReport::passed);
    report.results.extend(input);
    if !ok {
        return Ok(());
    }
    let hd = match hd {
        Some(hd) => hd,
        None => build_hodge(&ChainComplex::new(m.space().clone(), m.differential())?),
    };
    report
        .results
        .extend(crate::linear::verify_hodge_against(&m.differential(), &hd));
    if !report.passed() {
        return Ok(());
    }
    match transfer_module(&m, &hd, cap) {
        Ok(tr) => {
            report.results.extend(tr.reports.iter().cloned());
            report.insert("structure", module_file(&tr.minimal));
            report.insert("split", module_file(&tr.split));
            report.insert(
                "split_iso",
                maps_entries(&tr.split_iso.comps, &m.basis, &m.basis),
            );
        }
        Err(Error::TransferMismatch { arity, detail }) => {
            report.results.push(IdentityReport::new(
                format!("TREE-SERIES-{arity}"),
                cap,
                Some(Witness {
                    equation: "tree sum = series".into(),
                    term: detail,
                    coefficient: String::new(),
                    grade: arity as i64,
                }),
            ));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn trees(arity: usize, report: &mut ReportFile) -> Result<()> {
    let trees = enumerate_admissible_trees(arity)?;
    let listing: Vec<Value> = trees
        .iter()
        .map(|t| json!({"composition": t.composition, "formula": t.formula()}))
        .collect();
    report.insert("arity", arity);
    report.insert("count", trees.len());
    report.insert("trees", listing);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(
            std::iter::once("pertalg").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn trees_lists_compositions() {
        let (code, out, _) = run_capture(&["trees", "--arity", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["data"]["count"], 4);
        assert_eq!(v["data"]["trees"][0]["composition"], json!([1, 1, 1]));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["trees"]).0, 2);
        assert_eq!(run_capture(&["trees", "--arity", "1"]).0, 2);
        assert_eq!(run_capture(&["nonsense"]).0, 2);
        assert_eq!(run_capture(&["minimal", "/nonexistent/file.json"]).0, 2);
    }

    #[test]
    fn unknown_identity_is_malformed() {
        assert_eq!(
            run_capture(&["verify-algebra", "--cap", "1", "--identity", "NOPE"]).0,
            2
        );
        let (code, out, _) = run_capture(&["verify-algebra", "--cap", "2", "--identity", "E1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"E1\""));
    }
}

//! Command-line front end. Every command writes one artifact (JSON by
//! default) to stdout or `--output`; exit code 2 means a cap was exceeded.

use crate::algebra::rat::parse_rat;
use crate::asymptotics::analysis::check_against;
use crate::asymptotics::exact::algebraic_f0;
use crate::asymptotics::{asymptotic_expansion, AsymExpansion, CheckReport};
use crate::closed_forms::catalog::{catalog, fn_closed};
use crate::closed_forms::ExtremeKind;
use crate::equilibrium::{equilibrium, EquilibriumResult, Potential};
use crate::planar::{edge_extreme_fn, extreme_series, f0_multivariate, DEFAULT_WEIGHT_CAP};
use crate::series::{Grading, MultiSeries, Partition};
use crate::wick_oracle::{self, connected_coefficients, genus0, DEFAULT_ORACLE_CAP, HARD_ORACLE_CAP};
use crate::{verify, Rat};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

/// Largest weight cap accepted by `series`.
pub const SERIES_CAP_LIMIT: u32 = 20;
/// Largest t-cap for the multivariate route of `extreme` (face and mixed kinds).
pub const FACE_T_CAP_LIMIT: usize = 10;
/// Largest t-cap for the edge kinds, which use the single-variable recursion.
pub const EDGE_T_CAP_LIMIT: usize = 2000;
pub const ASYM_N_LIMIT: u64 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "planarlim", version, about = "Planar free energy of one-cut matrix models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Working precision for floating-point stages.
    #[arg(long, default_value_t = 256, global = true)]
    pub bits: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// R, S and F0 tables up to a weight cap.
    Series {
        #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
        cap: u32,
        /// Annotate F0 with the Wick-enumeration comparison.
        #[arg(long)]
        oracle: bool,
        /// Allow oracle caps up to 10.
        #[arg(long)]
        extended: bool,
    },
    /// Closed forms, series and recurrence table of an extreme potential.
    Extreme {
        kind: ExtremeKind,
        #[arg(long, default_value_t = 8)]
        t_cap: usize,
        /// Print only f_N.
        #[arg(long = "fn")]
        fn_index: Option<usize>,
    },
    /// Coefficient asymptotics of one kind, or `all`.
    Asymptotics {
        kind: String,
        /// Number of correction terms.
        #[arg(long, short, default_value_t = 2)]
        m: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![50u64, 100, 200])]
        n: Vec<u64>,
    },
    /// One-cut equilibrium measure of a polynomial potential.
    Equilibrium {
        #[arg(long, allow_hyphen_values = true)]
        a2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a4: Option<String>,
        /// V(x) = x^2/2.
        #[arg(long)]
        gaussian: bool,
        /// Raw coefficients v0,v1,v2,... of V.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coefficients: Vec<String>,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Connected Wick coefficients by genus.
    Oracle {
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u32,
        #[arg(long)]
        extended: bool,
    },
    /// Full acceptance suite as a pass/fail matrix.
    Verify {
        /// Criterion numbers to run (default all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Cap(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Cap(m) | CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn render_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn series_rows(name: &str, s: &MultiSeries) -> Vec<(String, Partition, Rat)> {
    s.sorted_terms().into_iter().map(|(p, c)| (name.to_string(), p, c)).collect()
}

fn cmd_series(cap: u32, oracle: bool, extended: bool, fmt: Format) -> Result<(String, bool), CliError> {
    if cap > SERIES_CAP_LIMIT {
        return Err(CliError::Cap(format!("weight cap {cap} above the limit {SERIES_CAP_LIMIT}")));
    }
    let res = f0_multivariate(cap);
    let matches: Option<BTreeMap<Partition, bool>> = if oracle {
        let map = connected_coefficients(cap, extended).map_err(|e| CliError::Cap(e.to_string()))?;
        let g0 = genus0(&map);
        let mut m: BTreeMap<Partition, bool> = BTreeMap::new();
        for (p, c) in res.f0.terms() {
            m.insert(p.clone(), g0.get(p) == Some(c));
        }
        for (p, c) in &g0 {
            m.entry(p.clone()).or_insert(c == &Rat::from_integer(0.into()));
        }
        Some(m)
    } else {
        None
    };
    let all_ok = matches.as_ref().map(|m| m.values().all(|&b| b)).unwrap_or(true);
    let mut rows = series_rows("R", &res.rs.r);
    rows.extend(series_rows("S", &res.rs.s));
    rows.extend(series_rows("F0", &res.f0));
    let flag = |name: &str, p: &Partition| -> Option<bool> {
        if name == "F0" {
            matches.as_ref().map(|m| m.get(p).copied().unwrap_or(false))
        } else {
            None
        }
    };
    let out = match fmt {
        Format::Json => {
            let table = |name: &str, s: &MultiSeries| -> serde_json::Value {
                s.sorted_terms()
                    .iter()
                    .map(|(p, c)| {
                        let mut o = json!({"partition": p.to_json(), "monomial": p.to_string(), "coeff": c.to_string(), "decimal": crate::planar::approx(c)});
                        if let Some(b) = flag(name, p) {
                            o["oracle_match"] = json!(b);
                        }
                        o
                    })
                    .collect()
            };
            render_json(&json!({
                "weight_cap": cap,
                "R": table("R", &res.rs.r),
                "S": table("S", &res.rs.s),
                "F0": table("F0", &res.f0),
                "oracle_all_match": matches.as_ref().map(|_| all_ok),
            }))
        }
        Format::Csv => {
            let mut s = String::from("series,weight,monomial,coeff,oracle_match\n");
            for (name, p, c) in &rows {
                let m = flag(name, p).map(|b| b.to_string()).unwrap_or_default();
                s.push_str(&format!("{name},{},{p},{c},{m}\n", p.weight()));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let mut last = String::new();
            for (name, p, c) in &rows {
                if *name != last {
                    s.push_str(&format!("{name}:\n"));
                    last = name.clone();
                }
                let m = flag(name, p).map(|b| format!("  oracle: {b}")).unwrap_or_default();
                s.push_str(&format!("  {c} · {p}{m}\n"));
            }
            s
        }
    };
    Ok((out, all_ok))
}

fn extreme_coeffs(kind: ExtremeKind, t_cap: usize) -> Result<Vec<Rat>, CliError> {
    match (kind.grading(), kind) {
        (_, ExtremeKind::Mixed34Edge) | (Grading::Face, _) => {
            if t_cap > FACE_T_CAP_LIMIT {
                return Err(CliError::Cap(format!("t-cap {t_cap} above the limit {FACE_T_CAP_LIMIT} for {}", kind.tag())));
            }
            let (_, _, f) = extreme_series(kind, t_cap as u32);
            Ok((1..=t_cap as i64).map(|k| f.coeff_t(k)).collect())
        }
        _ => {
            if t_cap > EDGE_T_CAP_LIMIT {
                return Err(CliError::Cap(format!("t-cap {t_cap} above the limit {EDGE_T_CAP_LIMIT}")));
            }
            Ok(edge_extreme_fn(kind, t_cap))
        }
    }
}

fn cmd_extreme(kind: ExtremeKind, t_cap: usize, fn_index: Option<usize>, fmt: Format) -> Result<String, CliError> {
    let t_cap = fn_index.map(|n| n.max(t_cap)).unwrap_or(t_cap);
    let coeffs = extreme_coeffs(kind, t_cap)?;
    if let Some(n) = fn_index {
        if n == 0 {
            return Ok("0\n".into());
        }
        let c = &coeffs[n - 1];
        return Ok(match fmt {
            Format::Json => render_json(&json!({"kind": kind.tag(), "n": n, "f_n": c.to_string()})),
            _ => format!("{c}\n"),
        });
    }
    let rec = catalog(kind);
    let recvals = rec.recurrence.as_ref().and_then(|r| r.evaluate(t_cap).ok());
    let rows: Vec<(usize, Rat, Option<Rat>, Option<Rat>)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = i + 1;
            (n, c.clone(), recvals.as_ref().map(|v| v[n].clone()), fn_closed(kind, n as u64).ok())
        })
        .collect();
    let s = |x: &Option<Rat>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
    Ok(match fmt {
        Format::Json => {
            let mut v = rec.to_json(&coeffs);
            v["t_cap"] = json!(t_cap);
            v["table"] = rows
                .iter()
                .map(|(n, c, r, f)| json!({"n": n, "series": c.to_string(), "recurrence": r.as_ref().map(|x| x.to_string()), "closed": f.as_ref().map(|x| x.to_string())}))
                .collect();
            render_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("n,series,recurrence,closed\n");
            for (n, c, r, f) in &rows {
                out.push_str(&format!("{n},{c},{},{}\n", s(r), s(f)));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{}\n", kind.tag());
            for (label, v) in [("R", rec.r_closed), ("S", rec.s_closed), ("F0", rec.f0_closed)] {
                if let Some(v) = v {
                    out.push_str(&format!("{label} = {v}\n"));
                }
            }
            out.push_str(&format!("f_1..f_{t_cap}: {}\n", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")));
            if recvals.is_some() {
                out.push_str("n  series  recurrence  closed\n");
                for (n, c, r, f) in &rows {
                    out.push_str(&format!("{n}  {c}  {}  {}\n", s(r), s(f)));
                }
            }
            out
        }
    })
}

fn asym_one(kind: ExtremeKind, m: usize, ns: &[u64], bits: usize) -> Result<(AsymExpansion, CheckReport), CliError> {
    let e = asymptotic_expansion(kind, m.max(1), bits).map_err(failed)?;
    let top = *ns.iter().max().unwrap_or(&0) as usize;
    let f = algebraic_f0(kind, top + 1).map_err(failed)?;
    let rep = check_against(&e, &f, ns, m).map_err(failed)?;
    Ok((e, rep))
}

fn cmd_asymptotics(kind: &str, m: usize, ns: &[u64], bits: usize, fmt: Format) -> Result<String, CliError> {
    if let Some(n) = ns.iter().find(|&&n| n > ASYM_N_LIMIT || n == 0) {
        return Err(CliError::Cap(format!("n = {n} outside 1..={ASYM_N_LIMIT}")));
    }
    let kinds: Vec<ExtremeKind> = if kind == "all" {
        ExtremeKind::ALL.to_vec()
    } else {
        vec![kind.parse().map_err(failed)?]
    };
    let results: Vec<(ExtremeKind, Result<(AsymExpansion, CheckReport), CliError>)> = std::thread::scope(|s| {
        let hs: Vec<_> = kinds.iter().map(|&k| s.spawn(move || (k, asym_one(k, m, ns, bits)))).collect();
        hs.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut done = Vec::new();
    for (k, r) in results {
        done.push((k, r?));
    }
    Ok(match fmt {
        Format::Json => {
            let v: Vec<serde_json::Value> = done
                .iter()
                .map(|(_, (e, rep))| {
                    let mut o = e.to_json();
                    o["validation"] = rep.to_json();
                    o
                })
                .collect();
            render_json(&if v.len() == 1 { v[0].clone() } else { serde_json::Value::Array(v) })
        }
        Format::Csv => {
            let mut out = String::from("kind,n,exact_fn,asym_value,rel_error\n");
            for (k, (_, rep)) in &done {
                for r in &rep.rows {
                    out.push_str(&format!("{},{},{},{},{:e}\n", k.tag(), r.n, r.exact, r.approx.to_sci(20), r.rel_error));
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (k, (e, rep)) in &done {
                out.push_str(&format!(
                    "{}: t0 = {}, rate = {}, stokes = {}, corrections = [{}]\n",
                    k.tag(),
                    e.t0.to_sci(20),
                    e.rate.to_sci(20),
                    e.stokes.to_sci(20),
                    e.corrections.iter().map(|d| d.to_sci(12)).collect::<Vec<_>>().join(", ")
                ));
                for r in &rep.rows {
                    out.push_str(&format!("  n = {}: rel error {:.3e}\n", r.n, r.rel_error));
                }
            }
            out
        }
    })
}

fn parse_r(s: &str) -> Result<Rat, CliError> {
    parse_rat(s.trim()).map_err(|e| CliError::Failed(format!("{s}: {e}")))
}

fn cmd_equilibrium(
    a2: Option<String>,
    a4: Option<String>,
    gaussian: bool,
    coefficients: Vec<String>,
    samples: usize,
    bits: usize,
) -> Result<EquilibriumResult, CliError> {
    let v = if gaussian {
        Potential::perturbed(&[])
    } else if !coefficients.is_empty() {
        let cs = coefficients.iter().map(|s| parse_r(s)).collect::<Result<Vec<_>, _>>()?;
        Potential::raw(cs)
    } else {
        let a2 = a2.as_deref().map(parse_r).transpose()?.unwrap_or_else(|| Rat::from_integer(1.into()));
        let a4 = a4.as_deref().map(parse_r).transpose()?.unwrap_or_else(|| Rat::from_integer(0.into()));
        Potential::quartic(a2, a4)
    }
    .map_err(failed)?;
    equilibrium(&v, bits, samples).map_err(failed)
}

fn render_equilibrium(r: &EquilibriumResult, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut v = r.to_json();
            v["density"] = r.density_samples.iter().map(|(x, y)| json!([x.to_sci(20), y.to_sci(20)])).collect();
            render_json(&v)
        }
        Format::Csv => r.density_csv(),
        Format::Text => format!(
            "b = {}\nc = {}\nI_V = {}\nsupport_ok = {}\nboundary = {}\n",
            r.b.to_sci(40),
            r.c.to_sci(40),
            r.i_v.to_sci(40),
            r.support_ok,
            r.boundary
        ),
    }
}

fn cmd_oracle(cap: u32, extended: bool, fmt: Format) -> Result<(String, bool), CliError> {
    let limit = if extended { HARD_ORACLE_CAP } else { DEFAULT_ORACLE_CAP };
    if cap > limit {
        return Err(CliError::Cap(format!("oracle cap exceeded: {cap} > {limit}")));
    }
    let map = connected_coefficients(cap, extended).map_err(|e| CliError::Cap(e.to_string()))?;
    let g0 = genus0(&map);
    let f0 = f0_multivariate(cap).f0;
    let planar_match = f0.terms().iter().all(|(p, c)| g0.get(p) == Some(c)) && g0.iter().all(|(p, c)| f0.coefficient(p) == *c);
    let out = match fmt {
        Format::Json => render_json(&json!({"weight_cap": cap, "coefficients": wick_oracle::to_json(&map), "genus0_equals_F0": planar_match})),
        Format::Csv => {
            let mut s = String::from("genus,monomial,coefficient\n");
            for ((p, g), c) in &map {
                s.push_str(&format!("{g},{p},{c}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for ((p, g), c) in &map {
                s.push_str(&format!("g={g}  {c} · {p}\n"));
            }
            s.push_str(&format!("genus 0 equals F0: {planar_match}\n"));
            s
        }
    };
    Ok((out, planar_match))
}

fn execute(cli: Cli) -> Result<(String, bool), CliError> {
    let fmt = cli.format;
    match cli.command {
        Command::Series { cap, oracle, extended } => cmd_series(cap, oracle, extended, fmt),
        Command::Extreme { kind, t_cap, fn_index } => Ok((cmd_extreme(kind, t_cap, fn_index, fmt)?, true)),
        Command::Asymptotics { kind, m, n } => Ok((cmd_asymptotics(&kind, m, &n, cli.bits, fmt)?, true)),
        Command::Equilibrium { a2, a4, gaussian, coefficients, samples } => {
            let r = cmd_equilibrium(a2, a4, gaussian, coefficients, samples, cli.bits)?;
            Ok((render_equilibrium(&r, fmt), true))
        }
        Command::Oracle { cap, extended } => cmd_oracle(cap, extended, fmt),
        Command::Verify { only } => {
            let report = verify::run(&only, |c| eprintln!("{}", c.line()));
            let ok = report.unexpected_failures().is_empty();
            let out = match fmt {
                Format::Json => render_json(&report.to_json()),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            Ok((out, ok))
        }
    }
}

/// Parse arguments, run, write the artifact; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let output = cli.output.clone();
    match execute(cli) {
        Ok((text, ok)) => {
            let written = match &output {
                Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            if ok {
                0
            } else {
                eprintln!("error: consistency check failed");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<(String, bool), CliError> {
        let mut v = vec!["planarlim"];
        v.extend_from_slice(args);
        execute(Cli::try_parse_from(v).expect("valid arguments"))
    }

    #[test]
    fn series_trivial_cap() {
        let (out, _) = run(&["series", "--cap", "0", "--format", "text"]).unwrap();
        assert_eq!(out, "R:\n  1 · 1\n");
    }

    #[test]
    fn series_table_entry() {
        let (out, ok) = run(&["series", "--cap", "10", "--format", "csv"]).unwrap();
        assert!(ok);
        assert!(out.contains("F0,10,a10,21/5,"));
    }

    #[test]
    fn extreme_examples() {
        let (out, _) = run(&["extreme", "edge-all", "--t-cap", "7", "--format", "text"]).unwrap();
        assert!(out.contains("f_1..f_7: 1, 9/4, 9, 189/4, 1458/5, 8019/4, 104247/7"));
        let (out, _) = run(&["extreme", "edge-even", "--fn", "4", "--format", "text"]).unwrap();
        assert_eq!(out, "7\n");
    }

    #[test]
    fn caps_exit_two() {
        assert_eq!(run(&["oracle", "--cap", "9"]).unwrap_err().exit_code(), 2);
        assert_eq!(run(&["series", "--cap", "99"]).unwrap_err().exit_code(), 2);
        assert_eq!(run(&["extreme", "face-all", "--t-cap", "40"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn equilibrium_flags() {
        let (out, _) = run(&["equilibrium", "--a2", "-3", "--a4", "1", "--format", "json"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["support_ok"], json!(false));
        let (out, _) = run(&["equilibrium", "--gaussian", "--format", "text"]).unwrap();
        assert!(out.contains("I_V = 7.5"), "{out}");
    }

    #[test]
    fn deterministic_output() {
        let a = run(&["series", "--cap", "6"]).unwrap().0;
        let b = run(&["series", "--cap", "6"]).unwrap().0;
        assert_eq!(a, b);
    }
}

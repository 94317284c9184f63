//! Command-line front end for `clk-core`: argument handling, report
//! formats and the parallel corpus runner.

pub mod args;
pub mod cache;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::Path;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::Parser;
use clk_core::cassonlin::{bad_set, chi_b_slice_in, connected_sum_with, sweep, AtomData, InvariantReport, FREENESS_PAIRS};
use clk_core::exactalg::GaussianRational;
use clk_core::knotspec::{alexander_bad_traces, parse_descriptor, KnotDescriptor, TwoBridgeParams};
use clk_core::torusaction::{cstar_action, fingerprint_distance, sample_glued_pair, type_ii_chi};
use clk_core::tracker::{continue_roots, local_system_report, Loop, MonodromyReport};
use clk_core::{Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use args::{Cli, Command, Format, Global};
use report::*;

/// Descriptors run by `clk corpus` without a file.
pub const DEFAULT_CORPUS: [&str; 16] = [
    "3_1", "4_1", "5_1", "5_2", "6_1", "7_1",
    "3_1 # 3_1", "3_1 # 4_1", "3_1 # 5_1", "3_1 # 5_2",
    "4_1 # 4_1", "4_1 # 5_1", "4_1 # 5_2",
    "5_1 # 5_1", "5_1 # 5_2", "5_2 # 5_2",
];

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unparsable input; exit code 2.
    Usage(String),
    /// The computation refused or failed; exit code 1.
    Domain(Error),
    Io(io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) | Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Variant name of a core error, used as the machine-readable reason.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn annotate(text: &str, position: usize, message: &str) -> String {
    let column = text[..position.min(text.len())].chars().count();
    format!("{message}\n  {text}\n  {}^", " ".repeat(column))
}

fn usage_from(text: &str, e: Error) -> Failure {
    match e {
        Error::Parse { position, message } => {
            Failure::Usage(annotate(text, position, &format!("parse error at position {position}: {message}")))
        }
        other => Failure::Domain(other),
    }
}

pub fn descriptor(text: &str) -> Result<KnotDescriptor, Failure> {
    parse_descriptor(text).map_err(|e| usage_from(text, e))
}

fn prime(text: &str, command: &str) -> Result<TwoBridgeParams, Failure> {
    let d = descriptor(text)?;
    if !d.is_prime() {
        return Err(Failure::Usage(format!("`{command}` takes a single two-bridge knot, got the sum \"{d}\"")));
    }
    Ok(d.atoms()[0])
}

/// Complex number "a+bi" with floating-point parts, for loop geometry.
pub fn parse_complex_f64(text: &str) -> Result<Complex64, Failure> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |pos: usize, what: &str| Failure::Usage(annotate(&s, pos, &format!("invalid complex number: {what}")));
    let real = |t: &str, pos: usize| t.parse::<f64>().map_err(|_| bad(pos, "expected a number"));
    if s.is_empty() {
        return Err(bad(0, "empty"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s, 0)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im_pos = body.len() - im_text.len();
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t, im_pos)?,
    };
    let z = Complex64::new(real(re_text, 0)?, im);
    if !z.is_finite() {
        return Err(bad(0, "not finite"));
    }
    Ok(z)
}

fn atoms_of(d: &KnotDescriptor) -> Result<Vec<Arc<AtomData>>, Failure> {
    d.atoms().iter().map(|&p| cache::atom(p).map_err(Failure::from)).collect()
}

fn invariant_report(d: &KnotDescriptor, g: &Global) -> Result<InvariantReport, Error> {
    let atoms: Vec<AtomData> = d
        .atoms()
        .iter()
        .map(|&p| cache::atom(p).map(|a| (*a).clone()))
        .collect::<Result<_, _>>()?;
    connected_sum_with(d, &atoms, g.samples, g.seed, FREENESS_PAIRS)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

const SUMMARY_HEADER: [&str; 4] = ["knot", "chi_cl", "bad_set", "witnesses"];

fn summary_row(r: &InvariantJson) -> Vec<String> {
    let distinct: usize = {
        let mut roots: Vec<[f64; 2]> = Vec::new();
        for z in r.bad_set.iter().flat_map(|c| &c.roots) {
            if !roots.iter().any(|w| (w[0] - z[0]).hypot(w[1] - z[1]) < 1e-8) {
                roots.push(*z);
            }
        }
        roots.len()
    };
    vec![r.knot.clone(), r.chi_cl.to_string(), distinct.to_string(), r.slices.len().to_string()]
}

fn render_invariant(r: &InvariantJson, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => render::csv(&SUMMARY_HEADER, &[summary_row(r)]),
        Format::Text => {
            let mut out = render::table(&SUMMARY_HEADER, &[summary_row(r)]);
            if let Some(d) = &r.decomposition {
                let atoms: Vec<String> = d.atoms.iter().map(i64::to_string).collect();
                out.push_str(&format!("decomposition: atoms [{}], type II {}\n", atoms.join(", "), d.type_ii_chi));
            }
            out
        }
    }
}

fn tau_string(tau: &[serde_json::Value; 4]) -> String {
    let part = |n: &serde_json::Value, d: &serde_json::Value| {
        if d == &serde_json::Value::from(1) { n.to_string() } else { format!("{n}/{d}") }
    };
    let (re, im) = (part(&tau[0], &tau[1]), part(&tau[2], &tau[3]));
    if im == "0" {
        re
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn render_sweep(r: &InvariantJson, format: Format) -> String {
    let header = ["tau", "chi_b", "generic", "points"];
    let rows: Vec<Vec<String>> = r
        .slices
        .iter()
        .map(|s| {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|p| {
                    let y = render::complex(Complex64::new(p.y[0], p.y[1]));
                    format!("{y} [{}{}]", p.mult, if p.excluded { ", abelian" } else { "" })
                })
                .collect();
            vec![tau_string(&s.tau), s.chi_b.to_string(), s.generic.to_string(), pts.join(" ")]
        })
        .collect();
    match format {
        Format::Json => json(r),
        Format::Csv => render::csv(&header, &rows),
        Format::Text => format!("{}: chi_cl = {}\n{}", r.knot, r.chi_cl, render::table(&header, &rows)),
    }
}

fn cmd_sweep(knot: &str, tau: Option<&str>, g: &Global) -> Result<String, Failure> {
    let params = prime(knot, "sweep")?;
    let a = cache::atom(params)?;
    let mut r = sweep(&a.cp, &a.delta, g.samples, g.seed)?;
    r.knot = params.to_string();
    if let Some(text) = tau {
        let t: GaussianRational = text.parse().map_err(|e| usage_from(text, e))?;
        r.witnesses = vec![chi_b_slice_in(&a.cp, &r.bad_set, &t)?];
    }
    Ok(render_sweep(&InvariantJson::new(&r), g.format))
}

fn cmd_bad_set(knot: &str, g: &Global) -> Result<String, Failure> {
    let d = descriptor(knot)?;
    let mut components = Vec::new();
    let mut distinct: Vec<Complex64> = Vec::new();
    for a in atoms_of(&d)? {
        let bad = bad_set(&a.cp, &a.delta)?;
        for z in bad.distinct_roots() {
            if !distinct.iter().any(|w| (w - z).norm() < 1e-8) {
                distinct.push(z);
            }
        }
        components.extend(bad_set_json(&bad));
    }
    let out = BadSetJson { knot: d.to_string(), bad_set: components, distinct_roots: distinct.iter().copied().map(pair).collect() };
    let poly_text = |c: &BadComponentJson| c.poly.iter().map(|v| v.to_string().replace('"', "")).collect::<Vec<_>>().join(" ");
    Ok(match g.format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut rows = Vec::new();
            for c in &out.bad_set {
                for r in &c.roots {
                    rows.push(vec![c.provenance.to_string(), poly_text(c), r[0].to_string(), r[1].to_string()]);
                }
            }
            render::csv(&["provenance", "poly", "re", "im"], &rows)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = out
                .bad_set
                .iter()
                .map(|c| {
                    let roots: Vec<Complex64> = c.roots.iter().map(|r| Complex64::new(r[0], r[1])).collect();
                    vec![c.provenance.to_string(), poly_text(c), render::complex_list(&roots)]
                })
                .collect();
            format!(
                "{}: {} exceptional traces\n{}",
                out.knot,
                distinct.len(),
                render::table(&["provenance", "coefficients (low to high)", "roots"], &rows)
            )
        }
    })
}

fn cmd_charpoly(knot: &str, g: &Global) -> Result<String, Failure> {
    let params = prime(knot, "charpoly")?;
    let a = cache::atom(params)?;
    let poly = a.cp.poly();
    let mut terms = Vec::new();
    for (j, row) in poly.rows().iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                terms.push((i, j, rational(c)));
            }
        }
    }
    let out = CharpolyJson {
        knot: params.to_string(),
        p: params.p,
        q: params.q,
        y_degree: a.cp.generic_y_degree(),
        poly: a.cp.to_string(),
        terms,
    };
    Ok(match g.format {
        Format::Json => json(&out),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                out.terms.iter().map(|(i, j, c)| vec![i.to_string(), j.to_string(), c.to_string().replace('"', "")]).collect();
            render::csv(&["x_exp", "y_exp", "coeff"], &rows)
        }
        Format::Text => format!("{}: P(x, y) = {}\n", out.knot, out.poly),
    })
}

fn cmd_alexander(knot: &str, g: &Global) -> Result<String, Failure> {
    let params = prime(knot, "alexander")?;
    let a = cache::atom(params)?;
    let traces = alexander_bad_traces(&a.delta)?;
    let out = AlexanderJson {
        knot: params.to_string(),
        delta: a.delta.to_string(),
        coeffs: coeffs(a.delta.poly()),
        trace_poly: coeffs(&traces.defining_poly),
        bad_traces: traces.approximations.iter().copied().map(pair).collect(),
    };
    Ok(match g.format {
        Format::Json => json(&out),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                out.bad_traces.iter().map(|r| vec![out.knot.clone(), r[0].to_string(), r[1].to_string()]).collect();
            render::csv(&["knot", "re", "im"], &rows)
        }
        Format::Text => format!(
            "{}: Delta(t) = {}\n  excluded traces: {}\n",
            out.knot,
            out.delta,
            render::complex_list(&traces.approximations)
        ),
    })
}

fn cmd_monodromy(
    knot: &str,
    center: Option<&str>,
    radius: f64,
    steps: usize,
    reverse: bool,
    g: &Global,
) -> Result<String, Failure> {
    let params = prime(knot, "monodromy")?;
    let a = cache::atom(params)?;
    let reports: Vec<MonodromyReport> = match center {
        Some(text) => {
            let c = parse_complex_f64(text)?;
            let mut lp = Loop::new(c, radius, steps).map_err(|e| Failure::Usage(e.to_string()))?;
            if reverse {
                lp = lp.reversed();
            }
            let bad = bad_set(&a.cp, &a.delta)?;
            let roots: Vec<Complex64> = bad.isolated_roots().map(|(z, _)| z).collect();
            lp.check_clear_of(&roots)?;
            vec![continue_roots(&a.cp, &lp)?]
        }
        None => {
            let summary = local_system_report(&a.cp, &a.delta, &[])?;
            summary.automatic.into_iter().map(|r| if reverse { reversed_report(&a, &r) } else { Ok(r) }).collect::<Result<_, _>>()?
        }
    };
    let out = MonodromyJson {
        knot: params.to_string(),
        rank: a.cp.generic_y_degree(),
        loops: reports.iter().map(LoopJson::new).collect(),
    };
    Ok(match g.format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut rows = Vec::new();
            for (k, r) in reports.iter().enumerate() {
                for step in &r.paths {
                    for (i, y) in step.roots.iter().enumerate() {
                        rows.push(vec![k.to_string(), step.theta.to_string(), i.to_string(), y.re.to_string(), y.im.to_string()]);
                    }
                }
            }
            render::csv(&["loop", "theta", "root", "re_y", "im_y"], &rows)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = out
                .loops
                .iter()
                .map(|l| {
                    let images = clk_core::tracker::permutation_images(&l.permutation);
                    let eig: Vec<Complex64> = l.eigenvalues.iter().map(|e| Complex64::new(e[0], e[1])).collect();
                    vec![
                        render::complex(Complex64::new(l.center[0], l.center[1])),
                        format!("{:.4}", l.radius),
                        format!("{images:?}"),
                        render::complex_list(&eig),
                        format!("{:.1e}", l.max_residual),
                    ]
                })
                .collect();
            format!(
                "{}: local system of rank {}\n{}",
                out.knot,
                out.rank,
                render::table(&["center", "radius", "permutation", "eigenvalues", "residual"], &rows)
            )
        }
    })
}

fn reversed_report(a: &AtomData, r: &MonodromyReport) -> Result<MonodromyReport, Error> {
    continue_roots(&a.cp, &r.lp.reversed())
}

fn cmd_verify_cstar(knot: &str, order: usize, pairs: usize, g: &Global) -> Result<String, Failure> {
    let d = descriptor(knot)?;
    let mut atoms = atoms_of(&d)?;
    if atoms.len() == 1 {
        atoms.push(Arc::clone(&atoms[0]));
    }
    let mut chis = Vec::new();
    let mut avoid: Vec<Complex64> = Vec::new();
    for a in &atoms {
        let r = sweep(&a.cp, &a.delta, g.samples, g.seed)?;
        avoid.extend(r.bad_set.distinct_roots());
        chis.push(r.chi_cl);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed ^ 0xc5_7a_12);
    let mut out = CstarJson {
        knot: d.to_string(),
        order,
        pairs,
        certificates: 0,
        min_separation: f64::INFINITY,
        max_action_defect: 0.0,
        type_ii_chi: 0,
    };
    for i in 0..atoms.len() - 1 {
        let (a1, a2) = (&atoms[i], &atoms[i + 1]);
        let report = type_ii_chi([(&a1.cp, chis[i]), (&a2.cp, chis[i + 1])], &avoid, order, pairs, &mut rng)?;
        out.type_ii_chi += report.chi;
        out.certificates += report.certificates.len();
        out.min_separation = out.min_separation.min(report.min_separation());
        for _ in 0..pairs.min(20) {
            let rho = sample_glued_pair(&a1.cp, &a2.cp, &avoid, 0.05, &mut rng)?;
            let mut unit = || Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
            let (lambda, mu) = (unit(), unit());
            let once = cstar_action(lambda * mu, &rho)?;
            let twice = cstar_action(lambda, &cstar_action(mu, &rho)?)?;
            out.max_action_defect = out.max_action_defect.max(fingerprint_distance(&once, &twice));
        }
    }
    Ok(match g.format {
        Format::Json => json(&out),
        Format::Csv => render::csv(
            &["knot", "order", "certificates", "min_separation", "max_action_defect", "type_ii_chi"],
            &[vec![
                out.knot.clone(),
                order.to_string(),
                out.certificates.to_string(),
                out.min_separation.to_string(),
                out.max_action_defect.to_string(),
                out.type_ii_chi.to_string(),
            ]],
        ),
        Format::Text => format!(
            "{}: Z/{} acts freely on {} sampled pairs (min separation {:.3e}); action defect {:.1e}; type II chi {}\n",
            out.knot, order, out.certificates, out.min_separation, out.max_action_defect, out.type_ii_chi
        ),
    })
}

fn corpus_threads() -> Result<usize, Failure> {
    match std::env::var("CLK_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("CLK_THREADS must be a positive integer, got \"{v}\""))),
    }
}

fn read_corpus(path: &Path) -> Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("//"))
        .map(String::from)
        .collect())
}

fn corpus_entry(text: &str, g: &Global) -> CorpusEntry {
    let failed = |kind: String, message: String| CorpusEntry::Failed { knot: text.to_string(), error: ErrorJson { kind, message } };
    match parse_descriptor(text) {
        Err(e) => failed(error_kind(&e), e.to_string()),
        Ok(d) => match invariant_report(&d, g) {
            Ok(r) => CorpusEntry::Ok(InvariantJson::new(&r)),
            Err(e) => failed(error_kind(&e), e.to_string()),
        },
    }
}

fn cmd_corpus(file: Option<&Path>, g: &Global) -> Result<(String, bool), Failure> {
    let lines = match file {
        Some(p) => read_corpus(p)?,
        None => DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(corpus_threads()?)
        .build()
        .map_err(|e| Failure::Io(io::Error::other(e)))?;
    let entries: Vec<CorpusEntry> = pool.install(|| lines.par_iter().map(|l| corpus_entry(l, g)).collect());
    let all_ok = entries.iter().all(|e| matches!(e, CorpusEntry::Ok(_)));
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| match e {
            CorpusEntry::Ok(r) => summary_row(r),
            CorpusEntry::Failed { knot, error } => vec![knot.clone(), format!("error: {}", error.kind), String::new(), String::new()],
        })
        .collect();
    let body = match g.format {
        Format::Json => json(&entries),
        Format::Csv => render::csv(&SUMMARY_HEADER, &rows),
        Format::Text => render::table(&SUMMARY_HEADER, &rows),
    };
    Ok((body, all_ok))
}

fn dispatch(cli: &Cli) -> Result<(String, bool), Failure> {
    let g = &cli.global;
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Invariant { knot } => {
            let d = descriptor(knot)?;
            ok(render_invariant(&InvariantJson::new(&invariant_report(&d, g)?), g.format))
        }
        Command::Sweep { knot, tau } => ok(cmd_sweep(knot, tau.as_deref(), g)?),
        Command::BadSet { knot } => ok(cmd_bad_set(knot, g)?),
        Command::Charpoly { knot } => ok(cmd_charpoly(knot, g)?),
        Command::Alexander { knot } => ok(cmd_alexander(knot, g)?),
        Command::Monodromy { knot, center, radius, steps, reverse } => {
            ok(cmd_monodromy(knot, center.as_deref(), *radius, *steps, *reverse, g)?)
        }
        Command::VerifyCstar { knot, order, pairs } => ok(cmd_verify_cstar(knot, *order, *pairs, g)?),
        Command::Corpus { file } => cmd_corpus(file.as_deref(), g),
    }
}

fn report_failure(f: &Failure, format: Format, stderr: &mut dyn Write) {
    let (kind, message) = match f {
        Failure::Usage(m) => ("Usage".to_string(), m.clone()),
        Failure::Domain(e) => (error_kind(e), e.to_string()),
        Failure::Io(e) => ("Io".to_string(), e.to_string()),
    };
    let _ = if format == Format::Json {
        writeln!(stderr, "{}", serde_json::to_string(&ErrorJson { kind, message }).expect("error serializes"))
    } else {
        writeln!(stderr, "error[{kind}]: {message}")
    };
}

/// Parses `argv`, runs the command and writes the report. Returns the
/// process exit code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|(body, complete)| {
        match &cli.global.out {
            Some(path) => std::fs::write(path, &body).map_err(Failure::Io)?,
            None => stdout.write_all(body.as_bytes()).map_err(Failure::Io)?,
        }
        Ok(complete)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(f) => {
            report_failure(&f, cli.global.format, stderr);
            f.exit_code()
        }
    }
}

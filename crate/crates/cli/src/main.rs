use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use berkred::arith::field::fmt_q;
use berkred::berktree::{Segment, TypeIIPoint};
use berkred::harness::{analyze_reduction, verify_theorem, JPoint, LocusJson, VerifyOptions, DEFAULT_ITERATIONS, ORBIT_CAP};
use berkred::hypres::{hypres_eval, min_locus, ord_res_at, profile_along};
use berkred::par::Strategy;
use berkred::ratmap::{parse_map, HomogeneousPair, DEFAULT_DEGREE_CAP};
use berkred::redtheory::depth_profile;
use berkred::valfield::{LaurentConfig, LaurentScalar, MixedConfig, MixedScalar, ValuedField};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exact reductions, resultant functions and minimum loci of rational maps
/// over non-archimedean fields.
#[derive(Parser)]
#[command(name = "berkred", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Q_p(p^(1/e)); needs --p.
    Padic,
    /// Q(s)((t^(1/e))).
    Laurent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Field {
    #[arg(long, value_enum, default_value = "padic")]
    backend: Backend,
    /// Residue characteristic (padic backend).
    #[arg(long)]
    p: Option<u64>,
    /// Ramification index.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// The map, e.g. "(z^2 + 3)/(3*z)".
    #[arg(long, allow_hyphen_values = true)]
    map: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest degree of an iterate that may be formed.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
}

#[derive(Args)]
struct At {
    /// A point "center@t", the disk of radius p^t (t^t) around center.
    #[arg(long, default_value = "0@0", allow_hyphen_values = true)]
    point: String,
    /// Work with this iterate of the map.
    #[arg(long, default_value_t = 1)]
    iters: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// ordRes at a point.
    EvalOrdres {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        at: At,
    },
    /// hypRes at a point, normalized to vanish at the Gauss point.
    EvalHypres {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        at: At,
    },
    /// Depths of the map at a point.
    Depths {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        at: At,
    },
    /// Classifies the reduction of a quadratic map at its minimum point.
    Classify {
        #[command(flatten)]
        field: Field,
    },
    /// The minimum locus of hypRes.
    Minlocus {
        #[command(flatten)]
        field: Field,
        #[arg(long, default_value_t = 1)]
        iters: usize,
    },
    /// Checks the minimum loci of the iterates of a quadratic map.
    Verify {
        #[command(flatten)]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
        iters: usize,
        /// Record per-iterate timings (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// ordRes and hypRes sampled along a segment.
    Profile {
        #[command(flatten)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 9)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long)]
        sequential: bool,
    },
}

impl Cmd {
    fn field(&self) -> &Field {
        match self {
            Cmd::EvalOrdres { field, .. }
            | Cmd::EvalHypres { field, .. }
            | Cmd::Depths { field, .. }
            | Cmd::Classify { field }
            | Cmd::Minlocus { field, .. }
            | Cmd::Verify { field, .. }
            | Cmd::Profile { field, .. } => field,
        }
    }
}

/// Rendered output and whether the run counts as a success.
struct Out {
    text: String,
    ok: bool,
}

fn render(format: Format, text: String, value: serde_json::Value, csv: Option<String>) -> Result<Out> {
    let text = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => csv.context("csv output is not available for this subcommand")?,
    };
    Ok(Out { text, ok: true })
}

fn strategy(sequential: bool) -> Strategy {
    if sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    }
}

fn iterate<K: ValuedField>(m: &HomogeneousPair<K>, j: usize, cap: usize) -> Result<HomogeneousPair<K>> {
    if j == 1 {
        return Ok(m.clone());
    }
    Ok(m.iterate(j, cap)?)
}

fn execute<K: ValuedField>(cmd: &Cmd, cfg: &K::Config) -> Result<Out> {
    let f = cmd.field();
    let m: HomogeneousPair<K> = parse_map(&f.map, cfg).with_context(|| format!("cannot parse map {:?}", f.map))?;
    let point = |s: &str| TypeIIPoint::<K>::parse(cfg, s).with_context(|| format!("cannot parse point {s:?}"));
    let fmt = |default| f.format.unwrap_or(default);
    match cmd {
        Cmd::EvalOrdres { at, .. } | Cmd::EvalHypres { at, .. } => {
            let (m, x) = (iterate(&m, at.iters, f.degree_cap)?, point(&at.point)?);
            let (key, v) = match cmd {
                Cmd::EvalOrdres { .. } => ("ord_res", ord_res_at(&m, &x)?),
                _ => ("hyp_res", hypres_eval(&m, &x)?),
            };
            let v = fmt_q(&v);
            render(fmt(Format::Text), format!("{v}\n"), json!({ "point": JPoint::of(&x), key: v }), Some(format!("point,{key}\n{x},{v}\n")))
        }
        Cmd::Depths { at, .. } => {
            let (m, x) = (iterate(&m, at.iters, f.degree_cap)?, point(&at.point)?);
            let prof = depth_profile(&m, &x)?;
            let entries = prof.to_entries();
            let mut text: String = entries.iter().map(|e| format!("{} {}\n", e.direction, e.depth)).collect();
            text += &format!("point_mass {}\n", prof.point_mass);
            let csv = std::iter::once("direction,depth\n".to_string()).chain(entries.iter().map(|e| format!("{},{}\n", e.direction, e.depth))).collect();
            render(fmt(Format::Text), text, json!({ "point": JPoint::of(&x), "depths": entries, "point_mass": prof.point_mass }), Some(csv))
        }
        Cmd::Classify { .. } => {
            let an = analyze_reduction(&m, ORBIT_CAP)?;
            let mut text = format!("{}\n", an.classification);
            if let Some(d) = &an.diagnostic {
                text += &format!("note: {d}\n");
            }
            let value = json!({
                "classification": an.classification,
                "period": an.classification.period(),
                "xi_phi": JPoint::of(&an.xi_phi.point),
                "v1": an.v1.as_ref().map(|v| v.to_string()),
                "diagnostic": an.diagnostic,
            });
            render(fmt(Format::Text), text, value, None)
        }
        Cmd::Minlocus { iters, .. } => {
            let found = min_locus(&iterate(&m, *iters, f.degree_cap)?)?;
            let value = json!({ "locus": LocusJson::of(&found.locus), "ramification": found.ramification, "steps": found.steps });
            render(fmt(Format::Text), format!("{}\n", found.locus), value, None)
        }
        Cmd::Verify { iters, timing, sequential, .. } => {
            if *iters > DEFAULT_ITERATIONS {
                eprintln!("warning: {iters} iterations beyond the default {DEFAULT_ITERATIONS}; runtime grows quickly with the degree 2^{iters}");
            }
            let opts =
                VerifyOptions { iterations: *iters, degree_cap: f.degree_cap, timing: *timing, strategy: strategy(*sequential), ..VerifyOptions::default() };
            let report = verify_theorem(&m, &opts)?;
            let locus = |l: &LocusJson| match l {
                LocusJson::Point(p) => format!("{}@{}", p.center, p.t),
                LocusJson::Segment { start, end } => format!("[{}@{}, {}@{}]", start.center, start.t, end.center, end.t),
            };
            let mut text = format!("classification: {}\n", report.classification);
            let mut csv = String::from("j,locus,expected,semistability\n");
            for r in &report.per_j {
                let expected = r.expected.as_ref().map_or("-".into(), |p| format!("{}@{}", p.center, p.t));
                text += &format!("j = {}: {} (expected {expected}, {:?})\n", r.j, locus(&r.locus), r.semistability);
                csv += &format!("{},{},{expected},{:?}\n", r.j, locus(&r.locus), r.semistability);
            }
            for fail in &report.failures {
                text += &format!("FAIL {fail}\n");
            }
            text += if report.passed() { "PASS\n" } else { "FAIL\n" };
            let mut out = render(fmt(Format::Json), text, serde_json::to_value(&report)?, Some(csv))?;
            out.ok = report.passed();
            Ok(out)
        }
        Cmd::Profile { from, to, samples, iters, sequential, .. } => {
            let seg = Segment::new(point(from)?, point(to)?);
            let rows = profile_along(&iterate(&m, *iters, f.degree_cap)?, &seg, *samples, strategy(*sequential))?;
            let mut csv = String::from("t,ord_res,hyp_res\n");
            let mut text = String::new();
            for r in &rows {
                csv += &format!("{},{},{}\n", r.t, r.ord_res, r.hyp_res);
                text += &format!("t = {:>6}  ordRes = {:>6}  hypRes = {:>6}\n", r.t, r.ord_res, r.hyp_res);
            }
            render(fmt(Format::Csv), text, serde_json::to_value(&rows)?, Some(csv))
        }
    }
}

fn run(cli: &Cli) -> Result<Out> {
    let f = cli.cmd.field();
    match f.backend {
        Backend::Padic => {
            let Some(p) = f.p else { bail!("--p is required for the padic backend") };
            execute::<MixedScalar>(&cli.cmd, &MixedConfig::new(p, f.e)?)
        }
        Backend::Laurent => {
            if f.p.is_some() {
                bail!("--p does not apply to the laurent backend");
            }
            execute::<LaurentScalar>(&cli.cmd, &LaurentConfig::new(f.e)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

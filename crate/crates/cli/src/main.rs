use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use extalg::algebra::Algebra;
use extalg::ext::{self, ExtClass, ExtContext};
use extalg::io::{AlgebraFile, AlgebraSummary, Check, ExtDim, GeneratorReport, HilbertReport, PresentationReport, Reference, Report, ResolutionReport, Status};
use extalg::m11;
use extalg::resolution::{detect_periodicity, minimal_resolution, verify_resolution};
use extalg::rewrite::RewriteSystem;

#[derive(Parser)]
#[command(name = "extalg", version, about = "Minimal resolutions and Ext algebras of bounded quiver algebras over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Algebra file, or `builtin:m11`.
    #[arg(long)]
    algebra: String,
    /// Degree bound for completing relations that are not yet a Gröbner basis.
    #[arg(long, default_value_t = 12)]
    complete_bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal projective resolution of a simple module.
    Resolve {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        simple: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of Ext^n(S, T).
    Ext {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generators and relations of the Ext algebra.
    Present {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        max_degree: usize,
        /// Generator names from least to most significant, as `g1 < g2 < ...`.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of Ext^n(S, -).
    Hilbert {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        source: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks whether the relations are a Gröbner basis, optionally completing them.
    Groebner {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        complete: bool,
        #[arg(long, default_value_t = 12)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the full M11 verification.
    VerifyM11 {
        #[arg(long, default_value_t = 12)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_system(source: &str) -> Result<RewriteSystem> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return match name {
            "m11" => Ok(m11::system()?),
            other => bail!("unknown builtin algebra `{other}`"),
        };
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let file = AlgebraFile::parse(&text).with_context(|| format!("parsing {source}"))?;
    Ok(file.system()?)
}

fn load_algebra(args: &AlgebraArgs) -> Result<Algebra> {
    let mut sys = load_system(&args.algebra)?;
    if !sys.is_groebner(None)? {
        sys = sys.complete(args.complete_bound)?;
        if !sys.is_groebner(None)? {
            bail!("relations are not a Gröbner basis after completion to degree {}", args.complete_bound);
        }
    }
    Ok(Algebra::new(sys)?)
}

fn vertex(alg: &Algebra, label: &str) -> Result<usize> {
    alg.quiver().vertex(label).map_err(|e| anyhow!(e))
}

fn write_report(report: &Report, out: &Option<PathBuf>) -> Result<()> {
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn exit_for(report: &Report) -> ExitCode {
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Resolve { algebra, simple, degree, out } => {
            let alg = load_algebra(&algebra)?;
            let s = vertex(&alg, &simple)?;
            let res = minimal_resolution(&alg, s, degree)?;
            let q = alg.quiver();
            for n in 0..=degree.min(res.top()) {
                let t = res.term(n)?;
                let labels: Vec<&str> = t.summands().iter().map(|&v| q.vertex_label(v)).collect();
                println!("{n}: P_{{{}}}", labels.join(""));
            }
            if res.is_finite() {
                println!("projective dimension {}", res.top());
            }
            let mut report = Report { algebra: Some(AlgebraSummary::of(&alg)), ..Report::default() };
            let period = if res.is_finite() || degree < 3 { None } else { detect_periodicity(&res, (degree - 1) / 2)? };
            if let Some(p) = period {
                println!("period {p}");
            }
            let bad: Vec<String> = verify_resolution(&alg, &res).iter().filter(|c| !c.ok()).map(|c| c.degree.to_string()).collect();
            report.checks.push(Check::boolean("resolution is a minimal complex and exact", Reference::Independent, bad.is_empty(), bad.join(",")));
            report.resolutions.push(ResolutionReport::of(&alg, &res, period));
            write_report(&report, &out)?;
            Ok(exit_for(&report))
        }
        Command::Ext { algebra, from, to, degree, out } => {
            let alg = load_algebra(&algebra)?;
            let (s, t) = (vertex(&alg, &from)?, vertex(&alg, &to)?);
            let res = minimal_resolution(&alg, s, degree)?;
            let dim = res.ext_dim(t, degree)?;
            println!("{dim}");
            let report =
                Report { algebra: Some(AlgebraSummary::of(&alg)), ext_dims: vec![ExtDim { source: from, target: to, degree, dim }], ..Report::default() };
            write_report(&report, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Present { algebra, max_degree, order, out } => {
            let alg = load_algebra(&algebra)?;
            let q = alg.quiver();
            let ctx = ExtContext::minimal(&alg, max_degree)?;
            let gens = ext::minimal_generators(&ctx, max_degree)?;
            let names = generator_names(&algebra.algebra, &alg, &gens);
            let ascending: Vec<String> = match order {
                Some(o) => o.split('<').map(|s| s.trim().to_string()).collect(),
                None => names.clone(),
            };
            let asc: Vec<&str> = ascending.iter().map(String::as_str).collect();
            let pres = ext::find_relations(&ctx, &names, &gens, &asc, max_degree)?;
            println!("generators:");
            let mut gen_reports = Vec::new();
            for (n, g) in names.iter().zip(&gens) {
                let (s, t) = (q.vertex_label(g.source), q.vertex_label(g.target));
                println!("  {n} in Ext^{}({s},{t})", g.degree);
                gen_reports.push(GeneratorReport { name: n.clone(), source: s.into(), target: t.into(), degree: g.degree });
            }
            println!("relations:");
            for r in pres.format_relations() {
                println!("  {r}");
            }
            let report = Report {
                algebra: Some(AlgebraSummary::of(&alg)),
                presentation: Some(PresentationReport { generators: gen_reports, order: ascending, relations: pres.format_relations() }),
                ..Report::default()
            };
            write_report(&report, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert { algebra, source, degree, out } => {
            let alg = load_algebra(&algebra)?;
            let s = vertex(&alg, &source)?;
            let res = minimal_resolution(&alg, s, degree)?;
            let counts: Vec<i64> = ext::hilbert_from_resolution(&res, degree)?.into_iter().map(|c| c as i64).collect();
            println!("{}", counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
            let report = Report {
                algebra: Some(AlgebraSummary::of(&alg)),
                hilbert: vec![HilbertReport { group: source, method: "resolution".into(), coefficients: counts, closed_form: None }],
                ..Report::default()
            };
            write_report(&report, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Groebner { algebra, complete, bound, out } => {
            let sys = load_system(&algebra.algebra)?;
            let q = sys.quiver();
            let failing = sys.failing_overlaps(None)?;
            let mut report = Report::default();
            let words: Vec<String> = failing.iter().map(|o| q.format_word(&o.word)).collect();
            println!("{} rules, {} overlaps, {} failing", sys.rules().len(), sys.overlaps().len(), failing.len());
            for w in &words {
                println!("  fails at {w}");
            }
            report.checks.push(Check::boolean("relations form a Gröbner basis", Reference::Independent, failing.is_empty(), words.join(", ")));
            if complete {
                let done = sys.complete(bound)?;
                println!("completed to degree {bound}:");
                let text = AlgebraFile::from_system(&done).to_text();
                print!("{text}");
                let ok = done.is_groebner(None)?;
                report.checks.push(
                    Check::boolean("completion is a Gröbner basis", Reference::Independent, ok, "").with_details(format!("{} rules", done.rules().len())),
                );
                report.checks[0].status = Status::Skipped;
            }
            write_report(&report, &out)?;
            Ok(exit_for(&report))
        }
        Command::VerifyM11 { bound, out } => {
            let start = std::time::Instant::now();
            let report = m11::verify_m11(bound);
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Flag => "FLAG",
                    Status::Skipped => "SKIP",
                };
                println!("{tag:4}  {}", c.name);
                if c.status != Status::Pass {
                    if !c.expected.is_empty() || !c.computed.is_empty() {
                        println!("      expected: {}\n      computed: {}", c.expected, c.computed);
                    }
                    if !c.details.is_empty() {
                        println!("      {}", c.details);
                    }
                }
            }
            println!(
                "{} passed, {} failed, {} flagged, {} skipped",
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Flag),
                report.count(Status::Skipped)
            );
            eprintln!("finished in {:.2?}", start.elapsed());
            write_report(&report, &out)?;
            Ok(exit_for(&report))
        }
    }
}

/// The standard names for the builtin algebra; `g1, g2, ...` otherwise.
fn generator_names(source: &str, alg: &Algebra, gens: &[ExtClass]) -> Vec<String> {
    let q = alg.quiver();
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let known = (source == "builtin:m11")
                .then(|| {
                    m11::EXT_GENERATORS.iter().find(|(_, s, t, d)| q.vertex(s).ok() == Some(g.source) && q.vertex(t).ok() == Some(g.target) && *d == g.degree)
                })
                .flatten();
            known.map_or_else(|| format!("g{}", i + 1), |k| k.0.to_string())
        })
        .collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

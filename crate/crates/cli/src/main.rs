//! `kleitman`: surveys, constructions and exhaustive checks for maximal
//! intersecting families.
//!
//! Exit status: 0 when everything checked passes, 1 when an invariant fails,
//! 2 on usage or input errors.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use kleitman_core::io::{
    decomposition_to_json, family_to_json, flow_to_json, parse_family, FamilyDoc,
};
use kleitman_core::pathsum::pathsum_bruteforce_with;
use kleitman_core::suite::{run_suite, Suite};
use kleitman_core::survey::{survey, SurveyOptions};
use kleitman_core::{
    build_decomposition, central_families, chvatal_check, enumerate_downsets, is_empty_minimal,
    lift_swap, near_central, pathsum_formula, verify_decomposition, Canonicalizer, Error, Exec,
    Family, GroundSet,
};

#[derive(Parser)]
#[command(
    name = "kleitman",
    version,
    about = "Path-sum decompositions of maximal intersecting families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every maximal intersecting family of P([n]).
    #[command(long_about = report::SURVEY_HELP)]
    Survey {
        #[arg(short)]
        n: usize,
        /// One record per class up to relabelling of [n].
        #[arg(long)]
        canonical: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Add per-record wall time in microseconds (output no longer reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an exhaustive invariant suite at n.
    Verify {
        #[arg(short)]
        n: usize,
        /// formula | conservation | equivalence | decomposition | chvatal
        #[arg(long)]
        suite: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Build and verify the star decomposition of an empty-minimal family.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build central, near-central or lift-and-swap families.
    Construct(ConstructArgs),
    /// Dot products of a maximal intersecting family against a downset.
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        downset: PathBuf,
    },
    /// Stream maximal intersecting families (or downsets) as JSON Lines.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        downsets: bool,
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the path sum of a family as JSON.
    Flow {
        #[arg(short, long)]
        input: PathBuf,
        /// Path sum of the dual family instead.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Central,
    #[value(name = "near_central", alias = "near-central")]
    NearCentral,
    #[value(name = "lift_swap", alias = "lift-swap")]
    LiftSwap,
}

#[derive(clap::Args)]
struct ConstructArgs {
    /// JSON request {"kind": ..., ...}; "-" reads stdin.
    #[arg(long, conflicts_with = "kind")]
    request: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "request")]
    kind: Option<Kind>,
    /// Ground set size (central).
    #[arg(short)]
    n: Option<usize>,
    /// Base family file (near_central, lift_swap).
    #[arg(long)]
    family: Option<PathBuf>,
    /// Middle-layer swap family file (near_central).
    #[arg(long)]
    swap: Option<PathBuf>,
    /// Minimal member to swap, as comma-separated labels (lift_swap).
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructRequest {
    kind: Kind,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    family: Option<FamilyDoc>,
    #[serde(default)]
    swap: Option<FamilyDoc>,
    #[serde(default)]
    set: Option<Vec<usize>>,
}

/// Pass/fail of the checks a command ran.
enum Outcome {
    Pass,
    Fail,
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        return Ok(buf);
    }
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn read_family(path: &Path) -> anyhow::Result<Family> {
    parse_family(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn open_output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

/// Runs `body` on a pool of `jobs` workers; a single job runs sequentially.
fn with_jobs<T: Send>(
    jobs: Option<usize>,
    body: impl FnOnce(Exec) -> T + Send,
) -> anyhow::Result<T> {
    match jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Ok(body(Exec::Sequential)),
        #[cfg(feature = "parallel")]
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            Ok(pool.install(|| body(Exec::Parallel)))
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(body(Exec::Sequential)),
        None => Ok(body(Exec::default())),
    }
}

fn construct(args: ConstructArgs) -> anyhow::Result<Vec<Family>> {
    let req = match &args.request {
        Some(path) => serde_json::from_slice::<ConstructRequest>(&read_input(path)?)
            .context("parsing construct request")?,
        None => ConstructRequest {
            kind: args.kind.expect("clap enforces --kind"),
            n: args.n,
            family: args
                .family
                .as_deref()
                .map(read_family)
                .transpose()?
                .as_ref()
                .map(FamilyDoc::from_family),
            swap: args
                .swap
                .as_deref()
                .map(read_family)
                .transpose()?
                .as_ref()
                .map(FamilyDoc::from_family),
            set: args.set,
        },
    };
    let family = || -> anyhow::Result<Family> {
        Ok(req
            .family
            .as_ref()
            .context("missing base family")?
            .to_family()?)
    };
    Ok(match req.kind {
        Kind::Central => central_families(req.n.context("central needs -n")?)?,
        Kind::NearCentral => {
            let swap = req
                .swap
                .as_ref()
                .context("near_central needs a swap family")?
                .to_family()?;
            vec![near_central(&family()?, &swap)?]
        }
        Kind::LiftSwap => {
            let f = family()?;
            let set = f
                .ground()
                .set(req.set.as_deref().context("lift_swap needs a set")?)?;
            vec![lift_swap(&f, set)?]
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Survey {
            n,
            canonical,
            jobs,
            format,
            timing,
            output,
        } => {
            let result = with_jobs(jobs, |exec| {
                survey(n, SurveyOptions { canonical, timing }, exec)
            })??;
            let mut out = open_output(output.as_deref())?;
            match format {
                Format::Json => report::write_survey_jsonl(&mut out, &result)?,
                Format::Csv => {
                    report::write_survey_csv(&mut out, &result)?;
                    eprintln!("{}", serde_json::to_string(&result.summary)?);
                }
            }
            out.flush()?;
            Ok(Outcome::Pass)
        }
        Command::Verify { n, suite, jobs } => {
            let suite: Suite = suite.parse().map_err(anyhow::Error::msg)?;
            let r = with_jobs(jobs, |exec| run_suite(suite, n, exec))??;
            match &r.failure {
                None => println!(
                    "{suite} n={n}: pass ({} checked, {} skipped)",
                    r.checked, r.skipped
                ),
                Some(why) => println!("{suite} n={n}: FAIL: {why}"),
            }
            Ok(if r.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Decompose { input, output } => {
            let f = read_family(&input)?;
            if !f.is_maximal_intersecting() {
                bail!(Error::NotMaximalIntersecting);
            }
            let d = match build_decomposition(&f) {
                Ok(d) => d,
                Err(Error::NotEmptyMinimal(w)) => {
                    eprintln!("not empty-minimal: {w}");
                    return Ok(Outcome::Fail);
                }
                Err(e) => return Err(e.into()),
            };
            if let Err(v) = verify_decomposition(&f, &d) {
                eprintln!("decomposition failed verification: {v}");
                return Ok(Outcome::Fail);
            }
            let mut out = open_output(output.as_deref())?;
            writeln!(out, "{}", decomposition_to_json(&d))?;
            out.flush()?;
            Ok(Outcome::Pass)
        }
        Command::Construct(args) => {
            let families = construct(args)?;
            let mut out = open_output(None)?;
            for f in &families {
                writeln!(out, "{}", family_to_json(f))?;
            }
            out.flush()?;
            Ok(Outcome::Pass)
        }
        Command::Check { family, downset } => {
            let r = chvatal_check(&read_family(&family)?, &read_family(&downset)?)?;
            println!("{}", serde_json::to_string(&r)?);
            Ok(if r.identity_ok && r.bound_ok {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Enumerate {
            n,
            downsets,
            canonical,
            jobs,
            output,
        } => {
            let mut families = if downsets {
                enumerate_downsets(n)?
            } else {
                with_jobs(jobs, |exec| {
                    kleitman_core::enumerate::enumerate_maximal_intersecting_with(n, exec)
                })??
            };
            if canonical {
                let canon = Canonicalizer::new(GroundSet::new(n)?)?;
                families = families.iter().map(|f| canon.canonicalize(f)).collect();
                families.sort();
                families.dedup();
            }
            let mut out = open_output(output.as_deref())?;
            for f in &families {
                writeln!(out, "{}", family_to_json(f))?;
            }
            out.flush()?;
            Ok(Outcome::Pass)
        }
        Command::Flow {
            input,
            dual,
            method,
        } => {
            let mut f = read_family(&input)?;
            if dual {
                f = f.dual();
            }
            let flow = match method {
                Method::Formula => pathsum_formula(&f),
                Method::Bruteforce => pathsum_bruteforce_with(&f, Exec::default())?,
            };
            println!("{}", flow_to_json(&flow));
            if f.dual().is_maximal_intersecting() && dual {
                let m = is_empty_minimal(&f.dual())?;
                eprintln!("empty-minimal: {}", m.is_minimal());
            }
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

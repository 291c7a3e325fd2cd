use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cartankit::classifier::{
    check_bestnosquare, check_maxnolinear, recognize_family, tessellation_verdict, ConditionReport,
    VerdictOptions,
};
use cartankit::families::{
    hb_subalgebra, hc_subalgebra, is_compatible, lie_closure_defect, sp1m_an, su1n_an, BMap,
};
use cartankit::growth::{cds_search, geometric_grid, sample_curve, CurveSpec, GrowthBands};
use cartankit::io::{bmap_from_json, group_from_json, read_to_string, spec_from_json, spec_to_json};
use cartankit::selftest;
use cartankit::sunf::{cartan_mu, wall_distance};
use cartankit::{Error, FieldTag, GroupContext, Result, SubalgebraSpec, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "cartankit", version, about = "Cartan projections and tessellation criteria for SU(2,n;F)")]
struct Cli {
    /// Absolute tolerance for membership and shape checks (env CARTANKIT_TOL).
    #[arg(long, global = true, env = "CARTANKIT_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Hb,
    Hc,
    Su1n,
    Sp1m,
}

#[derive(Args, Clone, Copy)]
struct BandArgs {
    /// Half-width of the band around exponent 1.
    #[arg(long, default_value_t = 0.1)]
    linear_band: f64,
    /// Half-width of the band around exponent 2.
    #[arg(long, default_value_t = 0.1)]
    quadratic_band: f64,
}

impl BandArgs {
    fn bands(self) -> GrowthBands {
        GrowthBands { linear: self.linear_band, quadratic: self.quadratic_band }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and write its spec as JSON.
    Make {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value = "R")]
        field: FieldTag,
        #[arg(long)]
        n: usize,
        /// B map for hb: a JSON file, or one of the keywords `rot90`, `b0`.
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closure, compatibility and family recognition for a spec.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Condition reports and tessellation verdict.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        bands: BandArgs,
    },
    /// Cartan projection of a group element.
    Mu {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// CSV of t, log_norm, log_rho, log_a11, log_a22 along exp(t u).
    Curve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        gen_index: usize,
        #[arg(long, default_value_t = 1.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1024.0)]
        t_max: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for linear and quadratic growth curves.
    Cds {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bands: BandArgs,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single check by number.
        #[arg(long)]
        only: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                so.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn load_spec(p: &Path) -> Result<SubalgebraSpec> {
    spec_from_json(&read_to_string(p)?)
}

fn load_b(arg: &str, ctx: GroupContext) -> Result<BMap> {
    match arg {
        "rot90" => BMap::rotation90(ctx),
        "b0" => BMap::b0(ctx),
        path => {
            let b = bmap_from_json(&read_to_string(Path::new(path))?)?;
            if b.ctx != ctx {
                return Err(Error::Precondition(format!(
                    "B is for field {} n = {}, but the request is for field {} n = {}",
                    b.ctx.field, b.ctx.n, ctx.field, ctx.n
                )));
            }
            Ok(b)
        }
    }
}

#[derive(Serialize)]
struct CheckOutput {
    dim: usize,
    closure_defect: f64,
    closed: bool,
    compatibility: cartankit::families::CompatibilityReport,
    family: Option<cartankit::classifier::Family>,
}

#[derive(Serialize)]
struct ClassifyOutput {
    maxnolinear: Option<ConditionReport>,
    bestnosquare: Option<ConditionReport>,
    verdict: cartankit::classifier::VerdictReport,
}

fn run(cli: Cli) -> Result<bool> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    match cli.cmd {
        Command::Make { family, field, n, b, c, m, out } => {
            let ctx = GroupContext::new(field, n)?;
            let spec = match family {
                FamilyArg::Hb => {
                    let b = b.ok_or_else(|| Error::Precondition("hb needs --b".into()))?;
                    hb_subalgebra(&load_b(&b, ctx)?)?
                }
                FamilyArg::Hc => hc_subalgebra(ctx, c.ok_or_else(|| Error::Precondition("hc needs --c".into()))?),
                FamilyArg::Su1n => su1n_an(ctx),
                FamilyArg::Sp1m => sp1m_an(ctx, m.ok_or_else(|| Error::Precondition("sp1m needs --m".into()))?)?,
            };
            emit(&spec_to_json(&spec), out.as_deref())?;
            if out.is_some() {
                eprintln!("wrote spec of dimension {}", spec.dim());
            }
        }
        Command::Check { input, json } => {
            let s = load_spec(&input)?;
            let defect = lie_closure_defect(&s)?;
            let out = CheckOutput {
                dim: s.dim(),
                closure_defect: defect,
                closed: defect <= 1e-8,
                compatibility: is_compatible(&s),
                family: recognize_family(&s),
            };
            if json {
                emit(&to_json(&out), None)?;
            } else {
                let c = &out.compatibility;
                let fam = out.family.as_ref().map_or("none".to_string(), |f| f.to_string());
                let mut text = format!(
                    "dim {}\nclosure defect {:.3e} ({})\ncompatible {} (T = {}, semidirect {})\nfamily {fam}\n",
                    out.dim,
                    defect,
                    if out.closed { "closed" } else { "not closed" },
                    c.compatible,
                    c.torus_kind,
                    c.semidirect
                );
                for v in &c.violations {
                    text.push_str(&format!("  violation: {v}\n"));
                }
                emit(&text, None)?;
            }
        }
        Command::Classify { input, json, budget, seed, bands } => {
            let s = load_spec(&input)?;
            let compatible = is_compatible(&s).compatible;
            let out = ClassifyOutput {
                maxnolinear: compatible.then(|| check_maxnolinear(&s)).transpose()?,
                bestnosquare: compatible.then(|| check_bestnosquare(&s)).transpose()?,
                verdict: tessellation_verdict(&s, VerdictOptions { budget, seed, bands: bands.bands() }),
            };
            if json {
                emit(&to_json(&out), None)?;
            } else {
                let mut text = String::new();
                match (&out.maxnolinear, &out.bestnosquare) {
                    (Some(a), Some(b)) => text.push_str(&format!("{a}{b}")),
                    _ => text.push_str("spec is not compatible with A; condition reports skipped\n"),
                }
                for note in &out.verdict.notes {
                    text.push_str(&format!("note: {note}\n"));
                }
                text.push_str(&format!("verdict: {}\n", out.verdict.verdict));
                emit(&text, None)?;
            }
        }
        Command::Mu { input } => {
            let g = group_from_json(&read_to_string(&input)?, tol)?;
            let p = cartan_mu(&g, tol)?;
            let (l1, l2) = p.log();
            emit(
                &format!(
                    "{} {}\nlog {l1} {l2}\nwall distances {} {}",
                    p.a11,
                    p.a22,
                    wall_distance(&p, 1)?,
                    wall_distance(&p, 2)?
                ),
                None,
            )?;
        }
        Command::Curve { input, gen_index, t_min, t_max, points, out } => {
            let s = load_spec(&input)?;
            let gen = s.basis.get(gen_index).cloned().ok_or_else(|| {
                Error::Precondition(format!("generator index {gen_index} out of range (dim {})", s.dim()))
            })?;
            if !(t_min > 0.0 && t_max > t_min && points >= 2) {
                return Err(Error::Precondition("need 0 < t-min < t-max and at least 2 points".into()));
            }
            let data = sample_curve(&CurveSpec::with_grid(gen, geometric_grid(t_min, t_max, points))?);
            let mut csv = String::from("t,log_norm,log_rho,log_a11,log_a22\n");
            for r in &data.samples {
                csv.push_str(&format!("{},{},{},{},{}\n", r.t, r.log_norm, r.log_rho, r.log_a11, r.log_a22));
            }
            emit(&csv, out.as_deref())?;
        }
        Command::Cds { input, budget, seed, json, bands } => {
            let s = load_spec(&input)?;
            let r = cds_search(&s, budget, seed, bands.bands());
            if json {
                emit(&to_json(&r), None)?;
            } else {
                emit(
                    &format!(
                        "tried {} (linear {}, quadratic {}, other {})\nverdict {:?}",
                        r.tried, r.linear, r.quadratic, r.other, r.verdict
                    ),
                    None,
                )?;
            }
        }
        Command::Selftest { seed, only, json } => {
            let report = match only {
                Some(id) => {
                    let r = selftest::run_one(id, seed)
                        .ok_or_else(|| Error::Precondition(format!("no check numbered {id}")))?;
                    selftest::SelftestReport { seed, total_seconds: r.seconds, criteria: vec![r] }
                }
                None => selftest::run_all(seed),
            };
            if json {
                emit(&to_json(&report), None)?;
            } else {
                let mut text = String::new();
                for c in &report.criteria {
                    text.push_str(&selftest::format_line(c));
                    text.push('\n');
                }
                let failed = report.criteria.iter().filter(|c| !c.passed).count();
                text.push_str(&format!("{} passed, {failed} failed, {:.1} s\n", report.criteria.len() - failed, report.total_seconds));
                emit(&text, None)?;
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

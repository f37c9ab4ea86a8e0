//! `axkatz`: divisibility bounds for zero counts of low-degree maps between
//! finite abelian groups, with brute-force verification.

mod parse;
mod scan;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use axkatz::bounds::{self, Budget, TargetSpec};
use axkatz::calculus::{functional_degree, series_coefficients, zero_count};
use axkatz::groups::{delta_p, PGroupShape};
use axkatz::oracle::{self, PolySystem, VerifyMode};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "axkatz", version, about = "Divisibility bounds for zero counts of low-degree maps")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PGroupArgs {
    /// The prime p.
    #[arg(long = "p")]
    p: u64,
    /// Exponents α_1,...,α_N of the domain ⊕ Z/p^{α_i}.
    #[arg(long)]
    alpha: String,
}

#[derive(Args)]
struct TargetArgs {
    /// Cyclic targets Z/p^β with degree caps, as β:d[,β:d...].
    #[arg(long)]
    targets: Option<String>,
    /// A target group with its degree cap, as m1,m2,...:d. Repeatable.
    #[arg(long = "target-shape")]
    target_shape: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// The lower bound on ord_p #Z with all intermediate quantities.
    Bound {
        #[command(flatten)]
        group: PGroupArgs,
        #[command(flatten)]
        targets: TargetArgs,
    },
    /// Per-prime bounds for an arbitrary finite abelian domain.
    Multibound {
        /// Domain factors m1,m2,...
        #[arg(long)]
        domain: String,
        /// Codomain with degree cap, as m1,m2,...:d. Repeatable.
        #[arg(long = "target-shape", required = true)]
        target_shape: Vec<String>,
    },
    /// V_p(ᾱ, D) with its witness.
    Vp {
        #[command(flatten)]
        group: PGroupArgs,
        /// Degree budget, a number or "inf".
        #[arg(long = "D")]
        d: Budget,
    },
    /// ν_p(ᾱ, n̄).
    Nu {
        #[command(flatten)]
        group: PGroupArgs,
        /// The multi-index n_1,...,n_N.
        #[arg(long)]
        n: String,
    },
    /// δ_p(ᾱ, β), the largest finite degree of a map into a group of exponent p^β.
    Delta {
        #[command(flatten)]
        group: PGroupArgs,
        /// Exponent β of the codomain Z/p^β
        #[arg(long)]
        beta: u32,
    },
    /// Functional degree of a map given as a JSON file.
    Fdeg {
        /// Map file with domain, codomain and values
        #[arg(long)]
        map: String,
    },
    /// Binomial series coefficients of a map between p-groups.
    Series {
        /// Map file with domain, codomain and values
        #[arg(long)]
        map: String,
    },
    /// Conjugate of a partition.
    Conjugate {
        /// Comma-separated parts
        #[arg(long)]
        parts: String,
    },
    /// Common zeros of maps given as JSON files.
    Zeros {
        /// Comma-separated map files.
        #[arg(long)]
        maps: String,
    },
    /// Checks the bound against every (or sampled) qualifying system.
    Verify {
        #[command(flatten)]
        group: PGroupArgs,
        #[command(flatten)]
        targets: TargetArgs,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        /// Seed for sampled mode.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled systems.
        #[arg(long, default_value_t = oracle::DEFAULT_SAMPLES)]
        samples: u64,
        /// Cap on tables and systems in exhaustive mode.
        #[arg(long, env = "AXKATZ_CAP", default_value_t = oracle::DEFAULT_TABLE_CAP)]
        cap: u64,
    },
    /// Both sides of the counting argument for a system of maps into cyclic p-groups.
    Trace {
        /// Comma-separated map files.
        #[arg(long)]
        maps: String,
        /// Fixed β; must exceed ord_p #Z.
        #[arg(long, conflicts_with = "start")]
        beta: Option<u32>,
        /// First β of the escalation when --beta is absent.
        #[arg(long, default_value_t = 1)]
        start: u32,
    },
    /// Bounds over a grid of primes, partitions and targets.
    Scan {
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3")]
        primes: String,
        /// Largest total α = α_1 + ... + α_N.
        #[arg(long, default_value_t = 4)]
        max_alpha: u32,
        /// Largest number of parts N.
        #[arg(long, default_value_t = 8)]
        max_parts: usize,
        /// Target list β:d[,β:d...]. Repeatable; defaults to single targets up to --max-beta and --max-d.
        #[arg(long)]
        targets: Vec<String>,
        /// Largest β of the default single targets
        #[arg(long, default_value_t = 2)]
        max_beta: u32,
        /// Largest d of the default single targets
        #[arg(long, default_value_t = 3)]
        max_d: u64,
        /// Output format
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Largest grid size.
        #[arg(long, env = "AXKATZ_SCAN_LIMIT", default_value_t = 100_000)]
        limit: u64,
    },
    /// Zero count of a polynomial system over Z/m against its bound.
    Polybound {
        /// The modulus m.
        #[arg(long, required_unless_present = "system")]
        modulus: Option<u64>,
        /// Number of variables n.
        #[arg(long, required_unless_present = "system")]
        vars: Option<usize>,
        /// Polynomial such as "x1*x2 + x3". Repeatable.
        #[arg(long, conflicts_with = "system")]
        poly: Vec<String>,
        /// System as a JSON file.
        #[arg(long)]
        system: Option<String>,
        /// Cap on m^n.
        #[arg(long, env = "AXKATZ_POINT_CAP", default_value_t = oracle::DEFAULT_POINT_CAP)]
        cap: u64,
    },
}

struct Output {
    text: String,
    verified: bool,
}

fn json<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    Ok(if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    })
}

fn pgroup(args: &PGroupArgs) -> Result<PGroupShape> {
    Ok(PGroupShape::new(args.p, parse::partition(&args.alpha)?)?)
}

fn target_spec(p: u64, t: &TargetArgs) -> Result<TargetSpec> {
    let cyclic = t.targets.as_deref().map(parse::targets).transpose()?.unwrap_or_default();
    if t.target_shape.is_empty() {
        if cyclic.is_empty() {
            bail!("give at least one target via --targets or --target-shape");
        }
        return Ok(TargetSpec::new(p, cyclic)?);
    }
    Ok(bounds::expand_targets(p, &parse::codomains(p, &cyclic, &t.target_shape)?)?)
}

#[derive(Serialize)]
struct NuOut {
    p: u64,
    alpha: Vec<u32>,
    n: Vec<u64>,
    value: axkatz::calculus::ExtendedDegree,
}

#[derive(Serialize)]
struct DeltaOut {
    p: u64,
    alpha: Vec<u32>,
    beta: u32,
    #[serde(with = "axkatz::bigjson::uint")]
    delta: BigUint,
}

fn run(cli: Cli) -> Result<Output> {
    let pretty = cli.pretty;
    let ok = |text| Output { text, verified: true };
    match cli.command {
        Command::Bound { group, targets } => {
            let g = pgroup(&group)?;
            let spec = target_spec(g.p, &targets)?;
            Ok(ok(json(&bounds::main_bound(g.p, &g.exponents, &spec)?, pretty)?))
        }
        Command::Multibound { domain, target_shape } => {
            let domain = parse::shape(&domain)?;
            let codomains = target_shape
                .iter()
                .map(|s| parse::target_shape(s))
                .collect::<Result<Vec<_>>>()?;
            Ok(ok(json(&bounds::multi_prime_bounds(&domain, &codomains)?, pretty)?))
        }
        Command::Vp { group, d } => {
            let g = pgroup(&group)?;
            Ok(ok(json(&bounds::vp(g.p, &g.exponents, &d)?, pretty)?))
        }
        Command::Nu { group, n } => {
            let g = pgroup(&group)?;
            let n: Vec<u64> = parse::numbers(&n, "multi-index")?;
            let big: Vec<BigUint> = n.iter().map(|&x| x.into()).collect();
            let value = bounds::nu_p(g.p, &g.exponents, &big)?;
            Ok(ok(json(
                &NuOut {
                    p: g.p,
                    alpha: g.exponents.parts().to_vec(),
                    n,
                    value,
                },
                pretty,
            )?))
        }
        Command::Delta { group, beta } => {
            let g = pgroup(&group)?;
            if beta == 0 {
                bail!("β must be positive");
            }
            Ok(ok(json(
                &DeltaOut {
                    p: g.p,
                    alpha: g.exponents.parts().to_vec(),
                    beta,
                    delta: delta_p(g.p, &g.exponents, beta),
                },
                pretty,
            )?))
        }
        Command::Fdeg { map } => {
            let f = parse::map_file(&map)?;
            Ok(ok(json(&functional_degree(&f)?, pretty)?))
        }
        Command::Series { map } => {
            let f = parse::map_file(&map)?;
            Ok(ok(json(&series_coefficients(&f)?, pretty)?))
        }
        Command::Conjugate { parts } => {
            let c = parse::partition(&parts)?.conjugate();
            Ok(ok(json(&c.parts(), pretty)?))
        }
        Command::Zeros { maps } => {
            let maps = parse::map_files(&maps)?;
            let domain = maps[0].domain().clone();
            Ok(ok(json(&zero_count(&domain, &maps)?, pretty)?))
        }
        Command::Verify {
            group,
            targets,
            mode,
            seed,
            samples,
            cap,
        } => {
            let g = pgroup(&group)?;
            let cyclic = targets
                .targets
                .as_deref()
                .map(parse::targets)
                .transpose()?
                .unwrap_or_default();
            let codomains = parse::codomains(g.p, &cyclic, &targets.target_shape)?;
            let mode = match mode {
                Mode::Exhaustive => VerifyMode::Exhaustive,
                Mode::Sampled => VerifyMode::Sampled {
                    seed: seed.ok_or_else(|| anyhow!("sampled mode requires --seed"))?,
                    samples,
                },
            };
            let report = oracle::verify_main_theorem(&g, &codomains, &mode, cap)?;
            Ok(Output {
                text: json(&report, pretty)?,
                verified: report.pass,
            })
        }
        Command::Trace { maps, beta, start } => {
            let maps = parse::map_files(&maps)?;
            let trace = match beta {
                Some(b) => oracle::proof_trace(&maps, b)?,
                None => oracle::proof_trace_escalated(&maps, start)?,
            };
            Ok(Output {
                verified: trace.holds && trace.congruent && trace.coefficient_violations == 0,
                text: json(&trace, pretty)?,
            })
        }
        Command::Scan {
            primes,
            max_alpha,
            max_parts,
            targets,
            max_beta,
            max_d,
            format,
            limit,
        } => {
            let grid = scan::ScanGrid::new(
                parse::numbers(&primes, "prime")?,
                max_alpha,
                max_parts,
                &targets,
                max_beta,
                max_d,
                limit,
            )?;
            let rows = grid.rows()?;
            let text = match format {
                Format::Json => json(&rows, pretty)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    scan::write_csv(&rows, &mut buf)?;
                    String::from_utf8(buf)?.trim_end().to_owned()
                }
            };
            Ok(ok(text))
        }
        Command::Polybound {
            modulus,
            vars,
            poly,
            system,
            cap,
        } => {
            let system = match system {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| anyhow!("reading {path}: {e}"))?;
                    serde_json::from_str::<PolySystem>(&text)
                        .map_err(|e| anyhow!("parsing {path}: {e}"))?
                }
                None => {
                    let sources: Vec<&str> = poly.iter().map(String::as_str).collect();
                    PolySystem::parse(
                        modulus.expect("required by clap"),
                        vars.expect("required by clap"),
                        &sources,
                    )?
                }
            };
            let report = oracle::poly_bound_check(&system, cap)?;
            Ok(Output {
                verified: report.pass,
                text: json(&report, pretty)?,
            })
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
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", out.text).is_err() {
                return ExitCode::from(2);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

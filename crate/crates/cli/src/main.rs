use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kannappan::catalog;
use kannappan::formats::{self, RawTable};
use kannappan::report::{self, complex, function, sha256_hex};
use kannappan::search::{default_grid, grid_completeness_search};
use kannappan::verify::{self, SuiteSelection, VerifyConfig};
use kannappan_core::classify::{classify, construct, validate_descriptor, FamilyDescriptor};
use kannappan_core::equations::{residual, EquationId};
use kannappan_core::functions::{enumerate_exponentials, fit_measure};
use kannappan_core::{
    CFunction, DiscreteMeasure, FiniteSemigroup, InvolutiveAutomorphism, Setting, ToleranceProfile,
    C64,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kannappan",
    version,
    about = "Integral Kannappan-sine laws on finite semigroups"
)]
struct Cli {
    /// Residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    /// Relative pivot threshold for rank and nullspace computations.
    #[arg(long = "rank-eps", global = true, default_value_t = 1e-8)]
    rank_eps: f64,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SettingArgs {
    /// Table file, or `catalog:NAME`.
    #[arg(long)]
    semigroup: String,
    /// Involution file, `identity`, or `catalog:K` (K-th catalog involution).
    #[arg(long, default_value = "identity")]
    sigma: String,
    /// Measure file, or `delta:K` for a unit point mass.
    #[arg(long, default_value = "delta:0")]
    measure: String,
}

#[derive(Subcommand)]
enum Command {
    /// Residual of an equation for given functions.
    Check {
        #[arg(long)]
        eq: EquationId,
        #[command(flatten)]
        setting: SettingArgs,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// List the exponentials of a semigroup.
    Exponentials {
        #[arg(long)]
        semigroup: String,
    },
    /// Recover the solution family of a pair `(f, g)`.
    Classify {
        #[arg(long)]
        eq: EquationId,
        #[command(flatten)]
        setting: SettingArgs,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Fit a measure to prescribed moments; prints a measure file.
    FitMeasure {
        #[arg(long)]
        semigroup: String,
        /// Comma-separated support indices.
        #[arg(long, value_delimiter = ',', required = true)]
        support: Vec<usize>,
        /// `FILE:RE:IM`, meaning `∫h dμ = RE + i·IM` for the function in FILE.
        #[arg(long = "constraint", required = true)]
        constraints: Vec<String>,
    },
    /// Solve for `f` over a grid of candidate `g` and classify every hit.
    GridSearch {
        #[arg(long)]
        eq: EquationId,
        #[command(flatten)]
        setting: SettingArgs,
        /// Comma-separated `RE:IM` coefficients; default `{0, ±1, ±i, ±1/2}`.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<String>>,
    },
    /// Run the verification suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long = "per-family", default_value_t = VerifyConfig::default().per_family)]
        per_family: usize,
        /// Extra table files to validate alongside the catalog.
        #[arg(long)]
        semigroup: Vec<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[arg(long, conflicts_with = "dump", required_unless_present = "dump")]
        list: bool,
        #[arg(long)]
        dump: Option<String>,
    },
}

/// Loaded input plus a digest of its source.
struct Loaded<T> {
    value: T,
    digest: String,
}

fn read(path: &str) -> Result<(String, String)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let digest = sha256_hex(text.as_bytes());
    Ok((text, digest))
}

fn semigroup_from_raw(raw: RawTable) -> Result<FiniteSemigroup> {
    Ok(match raw.identity {
        Some(e) => FiniteSemigroup::with_declared_identity(raw.rows, e)?,
        None => FiniteSemigroup::new(raw.rows)?,
    })
}

fn load_semigroup(spec: &str) -> Result<Loaded<FiniteSemigroup>> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let entry = catalog::lookup(name)?;
        return Ok(Loaded {
            value: entry.semigroup,
            digest: sha256_hex(spec.as_bytes()),
        });
    }
    let (text, digest) = read(spec)?;
    let raw = formats::parse_table(&text).with_context(|| format!("parsing {spec}"))?;
    Ok(Loaded {
        value: semigroup_from_raw(raw).with_context(|| format!("validating {spec}"))?,
        digest,
    })
}

fn load_sigma(
    spec: &str,
    sg_spec: &str,
    s: &FiniteSemigroup,
) -> Result<Loaded<InvolutiveAutomorphism>> {
    let digest = sha256_hex(spec.as_bytes());
    if spec == "identity" {
        return Ok(Loaded {
            value: InvolutiveAutomorphism::identity(s.len()),
            digest,
        });
    }
    if let Some(k) = spec.strip_prefix("catalog:") {
        let name = sg_spec
            .strip_prefix("catalog:")
            .ok_or_else(|| anyhow!("catalog:K needs a catalog semigroup"))?;
        let k: usize = k.parse().context("involution index")?;
        let entry = catalog::lookup(name)?;
        let n = entry.involutions.len();
        let value = entry
            .involutions
            .into_iter()
            .nth(k)
            .ok_or_else(|| anyhow!("{name} has {n} involutions"))?;
        return Ok(Loaded { value, digest });
    }
    let (text, digest) = read(spec)?;
    let perm = formats::parse_sigma(&text).with_context(|| format!("parsing {spec}"))?;
    Ok(Loaded {
        value: InvolutiveAutomorphism::new(s, perm)
            .with_context(|| format!("validating {spec}"))?,
        digest,
    })
}

fn load_measure(spec: &str, n: usize) -> Result<Loaded<DiscreteMeasure>> {
    if let Some(k) = spec.strip_prefix("delta:") {
        let k: usize = k.parse().context("point mass index")?;
        let value = DiscreteMeasure::new(n, vec![(k, C64::new(1.0, 0.0))])?;
        return Ok(Loaded {
            value,
            digest: sha256_hex(spec.as_bytes()),
        });
    }
    let (text, digest) = read(spec)?;
    let atoms = formats::parse_measure_atoms(&text).with_context(|| format!("parsing {spec}"))?;
    Ok(Loaded {
        value: DiscreteMeasure::new(n, atoms).with_context(|| format!("validating {spec}"))?,
        digest,
    })
}

fn load_function(path: &Path, n: usize) -> Result<Loaded<CFunction>> {
    let p = path.display().to_string();
    let (text, digest) = read(&p)?;
    let f = formats::parse_function(&text).with_context(|| format!("parsing {p}"))?;
    if f.len() != n {
        bail!("{p} has {} values, expected {n}", f.len());
    }
    if !f.is_finite() {
        bail!("{p} contains non-finite values");
    }
    Ok(Loaded { value: f, digest })
}

struct LoadedSetting {
    setting: Setting,
    digests: Value,
}

fn load_setting(args: &SettingArgs, tol: ToleranceProfile) -> Result<LoadedSetting> {
    let s = load_semigroup(&args.semigroup)?;
    let sigma = load_sigma(&args.sigma, &args.semigroup, &s.value)?;
    let mu = load_measure(&args.measure, s.value.len())?;
    let digests = json!({"semigroup": s.digest, "sigma": sigma.digest, "measure": mu.digest});
    let setting = Setting::new(s.value, sigma.value, mu.value, tol)?;
    Ok(LoadedSetting { setting, digests })
}

fn parse_coefficient(tok: &str) -> Result<C64> {
    let (re, im) = tok
        .split_once(':')
        .ok_or_else(|| anyhow!("expected RE:IM, got {tok:?}"))?;
    Ok(C64::new(re.trim().parse()?, im.trim().parse()?))
}

fn descriptor_json(desc: &FamilyDescriptor) -> Value {
    let scalars: serde_json::Map<String, Value> = desc
        .scalars()
        .into_iter()
        .map(|(k, v)| (k.to_string(), complex(v)))
        .collect();
    let exps: serde_json::Map<String, Value> = desc
        .exponentials()
        .into_iter()
        .map(|(k, e)| {
            (
                k.to_string(),
                json!(e
                    .exact_values()
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()),
            )
        })
        .collect();
    let funcs: serde_json::Map<String, Value> = desc
        .functions()
        .into_iter()
        .map(|(k, f)| (k.to_string(), function(f)))
        .collect();
    json!({"family": desc.tag().name(), "scalars": scalars, "exponentials": exps, "functions": funcs})
}

fn emit(v: &Value) {
    print!("{}", report::to_json_string(v));
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = ToleranceProfile::new(cli.eps, cli.rank_eps)?;
    match cli.command {
        Command::Check { eq, setting, f, g } => {
            let ls = load_setting(&setting, tol)?;
            let st = &ls.setting;
            let f = load_function(&f, st.len())?;
            let g = g.map(|p| load_function(&p, st.len())).transpose()?;
            let rep = residual(
                st.semigroup(),
                st.sigma(),
                Some(st.measure()),
                eq,
                &f.value,
                g.as_ref().map(|x| &x.value),
                st.tol(),
            )?;
            emit(&json!({
                "command": "check",
                "equation": eq.name(),
                "inputs": {"setting": ls.digests, "f": f.digest, "g": g.map(|x| x.digest)},
                "max_residual": rep.max_residual,
                "argmax": [rep.argmax.0, rep.argmax.1],
                "verdict": rep.verdict,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Exponentials { semigroup } => {
            let s = load_semigroup(&semigroup)?;
            let exps: Vec<Value> = enumerate_exponentials(&s.value)
                .iter()
                .map(|e| {
                    json!({
                        "exact": e.exact_values().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "values": function(e.function()),
                    })
                })
                .collect();
            emit(
                &json!({"command": "exponentials", "inputs": {"semigroup": s.digest}, "count": exps.len(), "exponentials": exps}),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { eq, setting, f, g } => {
            let ls = load_setting(&setting, tol)?;
            let st = &ls.setting;
            let f = load_function(&f, st.len())?;
            let g = load_function(&g, st.len())?;
            let (desc, trace) = classify(st, eq, &f.value, &g.value)?;
            let (f2, g2) = construct(st, &desc)?;
            let err = f.value.max_diff(&f2).max(g.value.max_diff(&g2));
            let constraints: Vec<Value> = validate_descriptor(st, &desc)
                .lines
                .iter()
                .map(|l| json!({"name": l.name, "value": complex(l.value), "passed": l.passed}))
                .collect();
            let constants: serde_json::Map<String, Value> = trace
                .constants()
                .into_iter()
                .map(|(k, v)| (k.to_string(), complex(v)))
                .collect();
            emit(&json!({
                "command": "classify",
                "equation": eq.name(),
                "inputs": {"setting": ls.digests, "f": f.digest, "g": g.digest},
                "descriptor": descriptor_json(&desc),
                "constraints": constraints,
                "trace": {"branches": trace.branches, "constants": constants},
                "round_trip_error": err,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::FitMeasure {
            semigroup,
            support,
            constraints,
        } => {
            let s = load_semigroup(&semigroup)?;
            let n = s.value.len();
            let mut cons = Vec::new();
            for c in &constraints {
                let mut parts = c.rsplitn(3, ':');
                let (im, re, file) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(im), Some(re), Some(file)) => (im, re, file),
                    _ => bail!("expected FILE:RE:IM, got {c:?}"),
                };
                let h = load_function(&PathBuf::from(file), n)?;
                cons.push((h.value, C64::new(re.parse()?, im.parse()?)));
            }
            let mu = fit_measure(n, &cons, &support, &tol)?;
            print!("{}", formats::write_measure(&mu));
            Ok(ExitCode::SUCCESS)
        }
        Command::GridSearch { eq, setting, grid } => {
            let ls = load_setting(&setting, tol)?;
            let grid = match grid {
                Some(toks) => toks
                    .iter()
                    .map(|t| parse_coefficient(t))
                    .collect::<Result<Vec<_>>>()?,
                None => default_grid(),
            };
            let hits = grid_completeness_search(&ls.setting, eq, &grid)?;
            let hits_json: Vec<Value> = hits
                .iter()
                .map(|h| json!({"f": function(&h.f), "g": function(&h.g), "descriptor": descriptor_json(&h.desc)}))
                .collect();
            emit(&json!({
                "command": "grid-search",
                "equation": eq.name(),
                "inputs": {"setting": ls.digests, "grid": grid.iter().map(|&z| complex(z)).collect::<Vec<_>>()},
                "hits": hits_json,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            seed,
            per_family,
            semigroup,
            out,
        } => {
            let mut extra = Vec::new();
            for p in &semigroup {
                let name = p.display().to_string();
                let (text, _) = read(&name)?;
                extra.push((
                    name.clone(),
                    formats::parse_table(&text).with_context(|| format!("parsing {name}"))?,
                ));
            }
            let config = VerifyConfig {
                seed,
                per_family,
                tol,
                jobs: cli.jobs,
                extra_tables: extra,
            };
            let report = verify::run(&config, suite)?;
            let text = report.render();
            match out {
                Some(p) => {
                    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?
                }
                None => print!("{text}"),
            }
            for o in report.outcomes.iter().filter(|o| !o.passed) {
                eprintln!("suite {} failed", o.suite);
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Catalog { list, dump } => {
            if list {
                for name in catalog::names() {
                    println!("{name}");
                }
            } else if let Some(name) = dump {
                let e = catalog::lookup(&name)?;
                print!("{}", formats::write_table(&e.semigroup));
                for (k, s) in e.involutions.iter().enumerate() {
                    print!("# involution {k}: {}", formats::write_sigma(s));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

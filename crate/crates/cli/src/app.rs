use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tatecoh::surgery::ScheduleStep;
use tatecoh::{
    browder_check, browder_pipeline, dimension_rows, exponent_profile, glue, glue_rows,
    lens_complex, product_complex, random_free_complex, syzygy, tate_cohomology_range,
    tate_hypercohomology_range, CohomologyTable, ElementaryAbelianGroup, FreeChainComplex,
    ModulePresentation,
};

use crate::format::{parse_complex, parse_module, render_complex, render_module};
use crate::report;

/// Exit status for a gluing certificate or divisibility verdict that came out false.
pub const THEOREM_VIOLATION: u8 = 3;
/// Exit status for unreadable or invalid input.
pub const VALIDATION_FAILURE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tatecoh",
    version,
    about = "Tate cohomology, gluing and exponent bounds over Z[(Z/p)^r]"
)]
pub struct Cli {
    /// Emit JSON instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a complex file for a standard or random complex.
    #[command(subcommand)]
    Gen(Gen),
    /// Homology of a complex.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<DegRange>,
    },
    /// Tate cohomology of a module.
    Tate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: DegRange,
    },
    /// Tate hypercohomology of a finite complex.
    Hyper {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        deg: DegRange,
    },
    /// The n-th syzygy of a module, as a module file.
    Syzygy {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: usize,
    },
    /// Glue H_m onto degree n.
    Glue {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
        /// Write the glued complex here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterated gluing, e.g. `--schedule "3,1:3;4:6"` (sources:target per step).
    Gluerows {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        schedule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that |G| divides the product of exp H^{j+1}(G, H_j).
    Browder {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also glue to the top degree and cross-check the filtration.
        #[arg(long)]
        pipeline: bool,
    },
    /// Row table for a product of spheres of the given dimensions.
    Rows {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<i32>,
    },
    /// Exponents of Tate cohomology of a module.
    Exponents {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: DegRange,
    },
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    Lens {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
    },
    Product {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
    },
    Random {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
    },
}

/// The group for module inputs; optional when the module file declares it.
#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
}

impl GroupArgs {
    fn group(&self) -> anyhow::Result<Option<ElementaryAbelianGroup>> {
        match (self.p, self.r) {
            (Some(p), r) => Ok(Some(ElementaryAbelianGroup::new(p, r.unwrap_or(1))?)),
            (None, Some(_)) => bail!("--r needs --p"),
            (None, None) => Ok(None),
        }
    }
}

/// Inclusive degree range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegRange(pub i32, pub i32);

impl std::str::FromStr for DegRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| format!("bad degree `{t}`"))
        };
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let a = parse(s)?;
                (a, a)
            }
        };
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok(DegRange(a, b))
    }
}

/// What a command printed and the exit status it asks for.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn verdict(stdout: String, holds: bool) -> Self {
        Outcome {
            stdout,
            code: if holds { 0 } else { THEOREM_VIOLATION },
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_complex(path: &Path) -> anyhow::Result<FreeChainComplex> {
    parse_complex(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// A module file, or the literal `trivial`.
fn load_module(arg: &str, group: &GroupArgs) -> anyhow::Result<ModulePresentation> {
    let group = group.group()?;
    let text = if arg == "trivial" && !Path::new(arg).exists() {
        "trivial".to_string()
    } else {
        read(Path::new(arg))?
    };
    parse_module(&text, group).with_context(|| format!("parsing module {arg}"))
}

fn write_complex(path: &Option<PathBuf>, c: &FreeChainComplex) -> anyhow::Result<()> {
    if let Some(p) = path {
        fs::write(p, render_complex(c)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// `"3,1:3;4:6"` -> glue 3 and 1 onto 3, then 4 onto 6.
pub fn parse_schedule(s: &str) -> anyhow::Result<Vec<ScheduleStep>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|step| {
            let (sources, target) = step
                .split_once(':')
                .with_context(|| format!("step `{step}` needs `:`"))?;
            let sources = sources
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i32>()
                        .with_context(|| format!("bad degree `{x}`"))
                })
                .collect::<anyhow::Result<_>>()?;
            let target = target
                .trim()
                .parse()
                .with_context(|| format!("bad degree `{target}`"))?;
            Ok(ScheduleStep { sources, target })
        })
        .collect()
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let as_json = cli.json;
    match &cli.command {
        Command::Gen(g) => {
            let c = match g {
                Gen::Lens { p, k } => lens_complex(*p, *k)?,
                Gen::Product { p, ks } => product_complex(*p, ks)?,
                Gen::Random { p, r, seed, ranks } => {
                    random_free_complex(ElementaryAbelianGroup::new(*p, *r)?, ranks, *seed)?
                }
            };
            Ok(Outcome::ok(if as_json {
                json(&c)?
            } else {
                render_complex(&c)
            }))
        }
        Command::Homology { input, deg } => {
            let c = load_complex(input)?;
            let DegRange(a, b) = deg.unwrap_or(DegRange(c.lo(), c.hi()));
            let groups = (a..=b)
                .map(|i| c.homology(i))
                .collect::<Result<Vec<_>, _>>()?;
            let t = CohomologyTable::from_groups(a, groups);
            Ok(Outcome::ok(if as_json {
                json(&t)?
            } else {
                report::cohomology(&t, |i| format!("H_{i}"))
            }))
        }
        Command::Tate { group, module, deg } | Command::Exponents { group, module, deg } => {
            let m = load_module(module, group)?;
            let DegRange(a, b) = *deg;
            let t = if matches!(cli.command, Command::Exponents { .. }) {
                exponent_profile(m.group(), &m, a, b)?
            } else {
                CohomologyTable::from_groups(a, tate_cohomology_range(m.group(), &m, a, b)?)
            };
            Ok(Outcome::ok(if as_json {
                json(&t)?
            } else {
                report::cohomology(&t, |i| format!("Ĥ^{i}"))
            }))
        }
        Command::Hyper { input, deg } => {
            let c = load_complex(input)?;
            let DegRange(a, b) = *deg;
            let t = CohomologyTable::from_groups(a, tate_hypercohomology_range(&c, a, b)?);
            Ok(Outcome::ok(if as_json {
                json(&t)?
            } else {
                report::cohomology(&t, |i| format!("Ĥ^{i}"))
            }))
        }
        Command::Syzygy { group, module, n } => {
            let m = syzygy(&load_module(module, group)?, *n)?;
            Ok(Outcome::ok(if as_json {
                json(&m)?
            } else {
                render_module(&m)
            }))
        }
        Command::Glue { input, m, n, out } => {
            let (d, cert) = glue(&load_complex(input)?, *m, *n)?;
            write_complex(out, &d)?;
            let text = if as_json {
                json(&cert)?
            } else {
                report::certificate(&cert)
            };
            Ok(Outcome::verdict(text, cert.holds()))
        }
        Command::Gluerows {
            input,
            schedule,
            out,
        } => {
            let g = glue_rows(&load_complex(input)?, &parse_schedule(schedule)?)?;
            write_complex(out, &g.complex)?;
            let text = if as_json {
                json(&g.certificates)?
            } else {
                report::row_gluing(&g)
            };
            Ok(Outcome::verdict(
                text,
                g.certificates.iter().all(|c| c.holds()),
            ))
        }
        Command::Browder { input, pipeline } => {
            let c = load_complex(input)?;
            if *pipeline {
                let p = browder_pipeline(&c)?;
                let holds = p.report.divides
                    && p.cross_check
                    && p.sections_match
                    && p.verdict.divides
                    && p.gluing.certificates.iter().all(|c| c.holds());
                let text = if as_json {
                    json(&serde_json::json!({
                        "report": p.report,
                        "penultimate_cohomology": p.penultimate_cohomology,
                        "cross_check": p.cross_check,
                        "sections_match": p.sections_match,
                        "filtration": p.verdict,
                        "certificates": p.gluing.certificates,
                    }))?
                } else {
                    report::pipeline(&p)
                };
                Ok(Outcome::verdict(text, holds))
            } else {
                let r = browder_check(&c)?;
                let text = if as_json {
                    json(&r)?
                } else {
                    report::browder(&r)
                };
                Ok(Outcome::verdict(text, r.divides))
            }
        }
        Command::Rows { dims } => {
            if dims.iter().any(|&d| d < 1) {
                bail!("sphere dimensions must be positive");
            }
            let t = dimension_rows(dims);
            Ok(Outcome::ok(if as_json {
                json(&t)?
            } else {
                report::rows(&t)
            }))
        }
    }
}

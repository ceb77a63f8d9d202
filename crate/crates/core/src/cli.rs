//! Command-line front end. Exit codes: 0 when everything checked holds, 1
//! when a verification fails, 2 for invalid configuration or input.

use crate::adg::{
    build_polarity_graph, generic_conjugation_polarity, gh_family, gh_original_family, gq_family,
    is_point_line_symmetric, plane_family, AdgSpec, BipartiteGraph, CheckMode, Family, SpecFile,
};
use crate::gf::find_normal_element;
use crate::graphs::io::{read_edge_list, read_partition, write_edge_list, write_partition};
use crate::graphs::{materialize, Graph};
use crate::partitions::{
    general_even_partition, general_odd_partition, general_polarity_partition, gh_partition,
    gq_partition, plane_partition, ClassedPartition,
};
use crate::verify::{
    brute_force_chi_a, brute_force_chromatic, brute_force_psi, family_report, files_report,
    generic_report, FamilyParams, SampledConfig, VerificationReport, Witness,
};
use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const DEFAULT_CEILING: usize = 2_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "achromatic",
    version,
    about = "Polarity graphs over finite fields and their complete partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the edge list of a family's graph.
    Build(RunArgs),
    /// Write a family's closed-form partition and its class keys.
    Partition(RunArgs),
    /// Check a family, or an edge list and partition read from files.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, requires = "partition")]
        edges: Option<PathBuf>,
        #[arg(long, requires = "edges")]
        partition: Option<PathBuf>,
    },
    /// Brute-force ψ, χ_a and χ of a graph with at most 12 vertices.
    Oracle {
        #[arg(long)]
        edges: PathBuf,
    },
    /// Build, partition and verify in one go.
    Report(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// plane, gq, gh, gh-original or generic.
    pub family: String,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output directory (a file for `verify`); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// System description for the generic family.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Allow e = 0 for the quadrangle and hexagon.
    #[arg(long)]
    pub override_small_e: bool,
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    pub ceiling: usize,
}

/// Validated run parameters; all randomness derives from `seed`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Family,
    pub params: FamilyParams,
    pub spec: Option<AdgSpec>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> anyhow::Result<RunConfig> {
        let family: Family = a.family.parse()?;
        if let Some(w) = a.workers {
            if w == 0 {
                bail!("--workers must be positive");
            }
            // A pool that already exists keeps its size.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build_global();
        }
        let spec = match (&a.spec, family) {
            (Some(path), Family::Generic) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let file: SpecFile =
                    serde_json::from_str(&text).context("parsing the system description")?;
                Some(AdgSpec::from_file(&file)?)
            }
            (None, Family::Generic) => bail!("the generic family needs --spec"),
            (Some(_), _) => bail!("--spec only applies to the generic family"),
            (None, _) => None,
        };
        let params = FamilyParams {
            family,
            q: a.q,
            e: a.e,
            sampled: a.mode == Mode::Sampled,
            allow_small_e: a.override_small_e,
            ceiling: a.ceiling,
            sampling: SampledConfig::with_seed(a.seed),
        };
        match family {
            Family::Plane | Family::GhOriginal if a.q.is_none() => bail!("{family} needs --q"),
            Family::Gq => {
                params.exponent(2)?;
            }
            Family::Gh => {
                params.exponent(3)?;
            }
            _ => {}
        }
        Ok(RunConfig {
            family,
            params,
            spec,
            out: a.out.clone(),
        })
    }
}

/// The explicit graph a family stands for, with its closed-form partition.
pub struct Construction {
    pub graph: Graph,
    pub partition: Option<ClassedPartition>,
}

fn check_mode(cfg: &RunConfig) -> CheckMode {
    if cfg.params.sampled {
        CheckMode::Sampled {
            samples: cfg.params.sampling.polarity_samples,
            seed: cfg.params.sampling.seed,
        }
    } else {
        CheckMode::Exhaustive
    }
}

pub fn construct(cfg: &RunConfig) -> anyhow::Result<Construction> {
    let ceiling = cfg.params.ceiling;
    match cfg.family {
        Family::Plane | Family::Gq | Family::Gh => {
            let (spec, pol) = match cfg.family {
                Family::Plane => plane_family(cfg.params.q.unwrap_or_default())?,
                Family::Gq => gq_family(cfg.params.exponent(2)?, cfg.params.allow_small_e)?,
                _ => gh_family(cfg.params.exponent(3)?, cfg.params.allow_small_e)?,
            };
            let pg = build_polarity_graph(&spec, &pol, check_mode(cfg))?;
            let graph = materialize(&pg, ceiling)?;
            let partition = match cfg.family {
                Family::Plane => plane_partition(&spec, &find_normal_element(spec.field())?)?,
                Family::Gq => gq_partition(&spec)?,
                _ => gh_partition(&spec)?,
            };
            Ok(Construction {
                graph,
                partition: Some(partition),
            })
        }
        Family::GhOriginal => {
            let spec = gh_original_family(cfg.params.q.unwrap_or_default())?;
            let graph = materialize(&BipartiteGraph::new(spec)?, ceiling)?;
            Ok(Construction {
                graph,
                partition: None,
            })
        }
        Family::Generic => {
            let spec = cfg
                .spec
                .as_ref()
                .ok_or_else(|| anyhow!("the generic family needs --spec"))?;
            let m = spec.m();
            let basis = if spec.field().k() % 2 == 0 {
                Some(find_normal_element(spec.field())?)
            } else {
                None
            };
            match basis {
                Some(basis) if m % 2 == 0 && is_point_line_symmetric(spec).symmetric => {
                    let pol = generic_conjugation_polarity(spec)?;
                    let graph = materialize(
                        &build_polarity_graph(spec, &pol, CheckMode::Exhaustive)?,
                        ceiling,
                    )?;
                    let partition = general_polarity_partition(spec, &basis)?;
                    Ok(Construction {
                        graph,
                        partition: Some(partition),
                    })
                }
                basis => {
                    let graph = materialize(&BipartiteGraph::new(spec.clone())?, ceiling)?;
                    let partition = if m % 2 == 1 {
                        general_odd_partition(spec, None)?
                    } else {
                        let basis = basis.ok_or_else(|| {
                            anyhow!("even dimension needs a field of square order")
                        })?;
                        general_even_partition(spec, &basis)?
                    };
                    Ok(Construction {
                        graph,
                        partition: Some(partition),
                    })
                }
            }
        }
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => writeln!(create(p)?, "{text}")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn write_graph(g: &Graph, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            write_edge_list(g, &mut w)?;
            w.flush()?;
        }
        None => write_edge_list(g, std::io::stdout().lock())?,
    }
    Ok(())
}

fn write_classes(part: &ClassedPartition, dir: Option<&Path>) -> anyhow::Result<()> {
    match dir {
        Some(d) => {
            let mut w = create(&d.join("partition.txt"))?;
            write_partition(&part.partition, &mut w)?;
            w.flush()?;
            write_json(&part.sidecar(), Some(&d.join("classes.json")))
        }
        None => Ok(write_partition(&part.partition, std::io::stdout().lock())?),
    }
}

fn describe_failures(report: &VerificationReport, keys: Option<&ClassedPartition>) {
    let name = |c: u32| match keys.filter(|k| (c as usize) < k.keys.len()) {
        Some(k) => format!(
            "{c} {:?}",
            k.keys[c as usize].iter().map(|x| x.0).collect::<Vec<_>>()
        ),
        None => c.to_string(),
    };
    for (v, ok) in &report.verdicts {
        if !ok {
            eprintln!("failed: {v}");
        }
    }
    for w in &report.witnesses {
        match w {
            Witness::MissingPair { a, b } => {
                eprintln!("missing edge between classes {} and {}", name(*a), name(*b))
            }
            Witness::WithinEdge { class, u, v } => {
                eprintln!("edge {u} {v} inside class {}", name(*class))
            }
            other => eprintln!(
                "witness: {}",
                serde_json::to_string(other).unwrap_or_default()
            ),
        }
    }
}

fn family_verification(cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    Ok(match &cfg.spec {
        Some(spec) => generic_report(spec, cfg.params.ceiling)?,
        None => family_report(&cfg.params)?,
    })
}

fn finish(report: &VerificationReport, keys: Option<&ClassedPartition>) -> i32 {
    if report.passed() {
        0
    } else {
        describe_failures(report, keys);
        1
    }
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Build(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let c = construct(&cfg)?;
            write_graph(
                &c.graph,
                cfg.out.as_deref().map(|d| d.join("edges.txt")).as_deref(),
            )?;
            Ok(0)
        }
        Command::Partition(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let c = construct(&cfg)?;
            let part = c
                .partition
                .ok_or_else(|| anyhow!("{} has no closed-form partition", cfg.family))?;
            write_classes(&part, cfg.out.as_deref())?;
            Ok(0)
        }
        Command::Verify {
            run,
            edges,
            partition,
        } => {
            let cfg = RunConfig::from_args(&run)?;
            match (edges, partition) {
                (Some(e), Some(p)) => {
                    let g = read_edge_list(BufReader::new(
                        File::open(&e).with_context(|| e.display().to_string())?,
                    ))?;
                    let part = read_partition(BufReader::new(
                        File::open(&p).with_context(|| p.display().to_string())?,
                    ))?;
                    let report = files_report(cfg.family, &g, &part)?;
                    write_json(&report, cfg.out.as_deref())?;
                    let keys = construct(&cfg).ok().and_then(|c| c.partition);
                    Ok(finish(&report, keys.as_ref()))
                }
                _ => {
                    let report = family_verification(&cfg)?;
                    write_json(&report, cfg.out.as_deref())?;
                    Ok(finish(&report, None))
                }
            }
        }
        Command::Oracle { edges } => {
            let g = read_edge_list(BufReader::new(
                File::open(&edges).with_context(|| edges.display().to_string())?,
            ))?;
            #[derive(Serialize)]
            struct Oracle {
                n: usize,
                edges: usize,
                psi: u32,
                chi_a: u32,
                chi: u32,
            }
            let out = Oracle {
                n: g.n(),
                edges: g.edge_count(),
                psi: brute_force_psi(&g)?,
                chi_a: brute_force_chi_a(&g)?,
                chi: brute_force_chromatic(&g)?,
            };
            write_json(&out, None)?;
            Ok(0)
        }
        Command::Report(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let report = family_verification(&cfg)?;
            match cfg.out.as_deref() {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    if let Ok(c) = construct(&cfg) {
                        write_graph(&c.graph, Some(&dir.join("edges.txt")))?;
                        if let Some(part) = &c.partition {
                            write_classes(part, Some(dir))?;
                        }
                    }
                    write_json(&report, Some(&dir.join("report.json")))?;
                }
                None => write_json(&report, None)?,
            }
            Ok(finish(&report, None))
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

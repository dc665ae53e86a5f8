//! The `multirees` command line.
//!
//! Every subcommand prints a plain-text table and, with `--json <path>`,
//! writes a [`Report`] that re-parses and re-validates. Exit status is 0 on
//! success, 2 when the computation found violations, 1 on input errors.

pub mod project;
mod render;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use multirees::{
    check_complete_reduction_at, colength, fit_for_box, graded_difference_polynomial,
    hilbert_function, integral_closure, nakayama_descent_check, postulation_number,
    postulation_set, reduction_vector_set, search_complete_reductions, CompleteReductionCandidate,
    CorrespondenceReport, Filtration, GridBox, HilbertPolynomial, HilbertTable, MonomialIdeal,
    MultiIndex, NakayamaReport, PostulationNumber, SearchHit, SearchOptions, UpwardClosedSet,
    VerifyOptions,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use project::{Project, ProjectError, ScanSettings};

/// Environment variable bounding the per-filtration ideal cache.
pub const CACHE_ENV: &str = "MULTIREES_CACHE_SIZE";

#[derive(Debug, Parser)]
#[command(
    name = "multirees",
    version,
    about = "Hilbert polynomials, reduction vectors and postulation vectors of monomial filtrations"
)]
pub struct Cli {
    /// Also write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads for box scans.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// λ(R/I) of a monomial ideal.
    Colength(IdealArgs),
    /// Integral closure of a monomial ideal.
    Closure(IdealArgs),
    /// Hilbert function over a box.
    Hilbert {
        project: PathBuf,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
    },
    /// Fit and verify the Hilbert polynomial.
    Fit {
        project: PathBuf,
        #[arg(long, value_name = "a,b", value_parser = parse_index)]
        offset: Option<MultiIndex>,
        #[arg(long)]
        margin: Option<i64>,
    },
    /// Postulation vectors visible from a box.
    Postulation {
        project: PathBuf,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
        /// Lower corner of the scanned box (default 0).
        #[arg(long, value_name = "a,b", value_parser = parse_index, allow_hyphen_values = true)]
        from: Option<MultiIndex>,
        #[arg(long)]
        margin: Option<i64>,
        #[arg(long, value_name = "a,b", value_parser = parse_index)]
        offset: Option<MultiIndex>,
    },
    /// Complete reductions: check one point, scan a box, or search.
    #[command(subcommand)]
    Reduction(ReductionCommand),
    /// Postulation ↔ reduction vector correspondence.
    Correspondence {
        project: PathBuf,
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
        #[arg(long)]
        margin: Option<i64>,
        #[arg(long, value_name = "a,b", value_parser = parse_index)]
        offset: Option<MultiIndex>,
    },
    /// Nakayama descent biconditional over a box.
    Nakayama {
        project: PathBuf,
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
        #[arg(long, value_name = "a,b", value_parser = parse_index, allow_hyphen_values = true)]
        from: Option<MultiIndex>,
    },
}

#[derive(Debug, clap::Args)]
pub struct IdealArgs {
    /// An expression such as "X^2 + X*Y + Y^3", or an ideal name with --project.
    pub ideal: String,
    /// Variable names; inferred from the expression when omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[arg(long)]
    pub project: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ReductionCommand {
    /// Test (y)F(n) = F(n+e) at one point.
    Check {
        project: PathBuf,
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long, value_name = "a,b", value_parser = parse_index)]
        at: MultiIndex,
    },
    /// Reduction vectors of a candidate in a box.
    Scan {
        project: PathBuf,
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
    },
    /// Search for monomial complete reductions.
    Search {
        project: PathBuf,
        #[arg(long)]
        degree_bound: Option<u64>,
        /// Maximum number of candidates examined.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long = "box", value_name = "a,b", value_parser = parse_index)]
        hi: Option<MultiIndex>,
    },
}

fn parse_index(text: &str) -> Result<MultiIndex, String> {
    MultiIndex::parse_list(text)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Project(#[from] ProjectError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

/// Machine-readable output of one command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Colength {
        ideal: MonomialIdeal,
        colength: u64,
    },
    Closure {
        ideal: MonomialIdeal,
        closure: MonomialIdeal,
    },
    Hilbert {
        table: HilbertTable,
    },
    Fit {
        polynomial: HilbertPolynomial,
        formula: String,
        mixed_multiplicities: BTreeMap<String, i64>,
        multiplicities_positive: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hilbert_samuel: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        graded_difference: Option<HilbertPolynomial>,
    },
    Postulation {
        polynomial: HilbertPolynomial,
        set: UpwardClosedSet,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        postulation_number: Option<PostulationNumber>,
    },
    ReductionCheck {
        candidate: CompleteReductionCandidate,
        at: MultiIndex,
        holds: bool,
    },
    ReductionScan {
        candidate: CompleteReductionCandidate,
        set: UpwardClosedSet,
    },
    ReductionSearch {
        options: SearchOptions,
        hits: Vec<SearchHit>,
    },
    Correspondence {
        report: Box<CorrespondenceReport>,
    },
    Nakayama {
        report: NakayamaReport,
    },
}

impl Report {
    /// Checks every invariant that can be re-derived from the report.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Report::Colength { ideal, colength: c } => {
                let again = colength(ideal).map_err(|e| e.to_string())?;
                if again != *c {
                    return Err(format!("colength {c} does not match {again}"));
                }
            }
            Report::Closure { ideal, closure } => {
                if !closure.contains(ideal).map_err(|e| e.to_string())? {
                    return Err("closure does not contain the ideal".into());
                }
            }
            Report::Hilbert { table } => table.validate()?,
            Report::Fit {
                polynomial,
                formula,
                mixed_multiplicities,
                multiplicities_positive,
                ..
            } => {
                if &polynomial.formula() != formula {
                    return Err("formula does not match the coefficients".into());
                }
                let top: BTreeMap<String, i64> = polynomial
                    .top_coefficients()
                    .into_iter()
                    .map(|(a, c)| (a.to_key(), c))
                    .collect();
                if &top != mixed_multiplicities {
                    return Err("mixed multiplicities do not match the coefficients".into());
                }
                if *multiplicities_positive != top.values().all(|&c| c > 0) {
                    return Err("positivity flag is inconsistent".into());
                }
            }
            Report::Postulation { set, .. } => set.validate()?,
            Report::ReductionCheck { .. } => {}
            Report::ReductionScan { set, .. } => set.validate()?,
            Report::ReductionSearch { hits, .. } => {
                for h in hits {
                    h.reductions.validate()?;
                    if h.reductions.is_empty() {
                        return Err("search hit without reduction vectors".into());
                    }
                }
            }
            Report::Correspondence { report } => report.validate()?,
            Report::Nakayama { report } => report.validate()?,
        }
        Ok(())
    }
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub report: Report,
    /// The computation found a mathematical violation (exit status 2).
    pub violations: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.violations {
            2
        } else {
            0
        }
    }
}

fn cache_bound() -> Result<Option<usize>, CliError> {
    match std::env::var(CACHE_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::Input(format!(
                "{CACHE_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
    }
}

/// Runs a parsed command line, writing the JSON report if requested.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let outcome = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(compute)?;
            pool.install(|| dispatch(&cli.command))?
        }
        None => dispatch(&cli.command)?,
    };
    if let Some(path) = &cli.json {
        write_json(path, &outcome.report)?;
    }
    Ok(outcome)
}

pub fn write_json(path: &Path, report: &Report) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).map_err(compute)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<(Project, Filtration), CliError> {
    let project = Project::load(path)?;
    let f = project.filtration(cache_bound()?);
    Ok((project, f))
}

fn check_arity(what: &str, n: &MultiIndex, s: usize) -> Result<(), CliError> {
    if n.arity() != s {
        return Err(CliError::Input(format!(
            "--{what} {n} has {} entries but the filtration has {s} gradings",
            n.arity()
        )));
    }
    Ok(())
}

fn box_from(flag: &Option<MultiIndex>, project: &Project) -> Result<MultiIndex, CliError> {
    let hi = flag.clone().unwrap_or_else(|| project.scan.hi.clone());
    check_arity("box", &hi, project.spec.grading_rank())?;
    if hi.has_negative() {
        return Err(CliError::Input(format!("--box {hi} must be non-negative")));
    }
    Ok(hi)
}

/// The named candidate, else the project's first, else the first search hit.
fn resolve_candidate(
    name: &Option<String>,
    project: &Project,
    f: &Filtration,
) -> Result<(String, CompleteReductionCandidate), CliError> {
    if let Some(n) = name {
        return project
            .candidates
            .get(n)
            .map(|c| (n.clone(), c.clone()))
            .ok_or_else(|| CliError::Input(format!("unknown candidate {n:?}")));
    }
    if let Some((n, c)) = project.candidates.iter().next() {
        return Ok((n.clone(), c.clone()));
    }
    let opts = search_options(project, None, None, None);
    let hits = search_complete_reductions(f, &opts).map_err(compute)?;
    hits.into_iter()
        .next()
        .map(|h| ("searched".to_string(), h.candidate))
        .ok_or_else(|| {
            CliError::Input("the project names no candidate and the search found none".into())
        })
}

fn search_options(
    project: &Project,
    degree_bound: Option<u64>,
    cap: Option<usize>,
    hi: Option<MultiIndex>,
) -> SearchOptions {
    SearchOptions {
        degree_bound: degree_bound.unwrap_or(project.scan.degree_bound),
        hi: hi.unwrap_or_else(|| project.scan.hi.clone()),
        cap: cap.unwrap_or(project.scan.cap),
    }
}

fn verify_options(
    project: &Project,
    margin: Option<i64>,
    offset: &Option<MultiIndex>,
) -> Result<VerifyOptions, CliError> {
    let margin = margin.unwrap_or(project.scan.margin);
    if margin < 0 {
        return Err(CliError::Input("--margin must be non-negative".into()));
    }
    let offset = offset.clone().or_else(|| project.scan.offset.clone());
    if let Some(o) = &offset {
        check_arity("offset", o, project.spec.grading_rank())?;
    }
    Ok(VerifyOptions { margin, offset })
}

fn ideal_arg(args: &IdealArgs) -> Result<(MonomialIdeal, Vec<String>), CliError> {
    let input = |e: multirees::IdealError| CliError::Input(format!("{}: {e}", args.ideal));
    if let Some(path) = &args.project {
        let project = Project::load(path)?;
        if let Some(i) = project.ideals.get(&args.ideal) {
            return Ok((i.clone(), project.variables));
        }
        let i = MonomialIdeal::parse_with(&args.ideal, &project.variables).map_err(input)?;
        return Ok((i, project.variables));
    }
    match &args.vars {
        Some(names) => {
            let i = MonomialIdeal::parse_with(&args.ideal, names).map_err(input)?;
            Ok((i, names.clone()))
        }
        None => {
            let i = MonomialIdeal::parse_infer(&args.ideal).map_err(input)?;
            let names = multirees::default_variable_names(i.ambient_dim());
            Ok((i, names))
        }
    }
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Colength(args) => {
            let (ideal, names) = ideal_arg(args)?;
            let c = colength(&ideal).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Outcome {
                text: format!("λ(R/{}) = {c}\n", render::ideal(&ideal, &names)),
                report: Report::Colength { ideal, colength: c },
                violations: false,
            })
        }
        Command::Closure(args) => {
            let (ideal, names) = ideal_arg(args)?;
            let closure = integral_closure(&ideal).map_err(|e| CliError::Input(e.to_string()))?;
            let mut text = format!(
                "closure of {}\n  = {}\n",
                render::ideal(&ideal, &names),
                render::ideal(&closure, &names)
            );
            if closure == ideal {
                text.push_str("the ideal is integrally closed\n");
            }
            Ok(Outcome {
                text,
                report: Report::Closure { ideal, closure },
                violations: false,
            })
        }
        Command::Hilbert { project, hi } => {
            let (project, f) = load(project)?;
            let hi = box_from(hi, &project)?;
            let table = hilbert_function(&f, &GridBox::up_to(hi)).map_err(compute)?;
            Ok(Outcome {
                text: render::hilbert_table(&table),
                report: Report::Hilbert { table },
                violations: false,
            })
        }
        Command::Fit {
            project,
            offset,
            margin,
        } => {
            let (project, f) = load(project)?;
            let opts = verify_options(&project, *margin, offset)?;
            let p = fit_for_box(&f, &project.scan.hi, &opts).map_err(compute)?;
            let top = p.top_coefficients();
            let positive = top.values().all(|&c| c > 0);
            let graded_difference = if f.grading_rank() >= 2 {
                let at = p.fit_record().map(|r| r.offset.clone()).expect("fitted");
                graded_difference_polynomial(&f, &at, opts.margin.max(1)).ok()
            } else {
                None
            };
            let report = Report::Fit {
                formula: p.formula(),
                mixed_multiplicities: top.iter().map(|(a, c)| (a.to_key(), *c)).collect(),
                multiplicities_positive: positive,
                hilbert_samuel: p.hilbert_samuel_coefficients(),
                graded_difference,
                polynomial: p,
            };
            Ok(Outcome {
                text: render::fit(&report),
                report,
                violations: !positive,
            })
        }
        Command::Postulation {
            project,
            hi,
            from,
            margin,
            offset,
        } => {
            let (project, f) = load(project)?;
            let hi = box_from(hi, &project)?;
            let s = f.grading_rank();
            let lo = from.clone().unwrap_or_else(|| MultiIndex::zero(s));
            check_arity("from", &lo, s)?;
            if !hi.dominates(&lo) {
                return Err(CliError::Input(format!(
                    "--from {lo} must lie below --box {hi}"
                )));
            }
            let opts = verify_options(&project, *margin, offset)?;
            let p = fit_for_box(&f, &hi, &opts).map_err(compute)?;
            let set = postulation_set(&f, &p, &GridBox::new(lo, hi.clone()), opts.margin)
                .map_err(compute)?;
            let number = if s == 1 {
                let low = -(f.ambient_dim() as i64) - 2;
                Some(postulation_number(&f, &p, low, hi[0]).map_err(compute)?)
            } else {
                None
            };
            let report = Report::Postulation {
                polynomial: p,
                set,
                postulation_number: number,
            };
            Ok(Outcome {
                text: render::postulation(&report),
                report,
                violations: false,
            })
        }
        Command::Reduction(rc) => reduction(rc),
        Command::Correspondence {
            project,
            candidate,
            hi,
            margin,
            offset,
        } => {
            let (project, f) = load(project)?;
            let hi = box_from(hi, &project)?;
            let (name, cand) = resolve_candidate(candidate, &project, &f)?;
            let opts = verify_options(&project, *margin, offset)?;
            let report =
                multirees::verify_correspondence(&f, &cand, &hi, &opts).map_err(compute)?;
            let violations = report.has_violations();
            Ok(Outcome {
                text: render::correspondence(&report, &name, &project.variables),
                report: Report::Correspondence {
                    report: Box::new(report),
                },
                violations,
            })
        }
        Command::Nakayama {
            project,
            candidate,
            hi,
            from,
        } => {
            let (project, f) = load(project)?;
            let hi = box_from(hi, &project)?;
            let s = f.grading_rank();
            let lo = from.clone().unwrap_or_else(|| MultiIndex::zero(s));
            check_arity("from", &lo, s)?;
            let (name, cand) = resolve_candidate(candidate, &project, &f)?;
            let report =
                nakayama_descent_check(&f, &cand.ys(), &GridBox::new(lo, hi)).map_err(compute)?;
            let violations = !report.is_clean();
            Ok(Outcome {
                text: render::nakayama(&report, &name, &project.variables),
                report: Report::Nakayama { report },
                violations,
            })
        }
    }
}

fn reduction(rc: &ReductionCommand) -> Result<Outcome, CliError> {
    match rc {
        ReductionCommand::Check {
            project,
            candidate,
            at,
        } => {
            let (project, f) = load(project)?;
            check_arity("at", at, f.grading_rank())?;
            let (name, cand) = resolve_candidate(candidate, &project, &f)?;
            let holds = check_complete_reduction_at(&f, &cand, at).map_err(compute)?;
            let text = format!(
                "candidate {name}: y = {}\n(y)·F{at} = F{}: {holds}\n",
                render::ys(&cand, &project.variables),
                &at.plus_part() + &MultiIndex::splat(at.arity(), 1),
            );
            Ok(Outcome {
                text,
                report: Report::ReductionCheck {
                    candidate: cand,
                    at: at.clone(),
                    holds,
                },
                violations: !holds,
            })
        }
        ReductionCommand::Scan {
            project,
            candidate,
            hi,
        } => {
            let (project, f) = load(project)?;
            let hi = box_from(hi, &project)?;
            let (name, cand) = resolve_candidate(candidate, &project, &f)?;
            let set = reduction_vector_set(&f, &cand, &hi).map_err(compute)?;
            let text = format!(
                "candidate {name}: y = {}\nreduction vectors in {}: {}\n",
                render::ys(&cand, &project.variables),
                set.grid,
                render::set(&set),
            );
            let violations = set.is_empty();
            Ok(Outcome {
                text,
                report: Report::ReductionScan {
                    candidate: cand,
                    set,
                },
                violations,
            })
        }
        ReductionCommand::Search {
            project,
            degree_bound,
            cap,
            hi,
        } => {
            let (project, f) = load(project)?;
            let hi = match hi {
                Some(_) => Some(box_from(hi, &project)?),
                None => None,
            };
            let options = search_options(&project, *degree_bound, *cap, hi);
            let hits = search_complete_reductions(&f, &options).map_err(compute)?;
            let text = render::search(&options, &hits, &project.variables);
            let violations = hits.is_empty();
            Ok(Outcome {
                text,
                report: Report::ReductionSearch { options, hits },
                violations,
            })
        }
    }
}

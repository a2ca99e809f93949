use rayon::prelude::*;
use serde::Serialize;

use skein_core::catalog::CATALOG;
use skein_core::combinatorics::{
    verify_identity, verify_partition_identity, CombError, CountingIdentity,
};
use skein_core::link::CrossingId;
use skein_core::lm::{self, LmError};
use skein_core::skein::SkeinEngine;
use skein_core::{LinkDiagram, VerificationReport};

use crate::input::{self, NamedLink};
use crate::Failure;

pub const PARTITION_SUM: &str = "partition-sum";
const M_MAX_LIMIT: u32 = 11;
const N_MAX_LIMIT: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// Low-degree vanishing of the intermediate invariant.
    #[value(name = "prop31")]
    Vanishing,
    /// Coefficient recursion through ordered decompositions, every admissible g.
    #[value(name = "thm13")]
    Recursion,
    /// First coefficient against the components (h-form and p-form).
    #[value(name = "thm14")]
    FirstCoefficient,
    /// Second coefficient against pairs and components (h-form and p-form).
    #[value(name = "thm15")]
    SecondCoefficient,
    /// Counting identities over ordered decompositions and partitions.
    #[value(name = "lemmas")]
    Lemmas,
    /// Skein relation of the intermediate invariant at inter-component crossings.
    #[value(name = "skeinF")]
    FSkein,
    /// Vanishing of the intermediate invariant on a split union.
    #[value(name = "splitF")]
    SplitUnion,
    /// Every link check plus the counting identities.
    #[value(name = "all")]
    All,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub target: Target,
    pub g: Option<u32>,
    pub crossing: Option<CrossingId>,
    pub m_max: u32,
    pub n_max: u32,
    pub lemma: Option<String>,
    pub param: Option<u32>,
    pub max_nodes: u64,
}

/// One output row.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Row {
    Report(VerificationReport),
    Skipped {
        identity: String,
        link: String,
        skipped: bool,
        reason: String,
    },
}

impl Row {
    fn skip(identity: &str, link: &NamedLink, reason: impl Into<String>) -> Self {
        Row::Skipped {
            identity: identity.to_string(),
            link: link.label.clone(),
            skipped: true,
            reason: reason.into(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            Row::Report(r) => r.summary_line(),
            Row::Skipped {
                identity,
                link,
                reason,
                ..
            } => format!("SKIP {identity} [{link}] {reason}"),
        }
    }

    pub fn passed(&self) -> Option<bool> {
        match self {
            Row::Report(r) => Some(r.pass),
            Row::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum LinkCheck {
    Vanishing,
    Recursion(Option<u32>),
    First,
    Second,
    FSkein(Option<CrossingId>),
    Everything,
}

#[derive(Debug, Clone, Copy)]
enum Lemma {
    Counting(CountingIdentity, u32),
    Partition(u32),
}

#[derive(Debug, Clone)]
enum Job {
    Link {
        link: NamedLink,
        check: LinkCheck,
        strict: bool,
    },
    Split(Vec<NamedLink>),
    Lemma(Lemma),
}

fn lm_failure(link: &NamedLink, e: LmError) -> Failure {
    if e.is_resource_limit() {
        Failure::resource(format!("{}: {e}", link.label))
    } else {
        Failure::usage(format!("{}: {e}", link.label))
    }
}

fn comb_failure(e: CombError) -> Failure {
    Failure::usage(e.to_string())
}

fn labelled(mut r: VerificationReport, link: &NamedLink) -> Row {
    r.context.link = Some(link.label.clone());
    Row::Report(r)
}

fn inter_component_crossings(d: &LinkDiagram) -> Vec<CrossingId> {
    d.crossings()
        .filter(|c| !c.is_self_crossing())
        .map(|c| c.id)
        .collect()
}

fn run_link(
    link: &NamedLink,
    check: LinkCheck,
    strict: bool,
    max_nodes: u64,
) -> Result<Vec<Row>, Failure> {
    let mut engine = SkeinEngine::with_max_nodes(max_nodes);
    let d = &link.diagram;
    let count = d.component_count();
    let fail = |e| lm_failure(link, e);
    let precondition = |identity: &str, needed: usize| -> Result<Option<Row>, Failure> {
        if count >= needed {
            Ok(None)
        } else if strict {
            Err(Failure::usage(format!(
                "{}: {identity} needs at least {needed} components, link has {count}",
                link.label
            )))
        } else {
            Ok(Some(Row::skip(
                identity,
                link,
                format!("needs L >= {needed}"),
            )))
        }
    };

    let mut rows = Vec::new();
    match check {
        LinkCheck::Vanishing => {
            if let Some(skip) = precondition("low-degree-vanishing", 2)? {
                return Ok(vec![skip]);
            }
            rows.push(labelled(
                lm::verify_low_degree_vanishing(&mut engine, d).map_err(fail)?,
                link,
            ));
        }
        LinkCheck::Recursion(g) => {
            if let Some(skip) = precondition("coefficient-recursion", 2)? {
                return Ok(vec![skip]);
            }
            let gs: Vec<u32> = match g {
                Some(g) => vec![g],
                None => (0..=count as u32 - 2).collect(),
            };
            for g in gs {
                rows.push(labelled(
                    lm::verify_coefficient_recursion(&mut engine, d, g).map_err(fail)?,
                    link,
                ));
            }
        }
        LinkCheck::First => {
            if let Some(skip) = precondition("first-coefficient", 1)? {
                return Ok(vec![skip]);
            }
            for r in lm::verify_first_coefficient(&mut engine, d).map_err(fail)? {
                rows.push(labelled(r, link));
            }
        }
        LinkCheck::Second => {
            if let Some(skip) = precondition("second-coefficient", 2)? {
                return Ok(vec![skip]);
            }
            for r in lm::verify_second_coefficient(&mut engine, d).map_err(fail)? {
                rows.push(labelled(r, link));
            }
        }
        LinkCheck::FSkein(Some(c)) => {
            rows.push(labelled(
                lm::verify_f_skein(&mut engine, d, c).map_err(fail)?,
                link,
            ));
        }
        LinkCheck::FSkein(None) => {
            let ids = inter_component_crossings(d);
            if ids.is_empty() {
                if strict {
                    return Err(Failure::usage(format!(
                        "{}: no crossing between distinct components",
                        link.label
                    )));
                }
                return Ok(vec![Row::skip(
                    "f-skein",
                    link,
                    "no crossing between distinct components",
                )]);
            }
            for c in ids {
                rows.push(labelled(
                    lm::verify_f_skein(&mut engine, d, c).map_err(fail)?,
                    link,
                ));
            }
        }
        LinkCheck::Everything => {
            for part in [
                LinkCheck::Vanishing,
                LinkCheck::Recursion(None),
                LinkCheck::First,
                LinkCheck::Second,
                LinkCheck::FSkein(None),
            ] {
                rows.extend(run_link(link, part, false, max_nodes)?);
            }
        }
    }
    Ok(rows)
}

fn run_split(pieces: &[NamedLink], max_nodes: u64) -> Result<Vec<Row>, Failure> {
    let mut engine = SkeinEngine::with_max_nodes(max_nodes);
    let diagrams: Vec<LinkDiagram> = pieces.iter().map(|p| p.diagram.clone()).collect();
    let label = pieces
        .iter()
        .map(|p| p.label.as_str())
        .collect::<Vec<_>>()
        .join(" | ");
    let union = NamedLink {
        label,
        diagram: LinkDiagram::empty(),
    };
    let report = lm::verify_split_f(&mut engine, &diagrams).map_err(|e| lm_failure(&union, e))?;
    Ok(vec![labelled(report, &union)])
}

fn run_lemma(lemma: Lemma) -> Result<Vec<Row>, Failure> {
    let reports = match lemma {
        Lemma::Counting(id, param) => verify_identity(id, param),
        Lemma::Partition(m) => verify_partition_identity(m),
    }
    .map_err(comb_failure)?;
    Ok(reports.into_iter().map(Row::Report).collect())
}

fn run_job(job: &Job, max_nodes: u64) -> Result<Vec<Row>, Failure> {
    match job {
        Job::Link {
            link,
            check,
            strict,
        } => run_link(link, *check, *strict, max_nodes),
        Job::Split(pieces) => run_split(pieces, max_nodes),
        Job::Lemma(lemma) => run_lemma(*lemma),
    }
}

fn lemma_jobs(opts: &VerifyOptions) -> Result<Vec<Job>, Failure> {
    if opts.m_max > M_MAX_LIMIT {
        return Err(Failure::usage(format!(
            "--m-max must be at most {M_MAX_LIMIT}"
        )));
    }
    if opts.n_max > N_MAX_LIMIT {
        return Err(Failure::usage(format!(
            "--n-max must be at most {N_MAX_LIMIT}"
        )));
    }
    let ranged = |name: &str| -> Result<Vec<Lemma>, Failure> {
        if name == PARTITION_SUM {
            return Ok(match opts.param {
                Some(m) => vec![Lemma::Partition(m)],
                None => (2..=opts.m_max).map(Lemma::Partition).collect(),
            });
        }
        let id: CountingIdentity = name.parse().map_err(comb_failure)?;
        Ok(match opts.param {
            Some(k) => vec![Lemma::Counting(id, k)],
            None => {
                // The binomial sum is only checked from 2 unless asked for explicitly.
                let (low, high) = match id {
                    CountingIdentity::BinomialSum => (2, opts.n_max),
                    _ => (id.min_parameter(), opts.m_max),
                };
                (low..=high).map(|k| Lemma::Counting(id, k)).collect()
            }
        })
    };
    let names: Vec<&str> = match &opts.lemma {
        Some(name) => vec![name.as_str()],
        None => {
            if opts.param.is_some() {
                return Err(Failure::usage("--param needs --lemma"));
            }
            CountingIdentity::ALL
                .iter()
                .map(|id| id.name())
                .chain([PARTITION_SUM])
                .collect()
        }
    };
    let mut jobs = Vec::new();
    for name in names {
        jobs.extend(ranged(name)?.into_iter().map(Job::Lemma));
    }
    Ok(jobs)
}

fn link_check(opts: &VerifyOptions) -> LinkCheck {
    match opts.target {
        Target::Vanishing => LinkCheck::Vanishing,
        Target::Recursion => LinkCheck::Recursion(opts.g),
        Target::FirstCoefficient => LinkCheck::First,
        Target::SecondCoefficient => LinkCheck::Second,
        Target::FSkein => LinkCheck::FSkein(opts.crossing),
        Target::All | Target::Lemmas | Target::SplitUnion => LinkCheck::Everything,
    }
}

fn split_examples() -> Vec<Vec<NamedLink>> {
    let named = |n: &str| input::from_catalog(n).expect("catalog name");
    vec![
        vec![named("unknot"), named("unknot")],
        vec![named("trefoil"), named("trefoil"), named("unknot")],
        vec![named("figure-eight"), named("hopf+")],
    ]
}

/// Builds the job list; `links` is `None` when no link was given.
fn plan(opts: &VerifyOptions, links: Option<Vec<NamedLink>>) -> Result<Vec<Job>, Failure> {
    match opts.target {
        Target::Lemmas => lemma_jobs(opts),
        Target::SplitUnion => {
            let pieces = match links {
                Some(l) => l,
                None => input::from_stdin()?,
            };
            if pieces.len() < 2 {
                return Err(Failure::usage("splitF needs at least two links"));
            }
            Ok(vec![Job::Split(pieces)])
        }
        Target::All => match links {
            Some(links) => Ok(links
                .into_iter()
                .map(|link| Job::Link {
                    link,
                    check: LinkCheck::Everything,
                    strict: false,
                })
                .collect()),
            None => {
                let mut jobs: Vec<Job> = CATALOG
                    .iter()
                    .map(|e| Job::Link {
                        link: input::from_catalog(e.name).expect("catalog name"),
                        check: LinkCheck::Everything,
                        strict: false,
                    })
                    .collect();
                jobs.extend(split_examples().into_iter().map(Job::Split));
                jobs.extend(lemma_jobs(opts)?);
                Ok(jobs)
            }
        },
        _ => {
            let check = link_check(opts);
            let (links, strict) = match links {
                Some(l) => {
                    let strict = l.len() == 1;
                    (l, strict)
                }
                None => (input::from_stdin()?, false),
            };
            Ok(links
                .into_iter()
                .map(|link| Job::Link {
                    link,
                    check,
                    strict,
                })
                .collect())
        }
    }
}

/// Runs every job, in parallel on the current rayon pool, and returns the
/// rows in job order. The first failing job in that order wins.
pub fn run(
    opts: &VerifyOptions,
    links: Option<Vec<NamedLink>>,
) -> Result<Vec<Row>, (Vec<Row>, Failure)> {
    let jobs = plan(opts, links).map_err(|f| (Vec::new(), f))?;
    let results: Vec<Result<Vec<Row>, Failure>> = jobs
        .par_iter()
        .map(|j| run_job(j, opts.max_nodes))
        .collect();
    let mut rows = Vec::new();
    for r in results {
        match r {
            Ok(mut part) => rows.append(&mut part),
            Err(f) => return Err((rows, f)),
        }
    }
    Ok(rows)
}

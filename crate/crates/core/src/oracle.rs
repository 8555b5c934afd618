//! Brute-force reference implementations for small inputs.
//!
//! Nothing here uses the corpus indexes, the pair index, or the counting
//! formulas of the fast paths; everything is enumerated from the raw paper
//! list by definition.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{AuthorId, Corpus, PaperRecord};
use crate::error::{Error, Result};
use crate::projection::OneModeGraph;
use crate::report::{MetricKind, MetricReport};
use crate::static_metrics::FourPath;
use crate::temporal::{Eligibility, PairObservation, TccOptions, TccReport, WindowSpec};

pub const NODE_CAP: usize = 64;
pub const PAPER_CAP: usize = 32;

fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        return Err(Error::OracleCap { what, actual, cap });
    }
    Ok(())
}

/// `(total, closed)` centered triples `(u, center, v)` with `u < v`.
pub fn brute_two_paths(g: &OneModeGraph) -> Result<(u128, u128)> {
    check_cap("nodes", g.node_count(), NODE_CAP)?;
    let adjacent = |a: AuthorId, b: AuthorId| g.edges().any(|e| e == (a.min(b), a.max(b)));
    let (mut total, mut closed) = (0u128, 0u128);
    for &center in g.nodes() {
        for &u in g.nodes() {
            for &v in g.nodes() {
                if u < v && u != center && v != center && adjacent(u, center) && adjacent(v, center) {
                    total += 1;
                    closed += adjacent(u, v) as u128;
                }
            }
        }
    }
    Ok((total, closed))
}

/// NCC straight from bylines, without going through the projection.
pub fn brute_ncc(corpus: &Corpus) -> Result<MetricReport> {
    check_cap("papers", corpus.len(), PAPER_CAP)?;
    let mut edges: BTreeSet<(AuthorId, AuthorId)> = BTreeSet::new();
    let mut nodes: BTreeSet<AuthorId> = BTreeSet::new();
    for p in corpus.papers() {
        for &u in &p.authors {
            nodes.insert(u);
            for &v in &p.authors {
                if u < v {
                    edges.insert((u, v));
                }
            }
        }
    }
    check_cap("nodes", nodes.len(), NODE_CAP)?;
    let adjacent = |a: AuthorId, b: AuthorId| edges.contains(&(a.min(b), a.max(b)));
    let (mut total, mut closed) = (0u128, 0u128);
    for &c in &nodes {
        for &u in &nodes {
            for &v in &nodes {
                if u < v && u != c && v != c && adjacent(u, c) && adjacent(v, c) {
                    total += 1;
                    closed += adjacent(u, v) as u128;
                }
            }
        }
    }
    Ok(MetricReport::new(MetricKind::Ncc, closed, total))
}

fn has(p: &PaperRecord, a: AuthorId) -> bool {
    p.authors.contains(&a)
}

/// Every 4-path among `papers` (indices are positions in the slice), with
/// its closed flag.
fn enumerate_four_paths(papers: &[&PaperRecord]) -> Vec<(FourPath, bool)> {
    let mut paths = BTreeSet::new();
    for (ia, a) in papers.iter().enumerate() {
        for (ib, b) in papers.iter().enumerate() {
            if ia == ib {
                continue;
            }
            for &x in &a.authors {
                if !has(b, x) {
                    continue;
                }
                for &y in &a.authors {
                    for &z in &b.authors {
                        if y != x && z != x && y != z {
                            paths.insert(FourPath::new(y, ia as u32, x, ib as u32, z));
                        }
                    }
                }
            }
        }
    }
    paths
        .into_iter()
        .map(|p| {
            let (y, z) = p.endpoints;
            let closed = papers.iter().enumerate().any(|(ic, c)| {
                ic as u32 != p.papers.0 && ic as u32 != p.papers.1 && has(c, y) && has(c, z)
            });
            (p, closed)
        })
        .collect()
}

pub fn brute_four_paths(corpus: &Corpus) -> Result<Vec<(FourPath, bool)>> {
    check_cap("papers", corpus.len(), PAPER_CAP)?;
    let papers: Vec<&PaperRecord> = corpus.papers().collect();
    Ok(enumerate_four_paths(&papers))
}

pub fn brute_occ(corpus: &Corpus) -> Result<MetricReport> {
    let paths = brute_four_paths(corpus)?;
    let closed = paths.iter().filter(|(_, c)| *c).count() as u128;
    Ok(MetricReport::new(MetricKind::Occ, closed, paths.len() as u128))
}

/// TCC by definition. `warnings` is left empty; compare the other fields.
pub fn brute_tcc(corpus: &Corpus, window: WindowSpec, options: TccOptions) -> Result<TccReport> {
    check_cap("papers", corpus.len(), PAPER_CAP)?;
    let (from, to) = window.preceding_range();
    let preceding: Vec<&PaperRecord> = corpus.papers().filter(|p| p.year >= from && p.year <= to).collect();
    let target: Vec<&PaperRecord> = corpus.papers().filter(|p| p.year == window.target_year).collect();

    let active = |a: AuthorId| {
        !options.dual_activity || (preceding.iter().any(|p| has(p, a)) && target.iter().any(|p| has(p, a)))
    };

    let mut by_pair: BTreeMap<(AuthorId, AuthorId), (BTreeSet<AuthorId>, bool)> = BTreeMap::new();
    for (path, closed) in enumerate_four_paths(&preceding) {
        let entry = by_pair.entry(path.endpoints).or_default();
        entry.0.insert(path.middle);
        entry.1 |= closed;
    }

    let mut observations = Vec::new();
    for ((y, z), (middles, any_closed)) in by_pair {
        if !active(y) || !active(z) {
            continue;
        }
        let eligible = match options.eligibility {
            Eligibility::Strict => !preceding.iter().any(|p| has(p, y) && has(p, z)),
            Eligibility::Literal => !any_closed,
        };
        if !eligible {
            continue;
        }
        let closing: Vec<&&PaperRecord> = target.iter().filter(|p| has(p, y) && has(p, z)).collect();
        let involvement = closing.iter().any(|p| middles.iter().any(|&m| has(p, m)));
        let mut closing_papers: Vec<String> = closing.iter().map(|p| p.paper_id.clone()).collect();
        closing_papers.sort();
        observations.push(PairObservation {
            pair: (y, z),
            middle_authors: middles.into_iter().collect(),
            closed: !closing_papers.is_empty(),
            closing_papers,
            involvement,
        });
    }

    Ok(TccReport {
        window,
        options,
        observations,
        warnings: Vec::new(),
    })
}

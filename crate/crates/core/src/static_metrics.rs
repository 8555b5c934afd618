//! Snapshot closure coefficients: closed 2-paths over 2-paths on the
//! one-mode projection (NCC), and closed 4-paths over 4-paths on the
//! author–paper bipartite graph (OCC).
//!
//! A 4-path is `Y - A - X - B - Z` with authors `Y, X, Z` pairwise distinct
//! and papers `A != B`. It is counted once per unordered path and is closed
//! when some third paper `C` (not `A` or `B`) contains both `Y` and `Z`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::corpus::{AuthorId, Corpus};
use crate::projection::OneModeGraph;
use crate::report::{MetricKind, MetricReport};

/// One author-ended 4-path in canonical orientation: `endpoints.0 < endpoints.1`
/// and `papers.0` is the paper holding `endpoints.0`. Papers are indices into
/// the corpus the path was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourPath {
    pub endpoints: (AuthorId, AuthorId),
    pub middle: AuthorId,
    pub papers: (u32, u32),
}

impl FourPath {
    /// Canonicalizes `y - a - x - b - z`.
    pub fn new(y: AuthorId, a: u32, x: AuthorId, b: u32, z: AuthorId) -> Self {
        if y <= z {
            Self { endpoints: (y, z), middle: x, papers: (a, b) }
        } else {
            Self { endpoints: (z, y), middle: x, papers: (b, a) }
        }
    }
}

fn choose2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// Number of 2-paths: `sum_v C(deg(v), 2)`.
pub fn count_two_paths(g: &OneModeGraph) -> u128 {
    g.nodes().par_iter().map(|&v| choose2(g.degree(v) as u128)).sum()
}

pub fn count_triangles(g: &OneModeGraph) -> u128 {
    g.nodes()
        .par_iter()
        .map(|&u| {
            let nu = g.neighbors(u);
            let mut local = 0u128;
            for &v in nu.iter().filter(|&&v| v > u) {
                let nv = g.neighbors(v);
                // |{w > v : w in N(u) ∩ N(v)}| by sorted merge
                let (mut i, mut j) = (nu.partition_point(|&w| w <= v), nv.partition_point(|&w| w <= v));
                while i < nu.len() && j < nv.len() {
                    match nu[i].cmp(&nv[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            local += 1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
            local
        })
        .sum()
}

/// Each triangle closes the three 2-paths centered at its corners.
pub fn count_closed_two_paths(g: &OneModeGraph) -> u128 {
    3 * count_triangles(g)
}

pub fn ncc(g: &OneModeGraph) -> MetricReport {
    MetricReport::new(MetricKind::Ncc, count_closed_two_paths(g), count_two_paths(g))
}

/// `(coauthor, number of shared papers)` for every coauthor of `x`.
fn coauthor_multiplicities(corpus: &Corpus, x: AuthorId) -> Vec<(AuthorId, u32)> {
    let mut co: Vec<AuthorId> = corpus
        .papers_of(x)
        .iter()
        .flat_map(|&p| corpus.paper(p).authors.iter().copied())
        .filter(|&a| a != x)
        .collect();
    co.sort_unstable();
    let mut out: Vec<(AuthorId, u32)> = Vec::new();
    for a in co {
        match out.last_mut() {
            Some((b, n)) if *b == a => *n += 1,
            _ => out.push((a, 1)),
        }
    }
    out
}

/// 4-paths with middle `x`. Over unordered paper pairs `{A, B}` of `x` the
/// endpoint choices number `(|A|-1)(|B|-1)`, less the `Y = Z` choices, which
/// are the coauthors shared by both papers. Summed over pairs:
/// `(S1^2 - S2)/2 - sum_Y C(m(x,Y), 2)` with `S1 = sum (|A|-1)`,
/// `S2 = sum (|A|-1)^2` and `m` the number of papers `x` shares with `Y`.
fn four_paths_through(corpus: &Corpus, x: AuthorId) -> u128 {
    let papers = corpus.papers_of(x);
    if papers.len() < 2 {
        return 0;
    }
    let (s1, s2) = papers.iter().fold((0u128, 0u128), |(s1, s2), &p| {
        let k = corpus.paper(p).authors.len() as u128 - 1;
        (s1 + k, s2 + k * k)
    });
    let repeats: u128 = coauthor_multiplicities(corpus, x)
        .into_iter()
        .map(|(_, m)| choose2(m as u128))
        .sum();
    (s1 * s1 - s2) / 2 - repeats
}

/// Number of distinct author-ended 4-paths in `corpus`.
pub fn count_four_paths(corpus: &Corpus) -> u128 {
    (0..corpus.id_bound())
        .into_par_iter()
        .map(|x| four_paths_through(corpus, x))
        .sum()
}

fn pair_key(a: AuthorId, b: AuthorId) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (u64::from(lo) << 32) | u64::from(hi)
}

/// Number of papers each coauthoring pair shares.
#[derive(Debug, Default)]
pub struct PairIndex {
    counts: FxHashMap<u64, u32>,
}

impl PairIndex {
    pub fn build(corpus: &Corpus) -> Self {
        let mut counts = FxHashMap::default();
        for p in corpus.papers() {
            for (i, &u) in p.authors.iter().enumerate() {
                for &v in &p.authors[i + 1..] {
                    *counts.entry(pair_key(u, v)).or_insert(0) += 1;
                }
            }
        }
        Self { counts }
    }

    pub fn shared(&self, a: AuthorId, b: AuthorId) -> u32 {
        self.counts.get(&pair_key(a, b)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

fn closed_four_paths_through(corpus: &Corpus, pairs: &PairIndex, x: AuthorId) -> u128 {
    let papers = corpus.papers_of(x);
    let mut closed = 0u128;
    for (i, &ia) in papers.iter().enumerate() {
        let a = corpus.paper(ia);
        for &ib in &papers[i + 1..] {
            let b = corpus.paper(ib);
            for &y in a.authors.iter().filter(|&&y| y != x) {
                let y_in_b = b.contains(y) as u32;
                for &z in b.authors.iter().filter(|&&z| z != x && z != y) {
                    let shared = pairs.shared(y, z);
                    if shared == 0 {
                        continue;
                    }
                    // papers holding both endpoints, other than A and B
                    if shared > y_in_b + a.contains(z) as u32 {
                        closed += 1;
                    }
                }
            }
        }
    }
    closed
}

/// Number of 4-paths closed by a third paper.
pub fn count_closed_four_paths(corpus: &Corpus) -> u128 {
    let pairs = PairIndex::build(corpus);
    (0..corpus.id_bound())
        .into_par_iter()
        .map(|x| closed_four_paths_through(corpus, &pairs, x))
        .sum()
}

pub fn occ(corpus: &Corpus) -> MetricReport {
    MetricReport::new(MetricKind::Occ, count_closed_four_paths(corpus), count_four_paths(corpus))
}

//! One-mode (author–author) projection of a corpus.

use std::io::Write;

use crate::corpus::{AuthorId, Corpus};
use crate::error::Result;

/// Simple undirected coauthorship graph. Neighbor lists are sorted and
/// duplicate-free; repeated collaboration yields a single edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneModeGraph {
    nodes: Vec<AuthorId>,
    offsets: Vec<usize>,
    neighbors: Vec<AuthorId>,
}

impl OneModeGraph {
    /// Builds a graph directly from an edge list; both orientations are
    /// inserted, self-loops and repeats are dropped. Isolated nodes are
    /// given by `nodes`.
    pub fn from_edges(nodes: impl IntoIterator<Item = AuthorId>, edges: impl IntoIterator<Item = (AuthorId, AuthorId)>) -> Self {
        let mut nodes: Vec<AuthorId> = nodes.into_iter().collect();
        let mut arcs: Vec<(AuthorId, AuthorId)> = Vec::new();
        for (u, v) in edges {
            if u != v {
                arcs.push((u, v));
                arcs.push((v, u));
                nodes.push(u);
                nodes.push(v);
            }
        }
        nodes.sort_unstable();
        nodes.dedup();
        arcs.sort_unstable();
        arcs.dedup();
        let bound = nodes.last().map_or(0, |&n| n as usize + 1);
        let mut offsets = vec![0usize; bound + 1];
        for &(u, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        Self {
            nodes,
            offsets,
            neighbors: arcs.into_iter().map(|(_, v)| v).collect(),
        }
    }

    pub fn nodes(&self) -> &[AuthorId] {
        &self.nodes
    }

    pub fn neighbors(&self, u: AuthorId) -> &[AuthorId] {
        let u = u as usize;
        if u + 1 >= self.offsets.len() {
            return &[];
        }
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: AuthorId) -> usize {
        self.neighbors(u).len()
    }

    pub fn has_edge(&self, u: AuthorId, v: AuthorId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (AuthorId, AuthorId)> + '_ {
        self.nodes
            .iter()
            .flat_map(move |&u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// Author–author projection: an edge for every pair appearing together on
/// at least one byline.
pub fn project_one_mode(corpus: &Corpus) -> OneModeGraph {
    let mut edges = Vec::new();
    for p in corpus.papers() {
        for (i, &u) in p.authors.iter().enumerate() {
            for &v in &p.authors[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    OneModeGraph::from_edges(corpus.author_activity_set(), edges)
}

/// Writes `author1 <TAB> author2` per edge, names ordered within each line
/// and lines sorted lexicographically.
pub fn write_edge_list<W: Write>(graph: &OneModeGraph, corpus: &Corpus, mut out: W) -> Result<()> {
    let names = corpus.authors();
    let mut lines: Vec<(&str, &str)> = graph
        .edges()
        .map(|(u, v)| {
            let (a, b) = (names.name(u), names.name(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    lines.sort_unstable();
    for (a, b) in lines {
        writeln!(out, "{a}\t{b}")?;
    }
    Ok(())
}

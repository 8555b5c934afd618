//! Seeded synthetic coauthorship corpora with a log of planted closures.
//!
//! Each paper's byline is started in one of three ways, tried in order:
//! with probability `closure_prob` from a pair that is currently open
//! (linked through a shared coauthor on two different recent papers, never
//! coauthored); otherwise with probability `repeat_collab_prob` from a
//! past coauthoring pair; otherwise empty. The rest of the byline is drawn
//! uniformly from the author pool, which grows every year.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, RawRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeDistribution {
    Fixed(usize),
    /// `(byline size, weight)` pairs.
    Categorical(Vec<(usize, f64)>),
}

impl SizeDistribution {
    fn max(&self) -> usize {
        match self {
            Self::Fixed(k) => *k,
            Self::Categorical(v) => v.iter().map(|(k, _)| *k).max().unwrap_or(0),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Fixed(k) => *k as f64,
            Self::Categorical(v) => {
                let total: f64 = v.iter().map(|(_, w)| w).sum();
                v.iter().map(|(k, w)| *k as f64 * w).sum::<f64>() / total
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub start_year: i32,
    pub years: u32,
    pub papers_per_year: usize,
    pub authors_per_paper: SizeDistribution,
    pub initial_authors: usize,
    pub author_pool_growth: usize,
    pub repeat_collab_prob: f64,
    pub closure_prob: f64,
    /// How far back closure seeds look for open pairs.
    pub closure_lookback_years: u32,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            start_year: 1995,
            years: 15,
            papers_per_year: 200,
            authors_per_paper: SizeDistribution::Categorical(vec![(2, 0.3), (3, 0.4), (4, 0.3)]),
            initial_authors: 400,
            author_pool_growth: 40,
            repeat_collab_prob: 0.2,
            closure_prob: 0.1,
            closure_lookback_years: 5,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("repeat_collab_prob", self.repeat_collab_prob), ("closure_prob", self.closure_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1], got {p}")));
            }
        }
        match &self.authors_per_paper {
            SizeDistribution::Fixed(0) => return Err(Error::InvalidConfig("byline size must be at least 1".into())),
            SizeDistribution::Categorical(v)
                if v.is_empty() || v.iter().any(|&(k, w)| k == 0 || !(w >= 0.0)) || v.iter().all(|&(_, w)| w == 0.0) =>
            {
                return Err(Error::InvalidConfig("categorical sizes need k >= 1 and non-negative weights".into()))
            }
            _ => {}
        }
        if self.authors_per_paper.max() > self.initial_authors {
            return Err(Error::Infeasible(format!(
                "byline size {} exceeds initial pool of {} authors",
                self.authors_per_paper.max(),
                self.initial_authors
            )));
        }
        Ok(())
    }
}

/// A byline seeded from an open pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedClosure {
    pub paper_id: String,
    pub year: i32,
    pub pair: [String; 2],
    pub middle: String,
}

#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub corpus: Corpus,
    pub planted: Vec<PlantedClosure>,
}

/// Sidecar written next to a generated corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthSidecar {
    pub config: SynthConfig,
    pub papers: usize,
    pub planted: Vec<PlantedClosure>,
}

fn author_name(id: u32) -> String {
    format!("a{id}")
}

fn key(a: u32, b: u32) -> u64 {
    (u64::from(a.min(b)) << 32) | u64::from(a.max(b))
}

struct State {
    rng: ChaCha8Rng,
    bylines: Vec<Vec<u32>>,
    years: Vec<i32>,
    author_papers: Vec<Vec<u32>>,
    coauthored: FxHashSet<u64>,
    pairs: Vec<(u32, u32)>,
}

impl State {
    /// An open pair `(y, z)` with middle `x` from papers in
    /// `[lo, hi)`, or `None` after a bounded number of tries.
    fn open_pair(&mut self, lo: usize, hi: usize) -> Option<(u32, u32, u32)> {
        if hi <= lo {
            return None;
        }
        for _ in 0..16 {
            let a = self.rng.gen_range(lo..hi);
            let by_a = &self.bylines[a];
            let x = by_a[self.rng.gen_range(0..by_a.len())];
            let recent: Vec<u32> = self.author_papers[x as usize]
                .iter()
                .copied()
                .filter(|&p| (p as usize) >= lo && (p as usize) < hi && p as usize != a)
                .collect();
            if recent.is_empty() {
                continue;
            }
            let b = recent[self.rng.gen_range(0..recent.len())] as usize;
            let ys: Vec<u32> = self.bylines[a].iter().copied().filter(|&y| y != x).collect();
            let zs: Vec<u32> = self.bylines[b].iter().copied().filter(|&z| z != x).collect();
            if ys.is_empty() || zs.is_empty() {
                continue;
            }
            let y = ys[self.rng.gen_range(0..ys.len())];
            let z = zs[self.rng.gen_range(0..zs.len())];
            if y != z && !self.coauthored.contains(&key(y, z)) {
                return Some((y, z, x));
            }
        }
        None
    }

    fn record(&mut self, byline: Vec<u32>, year: i32) {
        let idx = self.bylines.len() as u32;
        for (i, &u) in byline.iter().enumerate() {
            if self.author_papers.len() <= u as usize {
                self.author_papers.resize(u as usize + 1, Vec::new());
            }
            self.author_papers[u as usize].push(idx);
            for &v in &byline[i + 1..] {
                if self.coauthored.insert(key(u, v)) {
                    self.pairs.push((u.min(v), u.max(v)));
                }
            }
        }
        self.bylines.push(byline);
        self.years.push(year);
    }
}

pub fn generate_synthetic(cfg: &SynthConfig) -> Result<SynthOutput> {
    cfg.validate()?;
    let mut st = State {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        bylines: Vec::new(),
        years: Vec::new(),
        author_papers: Vec::new(),
        coauthored: FxHashSet::default(),
        pairs: Vec::new(),
    };
    let sizes = match &cfg.authors_per_paper {
        SizeDistribution::Fixed(_) => None,
        SizeDistribution::Categorical(v) => Some((
            v.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            WeightedIndex::new(v.iter().map(|(_, w)| *w)).map_err(|e| Error::InvalidConfig(e.to_string()))?,
        )),
    };
    let mut planted = Vec::new();
    // index of the first paper of each year, for lookback windows
    let mut year_start: Vec<usize> = Vec::new();

    for yi in 0..cfg.years {
        let year = cfg.start_year + yi as i32;
        let pool = (cfg.initial_authors + cfg.author_pool_growth * yi as usize) as u32;
        let this_year = st.bylines.len();
        year_start.push(this_year);
        let lookback = year_start[yi.saturating_sub(cfg.closure_lookback_years) as usize];

        for _ in 0..cfg.papers_per_year {
            let k = match (&cfg.authors_per_paper, &sizes) {
                (SizeDistribution::Fixed(k), _) => *k,
                (_, Some((ks, dist))) => ks[dist.sample(&mut st.rng)],
                _ => unreachable!(),
            };
            let mut byline: Vec<u32> = Vec::with_capacity(k);
            let mut seeded = None;
            if k >= 2 && st.rng.gen_bool(cfg.closure_prob) {
                if let Some((y, z, x)) = st.open_pair(lookback, this_year) {
                    byline.extend([y, z]);
                    seeded = Some((y, z, x));
                }
            }
            if seeded.is_none() && k >= 2 && !st.pairs.is_empty() && st.rng.gen_bool(cfg.repeat_collab_prob) {
                let (u, v) = st.pairs[st.rng.gen_range(0..st.pairs.len())];
                byline.extend([u, v]);
            }
            while byline.len() < k {
                let a = st.rng.gen_range(0..pool);
                if !byline.contains(&a) {
                    byline.push(a);
                }
            }
            if let Some((y, z, x)) = seeded {
                planted.push(PlantedClosure {
                    paper_id: format!("p{}", st.bylines.len()),
                    year,
                    pair: [author_name(y), author_name(z)],
                    middle: author_name(x),
                });
            }
            st.record(byline, year);
        }
    }

    let records = st.bylines.iter().zip(&st.years).enumerate().map(|(i, (b, &y))| RawRecord {
        paper_id: format!("p{i}"),
        year: y,
        authors: b.iter().map(|&a| author_name(a)).collect(),
    });
    Ok(SynthOutput {
        corpus: Corpus::from_records(records)?,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SynthConfig {
        SynthConfig {
            years: 6,
            papers_per_year: 50,
            initial_authors: 120,
            author_pool_growth: 10,
            seed: 7,
            ..Default::default()
        }
    }

    #[test]
    fn deterministic() {
        let a = generate_synthetic(&small()).unwrap();
        let b = generate_synthetic(&small()).unwrap();
        let (mut ba, mut bb) = (Vec::new(), Vec::new());
        a.corpus.write_jsonl(&mut ba).unwrap();
        b.corpus.write_jsonl(&mut bb).unwrap();
        assert_eq!(ba, bb);
        assert_eq!(a.planted, b.planted);
        let other = generate_synthetic(&SynthConfig { seed: 8, ..small() }).unwrap();
        assert_ne!(a.corpus, other.corpus);
    }

    #[test]
    fn shape() {
        let out = generate_synthetic(&small()).unwrap();
        assert_eq!(out.corpus.len(), 300);
        assert_eq!(out.corpus.year_range(), Some((1995, 2000)));
        assert!(out.corpus.papers().all(|p| (2..=4).contains(&p.authors.len())));
        assert!(!out.planted.is_empty());
    }

    #[test]
    fn planted_pairs_were_open() {
        let out = generate_synthetic(&SynthConfig { closure_prob: 0.5, ..small() }).unwrap();
        let c = &out.corpus;
        for p in &out.planted {
            let (y, z) = (c.authors().id(&p.pair[0]).unwrap(), c.authors().id(&p.pair[1]).unwrap());
            let idx: u32 = p.paper_id[1..].parse().unwrap();
            let earlier = c.papers_of(y).iter().filter(|&&i| i < idx).any(|&i| c.paper(i).contains(z));
            assert!(!earlier, "{p:?} coauthored before");
            assert!(c.paper(idx).contains(y) && c.paper(idx).contains(z));
        }
    }

    #[test]
    fn infeasible_and_invalid() {
        let cfg = SynthConfig {
            initial_authors: 3,
            authors_per_paper: SizeDistribution::Fixed(4),
            ..small()
        };
        assert!(matches!(generate_synthetic(&cfg), Err(Error::Infeasible(_))));
        let cfg = SynthConfig { closure_prob: 1.5, ..small() };
        assert!(matches!(generate_synthetic(&cfg), Err(Error::InvalidConfig(_))));
    }
}

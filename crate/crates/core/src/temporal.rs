//! Over-time closure: author pairs linked by an open 4-path during a
//! preceding window, and whether they coauthor in the target year.
//!
//! A pair is counted once no matter how many 4-paths connect it. Its
//! *middle authors* are every `X` on some `Y - A - X - B - Z` path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{AuthorId, AuthorTable, Corpus};
use crate::error::{Error, Result};
use crate::report::{exact_ratio, format_exact, to_decimal, Exact, MetricKind, MetricReport};
use crate::static_metrics::PairIndex;

/// Target year plus the `preceding_len` years immediately before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub target_year: i32,
    pub preceding_len: u32,
}

impl WindowSpec {
    pub const DEFAULT_LEN: u32 = 5;

    pub fn new(target_year: i32, preceding_len: u32) -> Result<Self> {
        if preceding_len == 0 {
            return Err(Error::InvalidConfig("preceding window length must be at least 1".into()));
        }
        Ok(Self {
            target_year,
            preceding_len,
        })
    }

    /// Inclusive `(first, last)` years of the preceding window.
    pub fn preceding_range(&self) -> (i32, i32) {
        (self.target_year - self.preceding_len as i32, self.target_year - 1)
    }
}

/// Which pairs count as open at the end of the preceding window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eligibility {
    /// The pair shares no paper in the preceding window.
    #[default]
    Strict,
    /// No 4-path between the pair is closed in the preceding window. A pair
    /// whose only joint papers lie on its own paths stays eligible.
    Literal,
}

impl FromStr for Eligibility {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "literal" => Ok(Self::Literal),
            other => Err(Error::InvalidConfig(format!("unknown eligibility mode {other:?}"))),
        }
    }
}

impl fmt::Display for Eligibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TccOptions {
    pub eligibility: Eligibility,
    /// Restrict pair endpoints to authors active in both the preceding
    /// window and the target year.
    pub dual_activity: bool,
}

impl Default for TccOptions {
    fn default() -> Self {
        Self {
            eligibility: Eligibility::Strict,
            dual_activity: true,
        }
    }
}

/// One eligible pair. `pair.0 < pair.1`; `middle_authors` is sorted and
/// never empty; `closing_papers` are target-year paper ids, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairObservation {
    pub pair: (AuthorId, AuthorId),
    pub middle_authors: Vec<AuthorId>,
    pub closed: bool,
    pub closing_papers: Vec<String>,
    pub involvement: bool,
}

impl PairObservation {
    pub fn shared_count(&self) -> usize {
        self.middle_authors.len()
    }

    pub fn to_record(&self, names: &AuthorTable) -> ObservationRecord {
        ObservationRecord {
            pair: [names.name(self.pair.0).to_owned(), names.name(self.pair.1).to_owned()],
            middle_authors: self.middle_authors.iter().map(|&a| names.name(a).to_owned()).collect(),
            closed: self.closed,
            closing_papers: self.closing_papers.clone(),
            involvement: self.involvement,
        }
    }
}

/// Line format of the `--details` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationRecord {
    pub pair: [String; 2],
    pub middle_authors: Vec<String>,
    pub closed: bool,
    pub closing_papers: Vec<String>,
    pub involvement: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TccReport {
    pub window: WindowSpec,
    pub options: TccOptions,
    /// Sorted by pair.
    pub observations: Vec<PairObservation>,
    pub warnings: Vec<String>,
}

impl TccReport {
    pub fn eligible_pairs(&self) -> u128 {
        self.observations.len() as u128
    }

    pub fn closed_pairs(&self) -> u128 {
        self.observations.iter().filter(|o| o.closed).count() as u128
    }

    pub fn dual_activity_filtered(&self) -> bool {
        self.options.dual_activity
    }

    pub fn metric(&self) -> MetricReport {
        MetricReport::new(MetricKind::Tcc, self.closed_pairs(), self.eligible_pairs())
    }

    pub fn ratio(&self) -> Option<Exact> {
        self.metric().ratio()
    }

    pub fn summary(&self) -> TccSummary {
        let m = self.metric();
        let (from, to) = self.window.preceding_range();
        TccSummary {
            metric: MetricKind::Tcc,
            target_year: self.window.target_year,
            window: self.window.preceding_len,
            preceding_from: from,
            preceding_to: to,
            eligibility: self.options.eligibility,
            dual_activity: self.options.dual_activity,
            numerator: m.numerator,
            denominator: m.denominator,
            ratio: m.decimal(),
            exact: m.ratio().as_ref().map(format_exact),
            defined: m.defined(),
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TccSummary {
    pub metric: MetricKind,
    pub target_year: i32,
    pub window: u32,
    pub preceding_from: i32,
    pub preceding_to: i32,
    pub eligibility: Eligibility,
    pub dual_activity: bool,
    pub numerator: u128,
    pub denominator: u128,
    pub ratio: Option<f64>,
    pub exact: Option<String>,
    pub defined: bool,
    pub warnings: Vec<String>,
}

/// Coauthors of `x` with the number of papers shared and, when that number
/// is one, the shared paper.
fn coauthors_with_paper(preceding: &Corpus, x: AuthorId, active: Option<&[bool]>) -> Vec<(AuthorId, u32, u32)> {
    let mut incid: Vec<(AuthorId, u32)> = preceding
        .papers_of(x)
        .iter()
        .flat_map(|&p| preceding.paper(p).authors.iter().map(move |&a| (a, p)))
        .filter(|&(a, _)| a != x && active.is_none_or(|f| f[a as usize]))
        .collect();
    incid.sort_unstable();
    let mut out: Vec<(AuthorId, u32, u32)> = Vec::new();
    for (a, p) in incid {
        match out.last_mut() {
            Some((b, m, _)) if *b == a => *m += 1,
            _ => out.push((a, 1, p)),
        }
    }
    out
}

/// `(y, z, x)` for every pair `y < z` connected through middle `x`.
fn middle_triples(preceding: &Corpus, x: AuthorId, active: Option<&[bool]>) -> Vec<(AuthorId, AuthorId, AuthorId)> {
    if preceding.papers_of(x).len() < 2 {
        return Vec::new();
    }
    let co = coauthors_with_paper(preceding, x, active);
    let mut out = Vec::new();
    for (i, &(y, my, py)) in co.iter().enumerate() {
        for &(z, mz, pz) in &co[i + 1..] {
            // the only way to lack distinct papers A != B
            if my == 1 && mz == 1 && py == pz {
                continue;
            }
            out.push((y, z, x));
        }
    }
    out
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn sorted_papers(corpus: &Corpus, a: AuthorId) -> Vec<u32> {
    let mut v = corpus.papers_of(a).to_vec();
    v.sort_unstable();
    v
}

/// Literal-mode test for a pair with one or two joint papers: is some
/// 4-path between them closed by a joint paper off the path?
fn has_closed_path(preceding: &Corpus, y: AuthorId, z: AuthorId, middles: &[AuthorId]) -> bool {
    let (py, pz) = (sorted_papers(preceding, y), sorted_papers(preceding, z));
    let joint = sorted_intersection(&py, &pz);
    middles.iter().any(|&x| {
        let px = sorted_papers(preceding, x);
        let (with_y, with_z) = (sorted_intersection(&px, &py), sorted_intersection(&px, &pz));
        with_y.iter().any(|&a| {
            with_z
                .iter()
                .any(|&b| a != b && joint.iter().any(|&c| c != a && c != b))
        })
    })
}

fn to_mask(bound: AuthorId, set: &BTreeSet<AuthorId>) -> Vec<bool> {
    let mut mask = vec![false; bound as usize];
    for &a in set {
        if (a as usize) < mask.len() {
            mask[a as usize] = true;
        }
    }
    mask
}

/// Pairs linked by at least one 4-path in `preceding` that are still open
/// under `eligibility`, restricted to endpoints in `active` when given.
/// Closure fields are left unset.
pub fn open_pairs(preceding: &Corpus, active: Option<&BTreeSet<AuthorId>>, eligibility: Eligibility) -> Vec<PairObservation> {
    let mask = active.map(|s| to_mask(preceding.id_bound(), s));
    let mask = mask.as_deref();
    let mut triples: Vec<(AuthorId, AuthorId, AuthorId)> = (0..preceding.id_bound())
        .into_par_iter()
        .flat_map_iter(|x| middle_triples(preceding, x, mask))
        .collect();
    triples.par_sort_unstable();

    let mut groups: Vec<((AuthorId, AuthorId), Vec<AuthorId>)> = Vec::new();
    for (y, z, x) in triples {
        match groups.last_mut() {
            Some((pair, mids)) if *pair == (y, z) => mids.push(x),
            _ => groups.push(((y, z), vec![x])),
        }
    }

    let pairs = PairIndex::build(preceding);
    groups
        .into_par_iter()
        .filter(|((y, z), mids)| match (eligibility, pairs.shared(*y, *z)) {
            (_, 0) => true,
            (Eligibility::Strict, _) => false,
            (Eligibility::Literal, n) if n >= 3 => false,
            (Eligibility::Literal, _) => !has_closed_path(preceding, *y, *z, mids),
        })
        .map(|(pair, middle_authors)| PairObservation {
            pair,
            middle_authors,
            closed: false,
            closing_papers: Vec::new(),
            involvement: false,
        })
        .collect()
}

fn coverage_warnings(corpus: &Corpus, window: &WindowSpec) -> Vec<String> {
    let (from, _) = window.preceding_range();
    match corpus.year_range() {
        None => vec!["corpus has no papers".to_owned()],
        Some((lo, hi)) => {
            let mut w = Vec::new();
            if from < lo {
                w.push(format!("preceding window starts in {from}, before corpus coverage ({lo})"));
            }
            if window.target_year > hi {
                w.push(format!("target year {} is after corpus coverage ({hi})", window.target_year));
            }
            w
        }
    }
}

pub fn tcc(corpus: &Corpus, window: WindowSpec, options: TccOptions) -> Result<TccReport> {
    let (from, to) = window.preceding_range();
    let preceding = corpus.slice_window(from, to)?;
    let target = corpus.slice_window(window.target_year, window.target_year)?;

    let active = options.dual_activity.then(|| {
        let p: BTreeSet<AuthorId> = preceding.author_activity_set().into_iter().collect();
        target
            .author_activity_set()
            .into_iter()
            .filter(|a| p.contains(a))
            .collect::<BTreeSet<_>>()
    });

    let mut observations = open_pairs(&preceding, active.as_ref(), options.eligibility);
    observations.par_iter_mut().for_each(|obs| {
        let (y, z) = obs.pair;
        let joint = sorted_intersection(&sorted_papers(&target, y), &sorted_papers(&target, z));
        if joint.is_empty() {
            return;
        }
        obs.closed = true;
        obs.involvement = joint.iter().any(|&p| {
            let authors = &target.paper(p).authors;
            obs.middle_authors.iter().any(|m| authors.binary_search(m).is_ok())
        });
        let mut ids: Vec<String> = joint.iter().map(|&p| target.paper(p).paper_id.clone()).collect();
        ids.sort_unstable();
        obs.closing_papers = ids;
    });

    Ok(TccReport {
        window,
        options,
        observations,
        warnings: coverage_warnings(corpus, &window),
    })
}

/// One report per preceding-window length, all for the same target year.
pub fn window_sweep(corpus: &Corpus, target_year: i32, lengths: &[u32], options: TccOptions) -> Result<Vec<TccReport>> {
    if lengths.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one window length".into()));
    }
    lengths
        .iter()
        .map(|&len| tcc(corpus, WindowSpec::new(target_year, len)?, options))
        .collect()
}

/// Closed pairs, and closed pairs whose closing papers include a middle
/// author.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Involvement {
    pub closed_pairs: u128,
    pub involved_pairs: u128,
}

impl Involvement {
    pub fn of(report: &TccReport) -> Self {
        let closed = report.observations.iter().filter(|o| o.closed);
        Self {
            closed_pairs: closed.clone().count() as u128,
            involved_pairs: closed.filter(|o| o.involvement).count() as u128,
        }
    }

    pub fn ratio(&self) -> Option<Exact> {
        exact_ratio(self.involved_pairs, self.closed_pairs)
    }
}

/// Share of closed pairs closed with a shared coauthor on a closing paper;
/// `None` when nothing closed.
pub fn involvement_ratio(report: &TccReport) -> Option<Exact> {
    Involvement::of(report).ratio()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SharedBucket {
    pub eligible: u128,
    pub closed: u128,
}

impl SharedBucket {
    pub fn ratio(&self) -> Option<Exact> {
        exact_ratio(self.closed, self.eligible)
    }
}

/// Observations bucketed by number of shared collaborators.
pub fn closure_by_shared_count(report: &TccReport) -> BTreeMap<usize, SharedBucket> {
    let mut out: BTreeMap<usize, SharedBucket> = BTreeMap::new();
    for o in &report.observations {
        let b = out.entry(o.shared_count()).or_default();
        b.eligible += 1;
        b.closed += o.closed as u128;
    }
    out
}

/// Authors active in the target year, in the preceding window, and in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub target_authors: u128,
    pub preceding_authors: u128,
    pub shared_authors: u128,
}

impl Overlap {
    /// shared / target-year authors
    pub fn ratio_target(&self) -> Option<Exact> {
        exact_ratio(self.shared_authors, self.target_authors)
    }

    /// shared / preceding-window authors
    pub fn ratio_preceding(&self) -> Option<Exact> {
        exact_ratio(self.shared_authors, self.preceding_authors)
    }

    pub fn to_record(&self) -> OverlapRecord {
        let fmt = |r: Option<Exact>| (r.as_ref().map(to_decimal), r.as_ref().map(format_exact));
        let (ratio_target, exact_target) = fmt(self.ratio_target());
        let (ratio_preceding, exact_preceding) = fmt(self.ratio_preceding());
        OverlapRecord {
            target_authors: self.target_authors,
            preceding_authors: self.preceding_authors,
            shared_authors: self.shared_authors,
            ratio_target,
            exact_target,
            ratio_preceding,
            exact_preceding,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapRecord {
    pub target_authors: u128,
    pub preceding_authors: u128,
    pub shared_authors: u128,
    pub ratio_target: Option<f64>,
    pub exact_target: Option<String>,
    pub ratio_preceding: Option<f64>,
    pub exact_preceding: Option<String>,
}

pub fn overlap_ratios(corpus: &Corpus, window: WindowSpec) -> Result<Overlap> {
    let (from, to) = window.preceding_range();
    let preceding: BTreeSet<AuthorId> = corpus.slice_window(from, to)?.author_activity_set().into_iter().collect();
    let target = corpus.slice_window(window.target_year, window.target_year)?.author_activity_set();
    let shared = target.iter().filter(|a| preceding.contains(a)).count();
    Ok(Overlap {
        target_authors: target.len() as u128,
        preceding_authors: preceding.len() as u128,
        shared_authors: shared as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::RawRecord;

    fn corpus(recs: &[(&str, i32, &[&str])]) -> Corpus {
        Corpus::from_records(recs.iter().map(|(id, y, a)| RawRecord::new(id, *y, a.iter().copied()))).unwrap()
    }

    fn names(c: &Corpus, ids: &[AuthorId]) -> Vec<String> {
        c.author_names(ids)
    }

    fn pair_names(c: &Corpus, o: &PairObservation) -> (String, String) {
        let mut v = names(c, &[o.pair.0, o.pair.1]);
        v.sort();
        (v[0].clone(), v[1].clone())
    }

    fn five_papers() -> Corpus {
        corpus(&[
            ("A", 2004, &["X", "Y"]),
            ("B", 2005, &["X", "Y"]),
            ("C", 2006, &["X", "Z"]),
            ("D", 2008, &["W", "Z"]),
            ("E", 2009, &["Y", "Z"]),
        ])
    }

    const OFF: TccOptions = TccOptions {
        eligibility: Eligibility::Strict,
        dual_activity: false,
    };

    #[test]
    fn window_range() {
        assert_eq!(WindowSpec::new(2009, 5).unwrap().preceding_range(), (2004, 2008));
        assert!(WindowSpec::new(2009, 0).is_err());
    }

    #[test]
    fn open_pairs_two_middles() {
        let c = corpus(&[("A", 2000, &["W", "X", "Y"]), ("B", 2000, &["W", "X", "Z"]), ("C", 2000, &["X", "Y"])]);
        let obs = open_pairs(&c, None, Eligibility::Strict);
        assert_eq!(obs.len(), 1);
        assert_eq!(pair_names(&c, &obs[0]), ("Y".into(), "Z".into()));
        assert_eq!(names(&c, &obs[0].middle_authors), ["W", "X"]);
    }

    #[test]
    fn open_pairs_five_papers() {
        let c = five_papers().slice_window(2004, 2008).unwrap();
        let mut got: Vec<_> = open_pairs(&c, None, Eligibility::Strict)
            .iter()
            .map(|o| (pair_names(&c, o), names(&c, &o.middle_authors)))
            .collect();
        got.sort();
        assert_eq!(
            got,
            [
                (("W".into(), "X".into()), vec!["Z".to_owned()]),
                (("Y".into(), "Z".into()), vec!["X".to_owned()]),
            ]
        );
    }

    #[test]
    fn coauthored_pairs_are_not_open() {
        let c = corpus(&[("A", 2000, &["X", "Y"]), ("B", 2000, &["X", "Z"]), ("C", 2000, &["Y", "Z"])]);
        assert!(open_pairs(&c, None, Eligibility::Strict).is_empty());
        // every Y-Z path is closed by C, so the literal reading drops it too
        assert!(open_pairs(&c, None, Eligibility::Literal).is_empty());
    }

    #[test]
    fn strict_and_literal_differ_on_path_paper() {
        // Y and Z share only A, which lies on their one path Y-A-X-B-Z.
        let c = corpus(&[("A", 2000, &["X", "Y", "Z"]), ("B", 2000, &["X", "Z"])]);
        assert!(open_pairs(&c, None, Eligibility::Strict).is_empty());
        let lit = open_pairs(&c, None, Eligibility::Literal);
        let got: Vec<_> = lit.iter().map(|o| pair_names(&c, o)).collect();
        // X-Y also has the open path Y-A-Z-B-X
        assert_eq!(got, [("X".into(), "Y".into()), ("Y".into(), "Z".into())]);
    }

    #[test]
    fn tcc_five_papers() {
        let c = five_papers();
        let w = WindowSpec::new(2009, 5).unwrap();
        let off = tcc(&c, w, OFF).unwrap();
        assert_eq!(off.ratio(), exact_ratio(1, 2));
        let on = tcc(&c, w, TccOptions::default()).unwrap();
        assert_eq!(on.ratio(), exact_ratio(1, 1));
        assert!(on.dual_activity_filtered());
        assert_eq!(on.observations[0].closing_papers, ["E"]);
        assert!(!on.observations[0].involvement);
    }

    #[test]
    fn tcc_nothing_closes() {
        let c = corpus(&[("A", 2007, &["X", "Y"]), ("B", 2008, &["X", "Z"])]);
        let r = tcc(&c, WindowSpec::new(2009, 5).unwrap(), OFF).unwrap();
        assert_eq!((r.closed_pairs(), r.eligible_pairs()), (0, 1));
        assert_eq!(r.ratio(), exact_ratio(0, 1));
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn sweep() {
        // the pair's only 4-path forms three years before the target
        let c = corpus(&[
            ("A", 2006, &["X", "Y"]),
            ("B", 2006, &["X", "Z"]),
            ("F", 2008, &["Y", "Q"]),
            ("G", 2008, &["Z", "R"]),
            ("E", 2009, &["Y", "Z"]),
        ]);
        let reports = window_sweep(&c, 2009, &[1, 2, 3, 4, 5], OFF).unwrap();
        let yz = |r: &TccReport| r.observations.iter().any(|o| pair_names(&c, o) == ("Y".into(), "Z".into()));
        let got: Vec<bool> = reports.iter().map(yz).collect();
        assert_eq!(got, [false, false, true, true, true]);

        let single = window_sweep(&c, 2009, &[5], TccOptions::default()).unwrap();
        assert_eq!(single[0], tcc(&c, WindowSpec::new(2009, 5).unwrap(), TccOptions::default()).unwrap());
        assert!(window_sweep(&c, 2009, &[], OFF).is_err());

        let late = corpus(&[("E", 2009, &["Y", "Z"])]);
        assert!(window_sweep(&late, 2009, &[1, 3, 5], OFF).unwrap().iter().all(|r| !r.metric().defined()));
    }

    #[test]
    fn involvement_cases() {
        let case1 = corpus(&[("A", 2005, &["X", "Y"]), ("B", 2006, &["X", "Z"]), ("C", 2009, &["Y", "Z"])]);
        let case2 = corpus(&[("A", 2005, &["X", "Y"]), ("B", 2006, &["X", "Z"]), ("D", 2009, &["X", "Y", "Z"])]);
        let w = WindowSpec::new(2009, 5).unwrap();
        let r1 = tcc(&case1, w, TccOptions::default()).unwrap();
        let r2 = tcc(&case2, w, TccOptions::default()).unwrap();
        assert_eq!(involvement_ratio(&r1), exact_ratio(0, 1));
        assert_eq!(involvement_ratio(&r2), exact_ratio(1, 1));

        let both = corpus(&[
            ("A", 2005, &["X", "Y"]),
            ("B", 2006, &["X", "Z"]),
            ("C", 2009, &["Y", "Z"]),
            ("A2", 2005, &["x", "y"]),
            ("B2", 2006, &["x", "z"]),
            ("D2", 2009, &["x", "y", "z"]),
        ]);
        let r = tcc(&both, w, TccOptions::default()).unwrap();
        assert_eq!(involvement_ratio(&r), exact_ratio(1, 2));

        let none = corpus(&[("A", 2005, &["X", "Y"]), ("B", 2006, &["X", "Z"])]);
        assert_eq!(involvement_ratio(&tcc(&none, w, OFF).unwrap()), None);
    }

    #[test]
    fn shared_count_buckets() {
        let r = tcc(&five_papers(), WindowSpec::new(2009, 5).unwrap(), OFF).unwrap();
        let b = closure_by_shared_count(&r);
        assert_eq!(b.len(), 1);
        assert_eq!(b[&1], SharedBucket { eligible: 2, closed: 1 });
        assert_eq!(b[&1].ratio(), exact_ratio(1, 2));

        let c = corpus(&[
            ("A", 2005, &["W", "X", "Y"]),
            ("B", 2006, &["W", "X", "Z"]),
            ("C", 2007, &["X", "Y"]),
            ("T", 2009, &["Y", "Z"]),
        ]);
        let b = closure_by_shared_count(&tcc(&c, WindowSpec::new(2009, 5).unwrap(), OFF).unwrap());
        assert_eq!(b.into_iter().collect::<Vec<_>>(), [(2, SharedBucket { eligible: 1, closed: 1 })]);

        let empty = tcc(&Corpus::empty(), WindowSpec::new(2009, 5).unwrap(), OFF).unwrap();
        assert!(closure_by_shared_count(&empty).is_empty());
    }

    #[test]
    fn overlap() {
        let o = overlap_ratios(&five_papers(), WindowSpec::new(2009, 5).unwrap()).unwrap();
        assert_eq!(o.ratio_target(), exact_ratio(2, 2));
        assert_eq!(o.ratio_preceding(), exact_ratio(2, 4));

        let disjoint = corpus(&[("A", 2008, &["a", "b"]), ("B", 2009, &["c", "d"])]);
        let o = overlap_ratios(&disjoint, WindowSpec::new(2009, 1).unwrap()).unwrap();
        assert_eq!((o.ratio_target(), o.ratio_preceding()), (exact_ratio(0, 2), exact_ratio(0, 2)));

        let same = corpus(&[("A", 2008, &["a", "b"]), ("B", 2009, &["b", "a"])]);
        let o = overlap_ratios(&same, WindowSpec::new(2009, 1).unwrap()).unwrap();
        assert_eq!((o.ratio_target(), o.ratio_preceding()), (exact_ratio(1, 1), exact_ratio(1, 1)));

        let o = overlap_ratios(&Corpus::empty(), WindowSpec::new(2009, 1).unwrap()).unwrap();
        assert_eq!((o.ratio_target(), o.ratio_preceding()), (None, None));
    }
}

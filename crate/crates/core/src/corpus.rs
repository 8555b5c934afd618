//! Bipartite author–paper records: ingestion, validation, filtering and
//! time-window slicing.
//!
//! Author names are interned once into an [`AuthorTable`] that every slice
//! of a corpus shares, so author ids are comparable across windows.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type AuthorId = u32;

/// Interned author names. Ids are assigned in order of first appearance.
#[derive(Debug, Default, Clone)]
pub struct AuthorTable {
    names: Vec<String>,
    ids: FxHashMap<String, AuthorId>,
}

impl AuthorTable {
    pub fn intern(&mut self, name: &str) -> AuthorId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = AuthorId::try_from(self.names.len()).expect("more than u32::MAX authors");
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    pub fn name(&self, id: AuthorId) -> &str {
        &self.names[id as usize]
    }

    pub fn id(&self, name: &str) -> Option<AuthorId> {
        self.ids.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// One publication. `authors` is sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub paper_id: String,
    pub year: i32,
    pub authors: Vec<AuthorId>,
}

impl PaperRecord {
    pub fn contains(&self, author: AuthorId) -> bool {
        self.authors.binary_search(&author).is_ok()
    }
}

/// An un-interned record as it appears in an input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub paper_id: String,
    pub year: i32,
    pub authors: Vec<String>,
}

impl RawRecord {
    pub fn new<S: Into<String>>(paper_id: &str, year: i32, authors: impl IntoIterator<Item = S>) -> Self {
        Self {
            paper_id: paper_id.to_owned(),
            year,
            authors: authors.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Tsv,
}

impl Format {
    /// `.tsv`/`.tab` select TSV; anything else is read as JSONL.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") | Some("tab") => Format::Tsv,
            _ => Format::Jsonl,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub papers: usize,
    pub authors: usize,
    pub min_year: Option<i32>,
    pub max_year: Option<i32>,
    /// authors-per-paper → number of papers
    pub authors_per_paper: BTreeMap<usize, usize>,
}

/// Immutable, indexed collection of papers.
#[derive(Debug, Clone)]
pub struct Corpus {
    table: Arc<AuthorTable>,
    papers: Vec<Arc<PaperRecord>>,
    // CSR over the whole author table: papers of author `a` are
    // author_papers[author_offsets[a]..author_offsets[a + 1]], chronological.
    author_offsets: Vec<u32>,
    author_papers: Vec<u32>,
    year_index: BTreeMap<i32, Vec<u32>>,
    active_authors: usize,
    duplicate_author_warnings: usize,
    filter_report: Option<FilterReport>,
}

impl Corpus {
    pub fn empty() -> Self {
        Self::build(Arc::new(AuthorTable::default()), Vec::new(), 0)
    }

    /// Interns and indexes `records`, in order. Duplicate authors within a
    /// byline are collapsed and counted; a repeated `paper_id` is an error.
    pub fn from_records(records: impl IntoIterator<Item = RawRecord>) -> Result<Self> {
        let mut builder = CorpusBuilder::default();
        for (i, rec) in records.into_iter().enumerate() {
            builder.push(rec, i + 1)?;
        }
        Ok(builder.finish())
    }

    fn build(table: Arc<AuthorTable>, papers: Vec<Arc<PaperRecord>>, duplicate_author_warnings: usize) -> Self {
        let mut year_index: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (i, p) in papers.iter().enumerate() {
            year_index.entry(p.year).or_default().push(i as u32);
        }

        let n = table.len();
        let mut counts = vec![0u32; n + 1];
        for p in &papers {
            for &a in &p.authors {
                counts[a as usize + 1] += 1;
            }
        }
        let active_authors = counts.iter().skip(1).filter(|&&c| c > 0).count();
        for i in 1..=n {
            counts[i] += counts[i - 1];
        }
        let author_offsets = counts;
        let mut cursor = author_offsets.clone();
        let mut author_papers = vec![0u32; *author_offsets.last().unwrap_or(&0) as usize];
        for idx in year_index.values().flatten() {
            for &a in &papers[*idx as usize].authors {
                let slot = &mut cursor[a as usize];
                author_papers[*slot as usize] = *idx;
                *slot += 1;
            }
        }

        Self {
            table,
            papers,
            author_offsets,
            author_papers,
            year_index,
            active_authors,
            duplicate_author_warnings,
            filter_report: None,
        }
    }

    /// A new corpus over the same author table holding the papers selected
    /// by `keep`, in their original order.
    fn select(&self, mut keep: impl FnMut(&PaperRecord) -> bool) -> Self {
        let papers = self.papers.iter().filter(|p| keep(p)).cloned().collect();
        Self::build(self.table.clone(), papers, self.duplicate_author_warnings)
    }

    pub fn authors(&self) -> &AuthorTable {
        &self.table
    }

    pub fn author_table(&self) -> &Arc<AuthorTable> {
        &self.table
    }

    pub fn papers(&self) -> impl ExactSizeIterator<Item = &PaperRecord> + '_ {
        self.papers.iter().map(|p| p.as_ref())
    }

    pub fn paper(&self, idx: u32) -> &PaperRecord {
        &self.papers[idx as usize]
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    /// Paper indices of `author`, chronologically ordered. Empty for ids
    /// that are not active in this corpus.
    pub fn papers_of(&self, author: AuthorId) -> &[u32] {
        let a = author as usize;
        if a + 1 >= self.author_offsets.len() {
            return &[];
        }
        let (lo, hi) = (self.author_offsets[a] as usize, self.author_offsets[a + 1] as usize);
        &self.author_papers[lo..hi]
    }

    pub fn papers_in_year(&self, year: i32) -> &[u32] {
        self.year_index.get(&year).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Upper bound (exclusive) on author ids; iterate `0..id_bound()` and
    /// skip authors with no papers.
    pub fn id_bound(&self) -> AuthorId {
        self.table.len() as AuthorId
    }

    pub fn author_count(&self) -> usize {
        self.active_authors
    }

    pub fn year_range(&self) -> Option<(i32, i32)> {
        let lo = *self.year_index.keys().next()?;
        let hi = *self.year_index.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn duplicate_author_warnings(&self) -> usize {
        self.duplicate_author_warnings
    }

    pub fn filter_report(&self) -> Option<&FilterReport> {
        self.filter_report.as_ref()
    }

    /// Authors incident to at least one paper, ascending by id.
    pub fn author_activity_set(&self) -> Vec<AuthorId> {
        (0..self.id_bound())
            .filter(|&a| !self.papers_of(a).is_empty())
            .collect()
    }

    pub fn author_names(&self, ids: &[AuthorId]) -> Vec<String> {
        ids.iter().map(|&a| self.table.name(a).to_owned()).collect()
    }

    pub fn stats(&self) -> CorpusStats {
        let mut authors_per_paper = BTreeMap::new();
        for p in &self.papers {
            *authors_per_paper.entry(p.authors.len()).or_insert(0) += 1;
        }
        let range = self.year_range();
        CorpusStats {
            papers: self.len(),
            authors: self.author_count(),
            min_year: range.map(|r| r.0),
            max_year: range.map(|r| r.1),
            authors_per_paper,
        }
    }

    /// Papers with `from_year <= year <= to_year`.
    pub fn slice_window(&self, from_year: i32, to_year: i32) -> Result<Self> {
        if from_year > to_year {
            return Err(Error::InvertedRange {
                from: from_year,
                to: to_year,
            });
        }
        let mut idx: Vec<u32> = self
            .year_index
            .range(from_year..=to_year)
            .flat_map(|(_, v)| v.iter().copied())
            .collect();
        idx.sort_unstable();
        let papers = idx.iter().map(|&i| self.papers[i as usize].clone()).collect();
        Ok(Self::build(self.table.clone(), papers, self.duplicate_author_warnings))
    }

    /// Back to plain records, for serialization.
    pub fn to_records(&self) -> Vec<RawRecord> {
        self.papers()
            .map(|p| RawRecord {
                paper_id: p.paper_id.clone(),
                year: p.year,
                authors: self.author_names(&p.authors),
            })
            .collect()
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for rec in self.to_records() {
            let line = serde_json::to_string(&rec).map_err(|e| Error::Serialize(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    /// Fails if an identifier contains a tab, a newline, or (for authors) a
    /// semicolon, since those cannot be represented in the TSV layout.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        for rec in self.to_records() {
            if rec.paper_id.contains(['\t', '\n', '\r']) {
                return Err(Error::Serialize(format!("paper_id {:?} not TSV-safe", rec.paper_id)));
            }
            if let Some(a) = rec.authors.iter().find(|a| a.is_empty() || a.contains(['\t', '\n', '\r', ';'])) {
                return Err(Error::Serialize(format!("author {a:?} not TSV-safe")));
            }
            writeln!(out, "{}\t{}\t{}", rec.paper_id, rec.year, rec.authors.join(";"))?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<()> {
        match format {
            Format::Jsonl => self.write_jsonl(out),
            Format::Tsv => self.write_tsv(out),
        }
    }
}

/// Two corpora are equal when they hold the same papers, in the same order,
/// with the same years and author names. Interned ids are not compared.
impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        let names = |c: &Corpus, p: &PaperRecord| {
            let mut v: Vec<&str> = p.authors.iter().map(|&a| c.table.name(a)).collect();
            v.sort_unstable();
            v.into_iter().map(str::to_owned).collect::<Vec<_>>()
        };
        self.len() == other.len()
            && self.papers().zip(other.papers()).all(|(a, b)| {
                a.paper_id == b.paper_id && a.year == b.year && names(self, a) == names(other, b)
            })
    }
}

#[derive(Default)]
struct CorpusBuilder {
    table: AuthorTable,
    papers: Vec<Arc<PaperRecord>>,
    seen: FxHashMap<String, usize>,
    duplicate_authors: usize,
}

impl CorpusBuilder {
    fn push(&mut self, rec: RawRecord, line: usize) -> Result<()> {
        if let Some(&first_line) = self.seen.get(&rec.paper_id) {
            return Err(Error::DuplicatePaperId {
                paper_id: rec.paper_id,
                first_line,
                second_line: line,
            });
        }
        let mut authors: Vec<AuthorId> = rec.authors.iter().map(|a| self.table.intern(a)).collect();
        let before = authors.len();
        authors.sort_unstable();
        authors.dedup();
        self.duplicate_authors += before - authors.len();
        self.seen.insert(rec.paper_id.clone(), line);
        self.papers.push(Arc::new(PaperRecord {
            paper_id: rec.paper_id,
            year: rec.year,
            authors,
        }));
        Ok(())
    }

    fn finish(self) -> Corpus {
        Corpus::build(Arc::new(self.table), self.papers, self.duplicate_authors)
    }
}

/// Reads a corpus in one of the two supported layouts. Blank lines are
/// skipped; line numbers in errors are 1-based physical lines.
pub fn parse_corpus<R: BufRead>(source: R, format: Format) -> Result<Corpus> {
    let mut builder = CorpusBuilder::default();
    let mut first_content = true;
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            reason: format!("not valid UTF-8 ({e})"),
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }
        let rec = match format {
            Format::Jsonl => parse_jsonl_line(line, lineno)?,
            Format::Tsv => match parse_tsv_line(line, lineno, first_content)? {
                Some(rec) => rec,
                None => {
                    first_content = false;
                    continue;
                }
            },
        };
        first_content = false;
        builder.push(rec, lineno)?;
    }
    Ok(builder.finish())
}

fn parse_jsonl_line(line: &str, lineno: usize) -> Result<RawRecord> {
    let err = |reason: String| Error::Parse { line: lineno, reason };
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| err("expected a JSON object".into()))?;
    let paper_id = match obj.get("paper_id") {
        Some(serde_json::Value::String(s)) => s.clone(),
        Some(_) => return Err(err("paper_id is not a string".into())),
        None => return Err(err("missing paper_id".into())),
    };
    let year = match obj.get("year") {
        Some(v) => v
            .as_i64()
            .and_then(|y| i32::try_from(y).ok())
            .ok_or_else(|| err(format!("year is not an integer: {v}")))?,
        None => return Err(err("missing year".into())),
    };
    let authors = match obj.get("authors") {
        Some(serde_json::Value::Array(items)) => items
            .iter()
            .map(|a| a.as_str().map(str::to_owned))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err("authors must be an array of strings".into()))?,
        Some(_) => return Err(err("authors must be an array of strings".into())),
        None => return Err(err("missing authors".into())),
    };
    Ok(RawRecord { paper_id, year, authors })
}

/// `Ok(None)` means the line was recognised as a header.
fn parse_tsv_line(line: &str, lineno: usize, may_be_header: bool) -> Result<Option<RawRecord>> {
    let err = |reason: String| Error::Parse { line: lineno, reason };
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 3 {
        return Err(err(format!("expected 3 tab-separated fields, found {}", fields.len())));
    }
    let year = match fields[1].parse::<i32>() {
        Ok(y) => y,
        Err(_) if may_be_header => return Ok(None),
        Err(_) => return Err(err(format!("year is not an integer: {:?}", fields[1]))),
    };
    let authors = if fields[2].is_empty() {
        Vec::new()
    } else {
        fields[2].split(';').map(str::to_owned).collect::<Vec<_>>()
    };
    if authors.iter().any(String::is_empty) {
        return Err(err("empty author name".into()));
    }
    Ok(Some(RawRecord {
        paper_id: fields[0].to_owned(),
        year,
        authors,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuthorCap {
    Explicit(usize),
    /// Smallest byline size covering at least this fraction of papers.
    Percentile(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub min_year: i32,
    pub max_year: i32,
    pub max_authors: Option<AuthorCap>,
    pub drop_single_authored: bool,
    /// Compute a percentile cap over the distribution that still includes
    /// single-authored papers.
    pub percentile_before_single_drop: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            min_year: i32::MIN,
            max_year: i32::MAX,
            max_authors: None,
            drop_single_authored: true,
            percentile_before_single_drop: false,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_year > self.max_year {
            return Err(Error::InvalidConfig(format!(
                "min_year {} > max_year {}",
                self.min_year, self.max_year
            )));
        }
        match self.max_authors {
            Some(AuthorCap::Explicit(k)) if k < 2 => {
                Err(Error::InvalidConfig(format!("author cap must be at least 2, got {k}")))
            }
            Some(AuthorCap::Percentile(q)) if !(q > 0.0 && q <= 1.0) => {
                Err(Error::InvalidConfig(format!("percentile must be in (0, 1], got {q}")))
            }
            _ => Ok(()),
        }
    }
}

/// What `apply_filters` removed. Each dropped paper is attributed to the
/// first rule it fails, in the order year, single-author, cap.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub papers_read: usize,
    pub dropped_year: usize,
    pub dropped_single_authored: usize,
    pub dropped_author_cap: usize,
    pub author_cap: Option<usize>,
    pub kept: usize,
}

/// Smallest `k` such that at least a fraction `q` of the corpus' papers have
/// at most `k` authors.
pub fn percentile_threshold(corpus: &Corpus, q: f64) -> Result<usize> {
    threshold_of(corpus.papers().map(|p| p.authors.len()), q)
}

fn threshold_of(sizes: impl Iterator<Item = usize>, q: f64) -> Result<usize> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidConfig(format!("percentile must be in (0, 1], got {q}")));
    }
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut n = 0usize;
    for s in sizes {
        *hist.entry(s).or_insert(0) += 1;
        n += 1;
    }
    if n == 0 {
        return Err(Error::NoPapers);
    }
    // Tolerate representation error in q * n (0.95 * 100 must mean 95).
    let need = ((q * n as f64) - 1e-9 * n as f64).ceil().max(1.0) as usize;
    let mut cum = 0;
    for (&k, &c) in &hist {
        cum += c;
        if cum >= need {
            return Ok(k);
        }
    }
    Ok(*hist.keys().next_back().expect("non-empty"))
}

pub fn apply_filters(corpus: &Corpus, cfg: &FilterConfig) -> Result<Corpus> {
    cfg.validate()?;
    let in_range = |p: &PaperRecord| p.year >= cfg.min_year && p.year <= cfg.max_year;
    let multi = |p: &PaperRecord| !cfg.drop_single_authored || p.authors.len() >= 2;

    let cap = match cfg.max_authors {
        None => None,
        Some(AuthorCap::Explicit(k)) => Some(k),
        Some(AuthorCap::Percentile(q)) => {
            let sizes = corpus
                .papers()
                .filter(|p| in_range(p) && (cfg.percentile_before_single_drop || multi(p)))
                .map(|p| p.authors.len());
            match threshold_of(sizes, q) {
                Ok(k) => Some(k),
                Err(Error::NoPapers) => None,
                Err(e) => return Err(e),
            }
        }
    };

    let mut report = FilterReport {
        papers_read: corpus.len(),
        author_cap: cap,
        ..Default::default()
    };
    let mut out = corpus.select(|p| {
        if !in_range(p) {
            report.dropped_year += 1;
            false
        } else if !multi(p) {
            report.dropped_single_authored += 1;
            false
        } else if cap.is_some_and(|k| p.authors.len() > k) {
            report.dropped_author_cap += 1;
            false
        } else {
            true
        }
    });
    report.kept = out.len();
    out.filter_report = Some(report);
    Ok(out)
}

/// Set of authors active in `corpus`, as a `BTreeSet` for intersections.
pub fn author_set(corpus: &Corpus) -> BTreeSet<AuthorId> {
    corpus.author_activity_set().into_iter().collect()
}

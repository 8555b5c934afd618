//! Per-year time series of all three coefficients plus the derived
//! analyses.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::projection::project_one_mode;
use crate::report::{format_exact, to_decimal, Exact, MetricRecord, MetricReport};
use crate::static_metrics::{ncc, occ};
use crate::temporal::{overlap_ratios, tcc, Involvement, Overlap, TccOptions, WindowSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TimeseriesConfig {
    pub start_year: i32,
    pub end_year: i32,
    /// Years in the NCC/OCC snapshot, and the preceding window used for
    /// overlap and involvement.
    pub window_len: u32,
    pub sweep_lengths: Vec<u32>,
    pub options: TccOptions,
}

impl TimeseriesConfig {
    pub fn new(start_year: i32, end_year: i32) -> Self {
        Self {
            start_year,
            end_year,
            window_len: WindowSpec::DEFAULT_LEN,
            sweep_lengths: (1..=5).collect(),
            options: TccOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.start_year > self.end_year {
            return Err(Error::InvertedRange {
                from: self.start_year,
                to: self.end_year,
            });
        }
        if self.window_len == 0 || self.sweep_lengths.is_empty() || self.sweep_lengths.contains(&0) {
            return Err(Error::InvalidConfig("window lengths must be at least 1".into()));
        }
        Ok(())
    }

    /// Earliest year row `year` reads from.
    pub fn first_year_used(&self, year: i32) -> i32 {
        let deepest = self.sweep_lengths.iter().copied().max().unwrap_or(0).max(self.window_len);
        (year - self.window_len as i32 + 1).min(year - deepest as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeseriesRow {
    pub year: i32,
    /// NCC and OCC over `[year - window_len + 1, year]`.
    pub ncc: MetricReport,
    pub occ: MetricReport,
    /// TCC per preceding-window length, in sweep order.
    pub tcc: Vec<(u32, MetricReport)>,
    pub overlap: Overlap,
    pub involvement: Involvement,
    /// Some window reaches before the corpus' first year.
    pub partial_window: bool,
    pub warnings: Vec<String>,
}

impl TimeseriesRow {
    pub fn tcc_for(&self, len: u32) -> Option<&MetricReport> {
        self.tcc.iter().find(|(l, _)| *l == len).map(|(_, m)| m)
    }

    pub fn involvement_ratio(&self) -> Option<Exact> {
        self.involvement.ratio()
    }

    pub fn to_record(&self) -> TimeseriesRecord {
        let inv = self.involvement.ratio();
        TimeseriesRecord {
            year: self.year,
            partial_window: self.partial_window,
            ncc: self.ncc.to_record(),
            occ: self.occ.to_record(),
            tcc: self
                .tcc
                .iter()
                .map(|(l, m)| WindowedRecord {
                    window: *l,
                    report: m.to_record(),
                })
                .collect(),
            overlap: self.overlap.to_record(),
            involvement: InvolvementRecord {
                closed_pairs: self.involvement.closed_pairs,
                involved_pairs: self.involvement.involved_pairs,
                ratio: inv.as_ref().map(to_decimal),
                exact: inv.as_ref().map(format_exact),
            },
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowedRecord {
    pub window: u32,
    #[serde(flatten)]
    pub report: MetricRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvolvementRecord {
    pub closed_pairs: u128,
    pub involved_pairs: u128,
    pub ratio: Option<f64>,
    pub exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeseriesRecord {
    pub year: i32,
    pub partial_window: bool,
    pub ncc: MetricRecord,
    pub occ: MetricRecord,
    pub tcc: Vec<WindowedRecord>,
    pub overlap: crate::temporal::OverlapRecord,
    pub involvement: InvolvementRecord,
    pub warnings: Vec<String>,
}

fn row(corpus: &Corpus, cfg: &TimeseriesConfig, year: i32) -> Result<TimeseriesRow> {
    let snapshot = corpus.slice_window(year - cfg.window_len as i32 + 1, year)?;
    let (ncc_report, occ_report) = rayon::join(|| ncc(&project_one_mode(&snapshot)), || occ(&snapshot));

    let mut warnings = Vec::new();
    let coverage = corpus.year_range();
    let partial_window = coverage.is_some_and(|(lo, _)| cfg.first_year_used(year) < lo);
    match coverage {
        None => warnings.push("corpus has no papers".to_owned()),
        Some((lo, hi)) if year < lo || year > hi => {
            warnings.push(format!("year {year} outside corpus coverage {lo}..={hi}"))
        }
        _ => {}
    }
    if partial_window {
        warnings.push(format!("partial window: data starts after {}", cfg.first_year_used(year)));
    }

    let default_window = WindowSpec::new(year, cfg.window_len)?;
    let sweep: Vec<(u32, MetricReport, Option<Involvement>)> = cfg
        .sweep_lengths
        .par_iter()
        .map(|&len| {
            let report = tcc(corpus, WindowSpec::new(year, len)?, cfg.options)?;
            let inv = (len == cfg.window_len).then(|| Involvement::of(&report));
            Ok((len, report.metric(), inv))
        })
        .collect::<Result<_>>()?;
    let involvement = match sweep.iter().find_map(|(_, _, inv)| *inv) {
        Some(inv) => inv,
        None => Involvement::of(&tcc(corpus, default_window, cfg.options)?),
    };

    Ok(TimeseriesRow {
        year,
        ncc: ncc_report,
        occ: occ_report,
        tcc: sweep.into_iter().map(|(l, m, _)| (l, m)).collect(),
        overlap: overlap_ratios(corpus, default_window)?,
        involvement,
        partial_window,
        warnings,
    })
}

/// One row per year in `[start_year, end_year]`, in year order. Years are
/// computed concurrently; the result does not depend on the schedule.
pub fn run_timeseries(corpus: &Corpus, cfg: &TimeseriesConfig) -> Result<Vec<TimeseriesRow>> {
    cfg.validate()?;
    (cfg.start_year..=cfg.end_year)
        .into_par_iter()
        .map(|year| row(corpus, cfg, year))
        .collect()
}

fn cell(r: Option<Exact>) -> String {
    r.as_ref().map(|r| to_decimal(r).to_string()).unwrap_or_default()
}

/// CSV with one column per sweep length; undefined ratios are empty cells.
pub fn timeseries_csv(rows: &[TimeseriesRow], cfg: &TimeseriesConfig) -> String {
    let mut out = String::from("year,ncc,occ");
    for l in &cfg.sweep_lengths {
        let _ = write!(out, ",tcc_w{l}");
    }
    out.push_str(",overlap_target,overlap_preceding,involvement\n");
    for r in rows {
        let _ = write!(out, "{},{},{}", r.year, cell(r.ncc.ratio()), cell(r.occ.ratio()));
        for l in &cfg.sweep_lengths {
            let _ = write!(out, ",{}", cell(r.tcc_for(*l).and_then(|m| m.ratio())));
        }
        let _ = writeln!(
            out,
            ",{},{},{}",
            cell(r.overlap.ratio_target()),
            cell(r.overlap.ratio_preceding()),
            cell(r.involvement_ratio())
        );
    }
    out
}

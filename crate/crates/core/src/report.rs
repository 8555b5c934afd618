//! Exact-ratio report types shared by every metric.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact rational used for every reported coefficient.
pub type Exact = Ratio<u128>;

/// `Some(n/d)` in lowest terms, or `None` when `d == 0`.
pub fn exact_ratio(numerator: u128, denominator: u128) -> Option<Exact> {
    (denominator != 0).then(|| Ratio::new(numerator, denominator))
}

/// Formats a ratio as `"p/q"`, always with an explicit denominator.
pub fn format_exact(r: &Exact) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `"p/q"` form written by [`format_exact`].
pub fn parse_exact(s: &str) -> Option<Exact> {
    let (p, q) = s.split_once('/')?;
    let p: u128 = p.trim().parse().ok()?;
    let q: u128 = q.trim().parse().ok()?;
    exact_ratio(p, q)
}

pub fn to_decimal(r: &Exact) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MetricKind {
    Ncc,
    Occ,
    Tcc,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Ncc => "NCC",
            MetricKind::Occ => "OCC",
            MetricKind::Tcc => "TCC",
        })
    }
}

/// Numerator and denominator of a closure coefficient. A zero denominator is
/// a legal, undefined state rather than a ratio of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricReport {
    pub metric: MetricKind,
    pub numerator: u128,
    pub denominator: u128,
}

impl MetricReport {
    pub fn new(metric: MetricKind, numerator: u128, denominator: u128) -> Self {
        debug_assert!(numerator <= denominator, "{metric}: {numerator} > {denominator}");
        Self {
            metric,
            numerator,
            denominator,
        }
    }

    pub fn defined(&self) -> bool {
        self.denominator != 0
    }

    pub fn ratio(&self) -> Option<Exact> {
        exact_ratio(self.numerator, self.denominator)
    }

    pub fn decimal(&self) -> Option<f64> {
        self.ratio().as_ref().map(to_decimal)
    }

    pub fn to_record(&self) -> MetricRecord {
        let ratio = self.ratio();
        MetricRecord {
            metric: self.metric,
            numerator: self.numerator,
            denominator: self.denominator,
            ratio: ratio.as_ref().map(to_decimal),
            exact: ratio.as_ref().map(format_exact),
            defined: self.defined(),
        }
    }
}

/// Serialized shape of a [`MetricReport`]. `ratio` is the decimal value for
/// plotting; `exact` carries the reduced `"p/q"` form. Both are `null` when
/// the denominator is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub metric: MetricKind,
    pub numerator: u128,
    pub denominator: u128,
    pub ratio: Option<f64>,
    pub exact: Option<String>,
    pub defined: bool,
}

impl MetricRecord {
    pub const CSV_HEADER: &'static str = "metric,numerator,denominator,ratio,exact,defined";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.metric,
            self.numerator,
            self.denominator,
            self.ratio.map(|r| r.to_string()).unwrap_or_default(),
            self.exact.as_deref().unwrap_or(""),
            self.defined
        )
    }
}

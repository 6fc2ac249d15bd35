//! Parameter sweeps over `S` and `m`, the data behind level-versus-field
//! plots, written as CSV.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::bohr_sommerfeld_level;
use crate::error::{Error, Result};
use crate::limits::landau_level;
use crate::oracle::richardson;
use crate::params::PhysicalConfig;
use crate::spectrum::{spectrum, ScanSettings};

/// Where a level came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Continued-fraction root.
    Cf,
    /// Finite-difference oracle, Richardson-extrapolated.
    Oracle,
    /// Semiclassical quantization of the θ-motion.
    BohrSommerfeld,
    /// Coulomb-free level on the sphere.
    Landau,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Cf => "cf",
            Source::Oracle => "oracle",
            Source::BohrSommerfeld => "bohr_sommerfeld",
            Source::Landau => "landau",
        }
    }
}

impl std::str::FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cf" => Ok(Source::Cf),
            "oracle" => Ok(Source::Oracle),
            "bohr_sommerfeld" | "bs" => Ok(Source::BohrSommerfeld),
            "landau" => Ok(Source::Landau),
            _ => Err(Error::InvalidArgument(format!("unknown source '{s}'"))),
        }
    }
}

/// One level at one grid point. A failed point keeps its row with
/// `epsilon = None` and the failure in `reason`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "S")]
    pub s: f64,
    pub m: i64,
    pub coulomb: f64,
    pub n: usize,
    pub epsilon: Option<f64>,
    pub h_n: Option<f64>,
    pub source: Source,
    pub reason: Option<String>,
}

impl SweepRecord {
    pub fn succeeded(&self) -> bool {
        self.epsilon.is_some()
    }
}

/// Grid definition for [`sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub m_list: Vec<i64>,
    pub s_values: Vec<f64>,
    pub coulomb: f64,
    pub levels: usize,
    pub sources: Vec<Source>,
}

/// Grid cells used by the oracle source.
pub const ORACLE_CELLS: usize = 2000;

/// `lo, lo + step, …` up to `hi` inclusive (within a hair of rounding).
pub fn s_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::InvalidArgument(format!(
            "bad S range {lo}:{hi}:{step}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| lo + i as f64 * step).collect())
}

fn failed(s: f64, m: i64, coulomb: f64, levels: usize, source: Source, err: &Error) -> Vec<SweepRecord> {
    (1..=levels)
        .map(|n| SweepRecord {
            s,
            m,
            coulomb,
            n,
            epsilon: None,
            h_n: None,
            source,
            reason: Some(err.to_string()),
        })
        .collect()
}

fn point(s: f64, m: i64, coulomb: f64, levels: usize, source: Source) -> Vec<SweepRecord> {
    let config = match PhysicalConfig::new(s, m, coulomb) {
        Ok(c) => c,
        Err(e) => return failed(s, m, coulomb, levels, source, &e),
    };
    let row = |n: usize, epsilon: f64, h_n: Option<f64>| SweepRecord {
        s,
        m,
        coulomb,
        n,
        epsilon: Some(epsilon),
        h_n,
        source,
        reason: None,
    };
    let result: Result<Vec<SweepRecord>> = match source {
        Source::Cf => spectrum(&config, levels, &ScanSettings::default())
            .map(|ls| ls.iter().map(|l| row(l.n, l.epsilon, l.h_n)).collect()),
        Source::Oracle => richardson(&config, levels, ORACLE_CELLS)
            .map(|es| es.iter().enumerate().map(|(i, &e)| row(i + 1, e, None)).collect()),
        Source::BohrSommerfeld => (1..=levels)
            .map(|n| bohr_sommerfeld_level(&config, n as u32 - 1).map(|e| row(n, e, None)))
            .collect(),
        Source::Landau => Ok((1..=levels)
            .map(|n| row(n, landau_level(s, m, n as u32 - 1), None))
            .collect()),
    };
    result.unwrap_or_else(|e| failed(s, m, coulomb, levels, source, &e))
}

/// Runs every `(S, m, source)` point in parallel; rows come back ordered by
/// `S`, then `m` (as listed), then `n`, then source.
pub fn sweep(plan: &SweepPlan) -> Result<Vec<SweepRecord>> {
    if plan.levels == 0 {
        return Err(Error::InvalidArgument("levels must be >= 1".into()));
    }
    if plan.m_list.is_empty() || plan.s_values.is_empty() {
        return Err(Error::InvalidArgument("empty sweep grid".into()));
    }
    let mut jobs = Vec::new();
    for (si, &s) in plan.s_values.iter().enumerate() {
        for (mi, &m) in plan.m_list.iter().enumerate() {
            for &src in &plan.sources {
                jobs.push((si, mi, s, m, src));
            }
        }
    }
    let mut keyed: Vec<((usize, usize, usize, Source), SweepRecord)> = jobs
        .par_iter()
        .flat_map_iter(|&(si, mi, s, m, src)| {
            point(s, m, plan.coulomb, plan.levels, src)
                .into_iter()
                .map(move |r| ((si, mi, r.n, src), r))
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

/// Fraction of rows that carry an energy.
pub fn success_rate(records: &[SweepRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.succeeded()).count() as f64 / records.len() as f64
}

/// 17 significant digits, identical on every run.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column order of [`write_csv`].
pub const CSV_HEADER: [&str; 8] = ["S", "m", "coulomb", "n", "epsilon", "h_n", "source", "reason"];

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record([
            fmt_float(r.s),
            r.m.to_string(),
            fmt_float(r.coulomb),
            r.n.to_string(),
            r.epsilon.map(fmt_float).unwrap_or_default(),
            r.h_n.map(fmt_float).unwrap_or_default(),
            r.source.as_str().to_string(),
            r.reason.clone().unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidArgument(format!("csv output failed: {e}")))
}

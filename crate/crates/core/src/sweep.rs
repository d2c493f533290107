//! Parameter sweeps over the Werner and Horodecki families, rendered as
//! plot-ready CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::correlations::{negativity, pair_pccs, total_correlations, MeasurementFrame, OptimizerOptions};
use crate::density::DensityOperator;
use crate::entropy::mutual_information;
use crate::error::{Error, Result};
use crate::report::format_sig;
use crate::states;

pub const CSV_HEADER: &str = "p,r_value,sum_pauli,pcc1,pcc2,pcc3,mutual_information,negativity";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    Horodecki,
}

impl Family {
    pub fn state(&self, p: f64) -> Result<DensityOperator> {
        match self {
            Family::Werner => states::werner(p),
            Family::Horodecki => states::horodecki(p),
        }
    }

    /// Default lower end of a sweep. The Horodecki family is a pure product
    /// state at `p = 0`, where no correlation is defined.
    pub fn default_p_min(&self) -> f64 {
        match self {
            Family::Werner => 0.0,
            Family::Horodecki => 0.01,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "werner" => Ok(Family::Werner),
            "horodecki" => Ok(Family::Horodecki),
            other => Err(Error::InvalidOption(format!(
                "unknown family {other:?} (expected werner or horodecki)"
            ))),
        }
    }
}

/// One grid point. `None` marks a correlation that is undefined there.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub r_value: Option<f64>,
    pub sum_pauli: Option<f64>,
    pub pcc1: Option<f64>,
    pub pcc2: Option<f64>,
    pub pcc3: Option<f64>,
    pub mutual_information: f64,
    pub negativity: f64,
}

/// `steps` evenly spaced points from `p_min` to `p_max` inclusive.
pub fn grid(p_min: f64, p_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p_min) || !(0.0..=1.0).contains(&p_max) || p_min > p_max {
        return Err(Error::InvalidOption(format!(
            "need 0 <= p_min <= p_max <= 1, got [{p_min}, {p_max}]"
        )));
    }
    match steps {
        0 => Err(Error::InvalidOption("steps must be at least 1".into())),
        1 => Ok(vec![p_min]),
        _ => {
            let h = (p_max - p_min) / (steps - 1) as f64;
            Ok((0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        p_max
                    } else {
                        p_min + i as f64 * h
                    }
                })
                .collect())
        }
    }
}

fn undefined_as_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedPcc(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn sweep_row(family: Family, p: f64, opts: &OptimizerOptions) -> Result<SweepRow> {
    let state = family.state(p)?;
    let r_value = undefined_as_none(total_correlations(&state, opts).map(|r| r.r_value))?;
    let pccs = undefined_as_none(pair_pccs(&state, &MeasurementFrame::pauli()))?;
    Ok(SweepRow {
        p,
        r_value,
        sum_pauli: pccs.map(|v| v.iter().map(|x| x.abs()).sum()),
        pcc1: pccs.map(|v| v[0]),
        pcc2: pccs.map(|v| v[1]),
        pcc3: pccs.map(|v| v[2]),
        mutual_information: mutual_information(&state)?,
        negativity: negativity(&state)?,
    })
}

/// Serial sweep; rows are ordered by `p`.
pub fn sweep(
    family: Family,
    p_min: f64,
    p_max: f64,
    steps: usize,
    opts: &OptimizerOptions,
) -> Result<Vec<SweepRow>> {
    grid(p_min, p_max, steps)?
        .into_iter()
        .map(|p| sweep_row(family, p, opts))
        .collect()
}

fn cell(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_else(|| "NA".into())
}

/// CSV with the fixed header, LF line endings and a trailing newline.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_sig(r.p),
            cell(r.r_value),
            cell(r.sum_pauli),
            cell(r.pcc1),
            cell(r.pcc2),
            cell(r.pcc3),
            format_sig(r.mutual_information),
            format_sig(r.negativity),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = grid(0.0, 1.0, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert_eq!(grid(0.2, 0.2, 1).unwrap(), vec![0.2]);
        assert!(grid(0.5, 0.2, 3).is_err());
        assert!(grid(0.0, 1.5, 3).is_err());
        assert!(grid(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("werner".parse::<Family>().unwrap(), Family::Werner);
        assert!("ghz".parse::<Family>().is_err());
    }

    #[test]
    fn horodecki_zero_renders_na() {
        let opts = OptimizerOptions {
            restarts: 2,
            ..Default::default()
        };
        let row = sweep_row(Family::Horodecki, 0.0, &opts).unwrap();
        assert_eq!(row.r_value, None);
        let csv = to_csv(&[row]);
        assert_eq!(csv, format!("{CSV_HEADER}\n0,NA,NA,NA,NA,NA,0,0\n"));
    }
}

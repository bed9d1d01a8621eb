//! `START:END:STEP` grids and `A..B` index ranges.

use std::str::FromStr;

use crate::error::CliError;

/// Uniform grid `start + k·step`, `k = 0, 1, …` up to and including `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

/// Upper bound on the number of grid points.
pub const MAX_POINTS: usize = 1_000_000;

impl TGrid {
    pub fn points(&self) -> Vec<f64> {
        // slack keeps END when (end - start)/step is an integer up to rounding
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for TGrid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("t-grid '{s}': expected START:END:STEP"));
        let v: Vec<f64> = s.split(':').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let [start, end, step] = v[..] else { return Err(bad()) };
        if !(start.is_finite() && end.is_finite() && step.is_finite()) || step <= 0.0 || end < start {
            return Err(CliError::Usage(format!("t-grid '{s}': need finite START <= END and STEP > 0")));
        }
        if (end - start) / step >= MAX_POINTS as f64 {
            return Err(CliError::Usage(format!("t-grid '{s}': more than {MAX_POINTS} points")));
        }
        Ok(Self { start, end, step })
    }
}

/// Half-open index range `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for IndexRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("index range '{s}': expected N, A..B or A..=B"));
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
            (int(a)?, int(b)? + 1)
        } else if let Some((a, b)) = s.split_once("..") {
            (int(a)?, int(b)?)
        } else {
            let n = int(s)?;
            (n, n + 1)
        };
        if lo >= hi {
            return Err(bad());
        }
        Ok(Self { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_end() {
        let g: TGrid = "-0.5:10:0.1".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 106);
        assert!((pts[105] - 10.0).abs() < 1e-12);
        assert!("1:0:0.1".parse::<TGrid>().is_err());
        assert!("0:1:0".parse::<TGrid>().is_err());
        assert!("0:1".parse::<TGrid>().is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!("0..10".parse::<IndexRange>().unwrap(), IndexRange { lo: 0, hi: 10 });
        assert_eq!("2..=4".parse::<IndexRange>().unwrap(), IndexRange { lo: 2, hi: 5 });
        assert_eq!("7".parse::<IndexRange>().unwrap(), IndexRange { lo: 7, hi: 8 });
        assert!("3..3".parse::<IndexRange>().is_err());
        assert!("a..b".parse::<IndexRange>().is_err());
    }
}

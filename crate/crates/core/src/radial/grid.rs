use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    /// Uniform in `ln r`.
    Log,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    spacing: Spacing,
    r: Vec<f64>,
}

impl RadialGrid {
    pub fn log(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        Self::check(r_min, r_max, points)?;
        let step = (r_max / r_min).ln() / (points - 1) as f64;
        let mut r: Vec<f64> = (0..points)
            .map(|i| r_min * (i as f64 * step).exp())
            .collect();
        r[points - 1] = r_max;
        Ok(Self {
            spacing: Spacing::Log,
            r,
        })
    }

    pub fn uniform(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        Self::check(r_min, r_max, points)?;
        let step = (r_max - r_min) / (points - 1) as f64;
        let r = (0..points).map(|i| r_min + i as f64 * step).collect();
        Ok(Self {
            spacing: Spacing::Uniform,
            r,
        })
    }

    fn check(r_min: f64, r_max: f64, points: usize) -> Result<()> {
        if !(r_min > 0.0) || !r_min.is_finite() {
            return Err(Error::NonPositiveRadius(r_min));
        }
        if !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::NonMonotoneGrid(points.saturating_sub(1)));
        }
        if points < 3 {
            return Err(Error::GridTooSmall {
                needed: 3,
                got: points,
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn points(&self) -> &[f64] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.r.len() - 1]
    }

    /// Constant step in the grid's native coordinate (`ln r` or `r`).
    pub fn step(&self) -> f64 {
        let n = self.r.len() - 1;
        match self.spacing {
            Spacing::Log => (self.r_max() / self.r_min()).ln() / n as f64,
            Spacing::Uniform => (self.r_max() - self.r_min()) / n as f64,
        }
    }

    /// Index of the grid point closest to `r`.
    pub fn nearest_index(&self, r: f64) -> usize {
        match self.r.binary_search_by(|x| x.total_cmp(&r)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i >= self.r.len() => self.r.len() - 1,
            Err(i) => {
                if (r - self.r[i - 1]) <= (self.r[i] - r) {
                    i - 1
                } else {
                    i
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_is_geometric() {
        let g = RadialGrid::log(1e-6, 100.0, 801).unwrap();
        assert_eq!(g.len(), 801);
        assert_eq!(g.r_max(), 100.0);
        let ratios: Vec<f64> = g.points().windows(2).map(|w| w[1] / w[0]).collect();
        let first = ratios[0];
        assert!(ratios.iter().all(|q| (q - first).abs() < 1e-12));
        assert!((first.ln() - g.step()).abs() < 1e-14);
    }

    #[test]
    fn nearest_index_clamps() {
        let g = RadialGrid::uniform(1.0, 2.0, 11).unwrap();
        assert_eq!(g.nearest_index(0.0), 0);
        assert_eq!(g.nearest_index(1.52), 5);
        assert_eq!(g.nearest_index(1.56), 6);
        assert_eq!(g.nearest_index(9.0), 10);
    }

    #[test]
    fn rejects_invalid_bounds() {
        assert_eq!(RadialGrid::log(0.0, 1.0, 10), Err(Error::NonPositiveRadius(0.0)));
        assert!(RadialGrid::log(2.0, 1.0, 10).is_err());
        assert!(RadialGrid::uniform(1.0, 2.0, 2).is_err());
    }
}

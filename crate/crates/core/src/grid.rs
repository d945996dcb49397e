//! Rectangular sampling grids over a parameter chart.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Axis> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("grid resolution {n} is below 2")));
        }
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(Error::InvalidInput(format!("empty or invalid range {lo}:{hi}")));
        }
        Ok(Axis { lo, hi, n })
    }

    /// Evenly spaced samples including both endpoints.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.value(i))
    }
}

/// Tensor grid; iteration is row-major with `u` outer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub u: Axis,
    pub v: Axis,
}

impl Grid {
    pub fn new(u: (f64, f64), nu: usize, v: (f64, f64), nv: usize) -> Result<Grid> {
        Ok(Grid { u: Axis::new(u.0, u.1, nu)?, v: Axis::new(v.0, v.1, nv)? })
    }

    pub fn len(&self) -> usize {
        self.u.n * self.v.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.u.values().flat_map(move |u| self.v.values().map(move |v| (u, v)))
    }
}

/// Parses a resolution such as `20x20`.
pub fn parse_resolution(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidInput(format!("resolution '{text}' is not of the form NxM"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let nu: usize = a.trim().parse().map_err(|_| bad())?;
    let nv: usize = b.trim().parse().map_err(|_| bad())?;
    if nu < 2 || nv < 2 {
        return Err(Error::InvalidInput(format!("resolution '{text}' must be at least 2 per axis")));
    }
    Ok((nu, nv))
}

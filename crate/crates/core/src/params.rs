//! Deformation parameter, tolerance policy and half-integer labels.
//!
//! Spins `n` and weights `j` are half-integers. They are stored doubled
//! (`2n`, `2j`) so that every index is an exact integer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_T: f64 = 0.3;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Deformation parameter `t > 0` with `lambda = exp(t)`, plus the tolerance
/// policy used by every numerical check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    t: f64,
    tol_abs: f64,
    tol_rel: f64,
}

impl Params {
    pub fn new(t: f64) -> Result<Self> {
        Self::with_tolerances(t, DEFAULT_TOL, DEFAULT_TOL)
    }

    pub fn with_tolerances(t: f64, tol_abs: f64, tol_rel: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParams(format!("t must be finite and > 0, got {t}")));
        }
        for (name, v) in [("tol_abs", tol_abs), ("tol_rel", tol_rel)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Self { t, tol_abs, tol_rel })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn lambda(&self) -> f64 {
        self.t.exp()
    }

    /// `lambda^x` for real `x`, evaluated as `exp(t x)`.
    pub fn lambda_pow(&self, x: f64) -> f64 {
        (self.t * x).exp()
    }

    /// `lambda^(twice / 2)`.
    pub fn lambda_half_pow(&self, twice: i32) -> f64 {
        self.lambda_pow(f64::from(twice) / 2.0)
    }

    /// The coupling `c = (lambda - 1/lambda)^-1` in `ef - fe = c (q^2 - q^-2)`.
    pub fn coupling(&self) -> f64 {
        1.0 / (2.0 * self.t.sinh())
    }

    pub fn tol_abs(&self) -> f64 {
        self.tol_abs
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    /// Mixed absolute/relative acceptance: `residual <= tol_abs + tol_rel * scale`.
    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.tol_abs + self.tol_rel * scale
    }
}

/// Spin label `n` of an irreducible representation, stored as `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RepIndex(u32);

impl RepIndex {
    pub const ZERO: RepIndex = RepIndex(0);
    pub const HALF: RepIndex = RepIndex(1);

    pub const fn from_twice(twice_n: u32) -> Self {
        RepIndex(twice_n)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2n + 1`.
    pub const fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Weights `j = n, n-1, ..., -n` in basis order.
    pub fn weights(self) -> impl Iterator<Item = Weight> {
        let n = self.0 as i32;
        (0..=n).map(move |p| Weight(n - 2 * p))
    }

    /// Basis position of weight `j` (0 for the highest weight).
    pub fn position(self, j: Weight) -> Option<usize> {
        let n = self.0 as i32;
        let diff = n - j.0;
        if j.0.abs() <= n && diff % 2 == 0 {
            Some((diff / 2) as usize)
        } else {
            None
        }
    }

    pub fn weight_at(self, position: usize) -> Weight {
        Weight(self.0 as i32 - 2 * position as i32)
    }

    /// All spins `0, 1/2, ..., n_max`.
    pub fn up_to(n_max: RepIndex) -> impl Iterator<Item = RepIndex> {
        (0..=n_max.0).map(RepIndex)
    }
}

impl fmt::Display for RepIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Weight label `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub i32);

impl Weight {
    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `(-1)^k` for a half-integer exponent given doubled; `twice_k` must be even.
pub fn sign_pow(twice_k: i32) -> f64 {
    debug_assert!(twice_k % 2 == 0, "odd exponent 2k = {twice_k}");
    if (twice_k / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

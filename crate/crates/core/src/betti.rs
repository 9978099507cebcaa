//! Even Betti numbers of smooth complete toric varieties.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::Fan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("center of dimension {center} cannot have codimension two in dimension {ambient}")]
    DimensionMismatch { ambient: usize, center: usize },
}

/// Coefficients `β₀, β₂, …, β₂ₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoincarePolynomial(pub Vec<u64>);

impl PoincarePolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// Complex dimension; `None` for the zero polynomial.
    pub fn dim(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

fn check(f: &Fan) -> Result<(), BettiError> {
    if !matches!(f.is_complete(), Ok(true)) {
        return Err(BettiError::NotComplete);
    }
    if !f.is_smooth() {
        return Err(BettiError::NotSmooth);
    }
    Ok(())
}

/// `d_j` = number of `j`-dimensional cones.
pub fn d_vector(f: &Fan) -> Result<Vec<u64>, BettiError> {
    check(f)?;
    Ok(f.face_counts().into_iter().map(|c| c as u64).collect())
}

/// `β₂ₖ = h_k = Σ_{i≥k} (−1)^{i−k} C(i,k) d_{n−i}`.
pub fn betti_numbers(f: &Fan) -> Result<PoincarePolynomial, BettiError> {
    let d = d_vector(f)?;
    let n = f.rank();
    let h = (0..=n)
        .map(|k| {
            let mut s = BigInt::zero();
            for i in k..=n {
                let term = binomial(BigInt::from(i), BigInt::from(k)) * BigInt::from(d[n - i]);
                if (i - k) % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            debug_assert!(!s.is_negative());
            s.to_u64().expect("Betti number fits in u64")
        })
        .collect();
    Ok(PoincarePolynomial(h))
}

/// Blowup along a codimension-two center `Y`: `P_X + t²·P_Y`.
/// The zero polynomial stands for an empty center.
pub fn blowup_update(px: &PoincarePolynomial, py: &PoincarePolynomial) -> Result<PoincarePolynomial, BettiError> {
    if py.0.is_empty() {
        return Ok(px.clone());
    }
    let n = px.0.len().saturating_sub(1);
    let m = py.0.len() - 1;
    if px.0.is_empty() || m + 2 != n {
        return Err(BettiError::DimensionMismatch { ambient: n, center: m });
    }
    let mut out = px.0.clone();
    for (k, b) in py.0.iter().enumerate() {
        out[k + 1] += b;
    }
    Ok(PoincarePolynomial(out))
}

pub fn euler_characteristic(p: &PoincarePolynomial) -> u64 {
    p.total()
}

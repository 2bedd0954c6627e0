// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ProgramError;

/// A `dim x dim` complex matrix stored as `2^(-norm_exp/2) * entries`, so
/// Hadamard-type gates keep small integer entries. Row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledMatrix {
    dim: usize,
    norm_exp: u32,
    entries: Vec<Complex64>,
}

impl ScaledMatrix {
    pub fn new(dim: usize, norm_exp: u32, entries: Vec<Complex64>) -> Result<Self, ProgramError> {
        let m = Self {
            dim,
            norm_exp,
            entries,
        };
        m.check_shape()?;
        Ok(m)
    }

    /// Real integer entries, scaled by `2^(-norm_exp/2)`.
    pub fn from_real(dim: usize, norm_exp: u32, entries: &[i32]) -> Result<Self, ProgramError> {
        Self::new(
            dim,
            norm_exp,
            entries.iter().map(|&e| Complex64::new(e as f64, 0.0)).collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        Self {
            dim,
            norm_exp: 0,
            entries,
        }
    }

    pub(crate) fn check_shape(&self) -> Result<(), ProgramError> {
        if self.entries.len() != self.dim * self.dim {
            return Err(ProgramError::BadMatrix(format!(
                "matrix of dimension {} has {} entries",
                self.dim,
                self.entries.len()
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_exp(&self) -> u32 {
        self.norm_exp
    }

    fn scale(&self) -> f64 {
        0.5f64.powf(self.norm_exp as f64 / 2.0)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col] * self.scale()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let s = self.scale();
        (0..self.dim)
            .map(|r| {
                let row = &self.entries[r * self.dim..(r + 1) * self.dim];
                row.iter().zip(v).map(|(a, b)| a * b).sum::<Complex64>() * s
            })
            .collect()
    }

    /// Largest entry of `|U^† U - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let dot: Complex64 = (0..d).map(|k| self.get(k, i).conj() * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_is_unitary() {
        let h = ScaledMatrix::from_real(2, 1, &[1, 1, 1, -1]).unwrap();
        assert!(h.unitarity_residual() < 1e-15);
        let v = h.apply(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!((v[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let bad = ScaledMatrix::from_real(2, 0, &[1, 1, 1, -1]).unwrap();
        assert!(bad.unitarity_residual() > 0.5);
        assert!(ScaledMatrix::from_real(2, 0, &[1, 0, 0]).is_err());
    }

    #[test]
    fn serializes_entries_as_pairs() {
        let h = ScaledMatrix::from_real(2, 1, &[1, 1, 1, -1]).unwrap();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"dim":2,"norm_exp":1,"entries":[[1.0,0.0],[1.0,0.0],[1.0,0.0],[-1.0,0.0]]}"#);
        let back: ScaledMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
    }
}

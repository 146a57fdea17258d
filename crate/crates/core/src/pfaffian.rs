use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{antisymmetry_residual, cr, CMatrix};

/// Antisymmetry tolerance for Pfaffian input.
pub const PFAFFIAN_TOL: f64 = 1e-12;

/// Pfaffian by expansion along the first row (sum over perfect matchings).
pub fn pfaffian(m: &CMatrix) -> Result<Complex64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: m.ncols(),
        });
    }
    if n % 2 != 0 {
        return Err(Error::OddOrder(n));
    }
    let residual = antisymmetry_residual(m);
    if residual > PFAFFIAN_TOL {
        return Err(Error::NotAntisymmetric { residual });
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(expand(m, &idx))
}

fn expand(m: &CMatrix, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return cr(1.0);
    }
    let first = idx[0];
    let mut total = cr(0.0);
    for k in 1..idx.len() {
        let z = m[(first, idx[k])];
        if z == cr(0.0) {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != k)
            .map(|(_, &i)| i)
            .collect();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        total += z * sign * expand(m, &rest);
    }
    total
}

//! Closed-form invariants in named amplitude coordinates.

use num_complex::Complex64;

use crate::coords::{levi_civita, Antisym3, EvenD5, EvenD6, OddD4, OddD6};
use crate::error::{Error, Result};
use crate::linalg::{cr, CMatrix, CVector};
use crate::pfaffian::pfaffian;

/// `q_2 / 6` computed from the moment map equals `KAPPA_EVEN` times the
/// even quartic below.
pub const KAPPA_EVEN: f64 = 1.0;
/// `q_2` from the moment map equals `KAPPA_ODD` times the odd quartic.
pub const KAPPA_ODD: f64 = 1.0;

/// `(K_P)^i_k = sum_{a<b, c<d<e} P_kab P_cde eps^{iabcde}`.
pub fn k_matrix(p: &Antisym3) -> Result<CMatrix> {
    if p.n() != 6 {
        return Err(Error::DimensionMismatch {
            left: 6,
            right: p.n(),
        });
    }
    let residual = p.antisymmetry_residual();
    if residual > crate::pfaffian::PFAFFIAN_TOL {
        return Err(Error::NotAntisymmetric { residual });
    }
    let mut k = CMatrix::zeros(6, 6);
    for i in 0..6 {
        for kk in 0..6 {
            let mut s = cr(0.0);
            for a in 0..6 {
                for b in a + 1..6 {
                    let pk = p.get(kk, a, b);
                    if pk == cr(0.0) {
                        continue;
                    }
                    // the remaining three indices are fixed by (i, a, b)
                    let rest: Vec<usize> =
                        (0..6).filter(|&x| x != i && x != a && x != b).collect();
                    if rest.len() != 3 {
                        continue;
                    }
                    let e = levi_civita(&[i, a, b, rest[0], rest[1], rest[2]]);
                    s += pk * p.get(rest[0], rest[1], rest[2]) * e;
                }
            }
            k[(i, kk)] = s;
        }
    }
    Ok(k)
}

/// `(eta xi + ½Tr(yx))^2 + 4 eta Pf(x) + 4 xi Pf(y)
///  - ½((Tr(yx))^2 - 2 Tr(yxyx))`.
pub fn quartic_even_closed(p: &EvenD6) -> Result<Complex64> {
    let yx = &p.y * &p.x;
    let t = yx.trace();
    let t2 = (&yx * &yx).trace();
    let first = p.eta * p.xi + t * 0.5;
    Ok(first * first + p.eta * pfaffian(&p.x)? * 4.0 + p.xi * pfaffian(&p.y)? * 4.0
        - (t * t - t2 * 2.0) * 0.5)
}

/// `6 (w·u)^2 - 12 w^i u_j (K_P)^j_i + Tr K_P^2`.
///
/// The mixed coefficient collects `-4` from `Tr A^2` and `-8` from
/// `Tr(beta B)`; the latter is absent from the commonly quoted form with `-4`.
pub fn quartic_odd_closed(p: &OddD6) -> Result<Complex64> {
    let k = k_matrix(&p.p)?;
    let wu: Complex64 = p.w.iter().zip(p.u.iter()).map(|(w, u)| w * u).sum();
    let mixed = (p.u.transpose() * &k * &p.w)[(0, 0)];
    Ok(wu * wu * 6.0 - mixed * 12.0 + (&k * &k).trace())
}

/// `2 eta rho - 2 Pf(xi)` for a d = 4 even state.
pub fn pairing_even_d4(eta: Complex64, xi: &CMatrix, rho: Complex64) -> Result<Complex64> {
    Ok(eta * rho * 2.0 - pfaffian(xi)? * 2.0)
}

/// `⅓ v_i P_jkl eps^{ijkl}` for a d = 4 odd state.
pub fn pairing_odd_d4(p: &OddD4) -> Complex64 {
    let mut s = cr(0.0);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let e = levi_civita(&[i, j, k, l]);
                    if e != 0.0 {
                        s += p.v[i] * p.p.get(j, k, l) * e;
                    }
                }
            }
        }
    }
    s / 3.0
}

/// Components `((f_i phi, phi), (f^i+ phi, phi))` of the d = 5 covariant in
/// `(eta, xi, chi)` coordinates:
/// `(f_i phi, phi) = 2 xi_ik chi^k` and
/// `(f^i+ phi, phi) = 2 eta chi^i - ¼ xi_jk xi_lm eps^{ijklm}`.
pub fn vector_covariant_closed_d5(p: &EvenD5) -> (CVector, CVector) {
    let lower = &p.xi * &p.chi * cr(2.0);
    let mut upper = &p.chi * (p.eta * 2.0);
    for i in 0..5 {
        let mut s = cr(0.0);
        for j in 0..5 {
            for k in 0..5 {
                for l in 0..5 {
                    for m in 0..5 {
                        let e = levi_civita(&[i, j, k, l, m]);
                        if e != 0.0 {
                            s += p.xi[(j, k)] * p.xi[(l, m)] * e;
                        }
                    }
                }
            }
        }
        upper[i] -= s * 0.25;
    }
    (lower, upper)
}

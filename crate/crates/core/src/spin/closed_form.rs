//! Closed-form action of single-block generators on the d = 6 even sector,
//! in the `(eta, y, x, xi)` coordinates. Used as an independent check of the
//! exponential path.

use num_complex::Complex64;

use super::SpinGenerator;
use crate::coords::{levi_civita, EvenD6};
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::linalg::{cr, expm, CMatrix};
use crate::pfaffian::pfaffian;

/// `(C x D)^ab = ¼ eps^{abcdef} C_cd D_ef`.
pub fn cross(c: &CMatrix, d: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(6, 6);
    for a in 0..6 {
        for b in a + 1..6 {
            let rest: Vec<usize> = (0..6).filter(|&k| k != a && k != b).collect();
            let mut s = cr(0.0);
            // ordered pairs (cd), (ef) drawn from the remaining four indices
            for &i in &rest {
                for &j in &rest {
                    for &k in &rest {
                        for &l in &rest {
                            let e = levi_civita(&[a, b, i, j, k, l]);
                            if e != 0.0 {
                                s += c[(i, j)] * d[(k, l)] * e;
                            }
                        }
                    }
                }
            }
            s *= 0.25;
            out[(a, b)] = s;
            out[(b, a)] = -s;
        }
    }
    out
}

fn tr(m: &CMatrix) -> Complex64 {
    m.trace()
}

fn b_trans(b: &CMatrix, p: &EvenD6) -> Result<EvenD6> {
    let bb = cross(b, b);
    Ok(EvenD6 {
        eta: p.eta,
        y: &p.y - b * p.eta,
        x: &p.x + &bb * (p.eta * 0.5) - cross(b, &p.y),
        xi: p.xi - p.eta * pfaffian(b)? - tr(&(&bb * &p.y)) * 0.25 + tr(&(b * &p.x)) * 0.5,
    })
}

fn beta_trans(beta: &CMatrix, p: &EvenD6) -> Result<EvenD6> {
    let bb = cross(beta, beta);
    Ok(EvenD6 {
        eta: p.eta + p.xi * pfaffian(beta)? - tr(&(&bb * &p.x)) * 0.25 - tr(&(beta * &p.y)) * 0.5,
        y: &p.y + &bb * (p.xi * 0.5) + cross(beta, &p.x),
        x: &p.x + beta * p.xi,
        xi: p.xi,
    })
}

fn a_trans(a: &CMatrix, p: &EvenD6) -> Result<EvenD6> {
    let g = expm(a);
    let g_inv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Premise("exp(A) is singular".into()))?;
    // (det G)^{1/2} on the principal branch of the Lie-algebra lift
    let root = (a.trace() * 0.5).exp();
    let root_inv = (-a.trace() * 0.5).exp();
    Ok(EvenD6 {
        eta: p.eta * root_inv,
        y: g.transpose() * &p.y * &g * root_inv,
        x: &g_inv * &p.x * g_inv.transpose() * root,
        xi: p.xi * root,
    })
}

/// Applies `exp(T)` for a generator with exactly one nonzero block to a
/// d = 6 even state.
pub fn closed_form_even_d6(gen: &SpinGenerator, phi: &FockState) -> Result<FockState> {
    if gen.d() != 6 {
        return Err(Error::Unsupported(format!("closed form needs d = 6, got {}", gen.d())));
    }
    let p = EvenD6::from_state(phi)?;
    if gen.nonzero_blocks() > 1 {
        return Err(Error::Premise("generator must have a single nonzero block".into()));
    }
    let q = if max_nonzero(gen.b()) {
        b_trans(gen.b(), &p)?
    } else if max_nonzero(gen.beta()) {
        beta_trans(gen.beta(), &p)?
    } else {
        a_trans(gen.a(), &p)?
    };
    Ok(q.to_state())
}

fn max_nonzero(m: &CMatrix) -> bool {
    m.iter().any(|z| *z != cr(0.0))
}

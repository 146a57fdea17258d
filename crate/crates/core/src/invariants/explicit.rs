//! Moment map from amplitude contractions with the dual amplitudes
//! `phi~^J = amp(complement J) * eps_{J, complement J}`.

use num_complex::Complex64;

use super::closed::k_matrix;
use super::{fixed_sector, MomentMapMatrix};
use crate::coords::{complement_sign, EvenD6, OddD6};
use crate::error::{Error, Result};
use crate::fock::{mode_sign, FockState};
use crate::linalg::{cr, CMatrix};
use crate::spin::closed_form::cross;

fn sign_m(m: usize) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Moment-map blocks as sums over ascending index sets `R`:
///
/// ```text
/// A^i_k   = sum_R (-1)^m phi_{k R}   phi~^{i R}
/// B_jk    = sum_R (-1)^m phi_{k j R} phi~^{R}
/// beta^il = sum_R (-1)^m phi_{R}     phi~^{i l R}
/// ```
///
/// where `m` is the half-grade of the dual amplitude (`2m` or `2m+1`
/// particles).
pub fn moment_map_explicit(phi: &FockState) -> Result<MomentMapMatrix> {
    let d = phi.d();
    if d % 4 != 2 {
        return Err(Error::Unsupported(format!(
            "explicit moment map needs d = 2 mod 4, got {d}"
        )));
    }
    fixed_sector(phi)?;
    let full = phi.full_mask();
    let dual = |j: usize| -> Complex64 { phi.get(full & !j) * complement_sign(d, j) };

    let mut a = CMatrix::zeros(d, d);
    let mut b = CMatrix::zeros(d, d);
    let mut beta = CMatrix::zeros(d, d);
    for r in 0..=full {
        let len = r.count_ones() as usize;
        for i in 0..d {
            let bi = 1usize << i;
            if r & bi != 0 {
                continue;
            }
            for k in 0..d {
                let bk = 1usize << k;
                if r & bk != 0 {
                    continue;
                }
                // A: grade |R| + 1
                let s = sign_m((len + 1) / 2);
                let left = phi.get(r | bk) * mode_sign(r, k);
                let right = dual(r | bi) * mode_sign(r, i);
                a[(i, k)] += left * right * s;

                if i == k {
                    continue;
                }
                // B_{ik}: phi_{k i R} phi~^R
                let s = sign_m(len / 2);
                let seq = mode_sign(r, i) * mode_sign(r | bi, k);
                b[(i, k)] += phi.get(r | bi | bk) * seq * dual(r) * s;

                // beta^{ik}: phi_R phi~^{i k R}
                let s = sign_m(len / 2 + 1);
                let seq = mode_sign(r, k) * mode_sign(r | bk, i);
                beta[(i, k)] += phi.get(r) * dual(r | bi | bk) * seq * s;
            }
        }
    }
    Ok(MomentMapMatrix::from_blocks(&a, &b, &beta))
}

/// d = 6 even blocks in `(eta, y, x, xi)` coordinates:
/// `A = 2xy - (½Tr(xy) + eta xi) I`, `B = x×x - 2 xi y`,
/// `beta = y×y - 2 eta x`.
pub fn moment_blocks_even_d6(p: &EvenD6) -> MomentMapMatrix {
    let id = CMatrix::identity(6, 6);
    let xy = &p.x * &p.y;
    let a = &xy * cr(2.0) - id * (xy.trace() * 0.5 + p.eta * p.xi);
    let b = cross(&p.x, &p.x) - &p.y * (p.xi * 2.0);
    let beta = cross(&p.y, &p.y) - &p.x * (p.eta * 2.0);
    MomentMapMatrix::from_blocks(&a, &b, &beta)
}

/// d = 6 odd blocks in `(u, P, w)` coordinates:
/// `A = 2 w u^T - K_P - (w·u) I`, `B_jk = 2 P_akj w^a`,
/// `beta^il = (2/3!) u_a P_bcd eps^{ilbcda}`.
pub fn moment_blocks_odd_d6(p: &OddD6) -> MomentMapMatrix {
    let k = k_matrix(&p.p).expect("coordinates hold an antisymmetric tensor");
    let wu: Complex64 = p.w.iter().zip(p.u.iter()).map(|(w, u)| w * u).sum();
    let a = &p.w * p.u.transpose() * cr(2.0) - k - CMatrix::identity(6, 6) * wu;
    let mut b = CMatrix::zeros(6, 6);
    let mut beta = CMatrix::zeros(6, 6);
    for j in 0..6 {
        for kk in 0..6 {
            let mut s = cr(0.0);
            for a in 0..6 {
                s += p.p.get(a, kk, j) * p.w[a];
            }
            b[(j, kk)] = s * 2.0;
        }
    }
    for i in 0..6 {
        for l in 0..6 {
            if i == l {
                continue;
            }
            let mut s = cr(0.0);
            // (1/3!) sum over ordered (b, c, d) equals the sum over b < c < d
            for bb in 0..6 {
                for c in bb + 1..6 {
                    for dd in c + 1..6 {
                        for a in 0..6 {
                            let e = crate::coords::levi_civita(&[i, l, bb, c, dd, a]);
                            if e != 0.0 {
                                s += p.u[a] * p.p.get(bb, c, dd) * e;
                            }
                        }
                    }
                }
            }
            beta[(i, l)] = s * 2.0;
        }
    }
    MomentMapMatrix::from_blocks(&a, &b, &beta)
}

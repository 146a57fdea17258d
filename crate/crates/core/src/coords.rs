//! Named amplitude coordinates for small mode counts.
//!
//! Index conventions (0-based internally):
//! - two-particle amplitudes `y_ab` (or `xi_ab`) are antisymmetric matrices
//!   with `amp({a, b}) = y_ab` for `a < b`;
//! - dual amplitudes carry a Levi-Civita factor: the amplitude of the
//!   complement `C` of an ascending set `J` equals `t^J * eps_{J C}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{shuffle_sign, FockState, ParitySector};
use crate::linalg::{cr, CMatrix, CVector};

fn require(phi: &FockState, d: usize, sector: ParitySector) -> Result<()> {
    if phi.d() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: phi.d(),
        });
    }
    let s = phi.parity_sector();
    if phi.is_zero() || s == sector {
        Ok(())
    } else {
        Err(Error::WrongSector(s))
    }
}

fn pair_mask(a: usize, b: usize) -> usize {
    (1 << a) | (1 << b)
}

/// `eps_{J, complement(J)}` for an ascending set `J` given as a mask.
pub fn complement_sign(d: usize, mask: usize) -> f64 {
    let full = (1usize << d) - 1;
    shuffle_sign(mask, full & !mask)
}

fn read_pairs(phi: &FockState, dual: bool) -> CMatrix {
    let d = phi.d();
    let full = phi.full_mask();
    let mut m = CMatrix::zeros(d, d);
    for a in 0..d {
        for b in a + 1..d {
            let j = pair_mask(a, b);
            let z = if dual {
                phi.get(full & !j) * complement_sign(d, j)
            } else {
                phi.get(j)
            };
            m[(a, b)] = z;
            m[(b, a)] = -z;
        }
    }
    m
}

fn write_pairs(phi: &mut FockState, m: &CMatrix, dual: bool) {
    let d = phi.d();
    let full = phi.full_mask();
    for a in 0..d {
        for b in a + 1..d {
            let j = pair_mask(a, b);
            let z = (m[(a, b)] - m[(b, a)]) * 0.5;
            if dual {
                phi.set(full & !j, z * complement_sign(d, j));
            } else {
                phi.set(j, z);
            }
        }
    }
}

fn read_singles(phi: &FockState, dual: bool) -> CVector {
    let d = phi.d();
    let full = phi.full_mask();
    CVector::from_fn(d, |a, _| {
        let j = 1 << a;
        if dual {
            phi.get(full & !j) * complement_sign(d, j)
        } else {
            phi.get(j)
        }
    })
}

fn write_singles(phi: &mut FockState, v: &CVector, dual: bool) {
    let d = phi.d();
    let full = phi.full_mask();
    for a in 0..d {
        let j = 1 << a;
        if dual {
            phi.set(full & !j, v[a] * complement_sign(d, j));
        } else {
            phi.set(j, v[a]);
        }
    }
}

/// Totally antisymmetric rank-3 tensor on `n` indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Antisym3 {
    n: usize,
    data: Vec<Complex64>,
}

impl Antisym3 {
    pub fn zeros(n: usize) -> Self {
        Antisym3 {
            n,
            data: vec![cr(0.0); n * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    /// Sets `P_ijk` and all its permutations with the matching signs.
    pub fn set(&mut self, i: usize, j: usize, k: usize, z: Complex64) {
        let n = self.n;
        let perms = [
            (i, j, k, 1.0),
            (j, k, i, 1.0),
            (k, i, j, 1.0),
            (j, i, k, -1.0),
            (i, k, j, -1.0),
            (k, j, i, -1.0),
        ];
        if i == j || j == k || i == k {
            return;
        }
        for (a, b, c, s) in perms {
            self.data[(a * n + b) * n + c] = z * s;
        }
    }

    /// Largest `|P_ijk + P_jik|`, `|P_ijk + P_ikj|` or diagonal entry.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let p = self.get(i, j, k);
                    r = r
                        .max((p + self.get(j, i, k)).norm())
                        .max((p + self.get(i, k, j)).norm());
                }
            }
        }
        r
    }

    fn read(phi: &FockState) -> Self {
        let n = phi.d();
        let mut p = Antisym3::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    p.set(i, j, k, phi.get((1 << i) | (1 << j) | (1 << k)));
                }
            }
        }
        p
    }

    fn write(&self, phi: &mut FockState) {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    phi.set((1 << i) | (1 << j) | (1 << k), self.get(i, j, k));
                }
            }
        }
    }
}

/// d = 6 even state `eta|0> + y + x + xi|top>`, with
/// `y_ab = amp({a,b})` and `x^ab` the dual four-particle amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenD6 {
    pub eta: Complex64,
    pub y: CMatrix,
    pub x: CMatrix,
    pub xi: Complex64,
}

impl EvenD6 {
    pub fn zero() -> Self {
        EvenD6 {
            eta: cr(0.0),
            y: CMatrix::zeros(6, 6),
            x: CMatrix::zeros(6, 6),
            xi: cr(0.0),
        }
    }

    pub fn from_state(phi: &FockState) -> Result<Self> {
        require(phi, 6, ParitySector::Even)?;
        Ok(EvenD6 {
            eta: phi.get(0),
            y: read_pairs(phi, false),
            x: read_pairs(phi, true),
            xi: phi.get(phi.full_mask()),
        })
    }

    pub fn to_state(&self) -> FockState {
        let mut phi = FockState::zeros(6).expect("d = 6 is supported");
        phi.set(0, self.eta);
        write_pairs(&mut phi, &self.y, false);
        write_pairs(&mut phi, &self.x, true);
        let top = phi.full_mask();
        phi.set(top, self.xi);
        phi
    }
}

/// d = 6 odd state with `u_a = amp({a})`, `P_abc = amp({a,b,c})` and
/// `w^l` the dual five-particle amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct OddD6 {
    pub u: CVector,
    pub p: Antisym3,
    pub w: CVector,
}

impl OddD6 {
    pub fn from_state(phi: &FockState) -> Result<Self> {
        require(phi, 6, ParitySector::Odd)?;
        Ok(OddD6 {
            u: read_singles(phi, false),
            p: Antisym3::read(phi),
            w: read_singles(phi, true),
        })
    }

    pub fn to_state(&self) -> FockState {
        let mut phi = FockState::zeros(6).expect("d = 6 is supported");
        write_singles(&mut phi, &self.u, false);
        self.p.write(&mut phi);
        write_singles(&mut phi, &self.w, true);
        phi
    }
}

/// d = 4 even state `eta|0> + xi + rho|top>`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenD4 {
    pub eta: Complex64,
    pub xi: CMatrix,
    pub rho: Complex64,
}

impl EvenD4 {
    pub fn from_state(phi: &FockState) -> Result<Self> {
        require(phi, 4, ParitySector::Even)?;
        Ok(EvenD4 {
            eta: phi.get(0),
            xi: read_pairs(phi, false),
            rho: phi.get(phi.full_mask()),
        })
    }

    pub fn to_state(&self) -> FockState {
        let mut phi = FockState::zeros(4).expect("d = 4 is supported");
        phi.set(0, self.eta);
        write_pairs(&mut phi, &self.xi, false);
        phi.set(phi.full_mask(), self.rho);
        phi
    }
}

/// d = 4 odd state with one-particle `v_i` and three-particle `P_ijk`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddD4 {
    pub v: CVector,
    pub p: Antisym3,
}

impl OddD4 {
    pub fn from_state(phi: &FockState) -> Result<Self> {
        require(phi, 4, ParitySector::Odd)?;
        Ok(OddD4 {
            v: read_singles(phi, false),
            p: Antisym3::read(phi),
        })
    }

    pub fn to_state(&self) -> FockState {
        let mut phi = FockState::zeros(4).expect("d = 4 is supported");
        write_singles(&mut phi, &self.v, false);
        self.p.write(&mut phi);
        phi
    }
}

/// d = 5 even state `eta|0> + xi + chi`, with `chi^n` the dual
/// four-particle amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenD5 {
    pub eta: Complex64,
    pub xi: CMatrix,
    pub chi: CVector,
}

impl EvenD5 {
    pub fn from_state(phi: &FockState) -> Result<Self> {
        require(phi, 5, ParitySector::Even)?;
        Ok(EvenD5 {
            eta: phi.get(0),
            xi: read_pairs(phi, false),
            chi: read_singles(phi, true),
        })
    }

    pub fn to_state(&self) -> FockState {
        let mut phi = FockState::zeros(5).expect("d = 5 is supported");
        phi.set(0, self.eta);
        write_pairs(&mut phi, &self.xi, false);
        write_singles(&mut phi, &self.chi, true);
        phi
    }
}

/// Levi-Civita symbol on `idx` (0 on repeats).
pub fn levi_civita(idx: &[usize]) -> f64 {
    crate::linalg::permutation_sign(idx) as f64
}

//! Two and three qubits inside fermionic Fock spaces.
//!
//! Three qubits embed into d = 6 twice: as single-occupancy three-fermion
//! states (odd sector) and as double-occupancy paired states (even sector).
//! Local matrices act on amplitudes as
//! `Phi'_ijk = sum G1[i][i'] G2[j][j'] G3[k][k'] Phi_i'j'k'`.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_d6_even, classify_d6_odd_threefermion, OrbitLabel};
use crate::coords::EvenD6;
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::invariants::q_invariants;
use crate::linalg::{c, cr, rank, CMatrix};
use crate::pfaffian::pfaffian;
use crate::spin::SpinGenerator;

pub type Local = Matrix2<Complex64>;

/// `q_2/6` of the even embedding equals `KAPPA_DET * Det(Phi)`.
pub const KAPPA_DET: f64 = 1.0;
/// Concurrence of an embedded two-qubit state is `PF_CONCURRENCE * |Pf(xi)|`
/// for unit norm.
pub const PF_CONCURRENCE: f64 = 2.0;
/// Relative tolerance of the three-qubit class decision.
pub const QUBIT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState {
    /// `x[2i + j] = x_ij`.
    pub x: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(x00: Complex64, x01: Complex64, x10: Complex64, x11: Complex64) -> Self {
        TwoQubitState {
            x: [x00, x01, x10, x11],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.x[2 * i + j]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Pure-state concurrence `2 |x00 x11 - x01 x10| / |x|^2`.
    pub fn concurrence(&self) -> f64 {
        let det = self.x[0] * self.x[3] - self.x[1] * self.x[2];
        2.0 * det.norm() / self.norm_sqr()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeQubitState {
    /// `phi[4i + 2j + k] = Phi_ijk`.
    pub phi: [Complex64; 8],
}

impl ThreeQubitState {
    pub fn zero() -> Self {
        ThreeQubitState {
            phi: [cr(0.0); 8],
        }
    }

    pub fn from_basis(entries: &[(usize, usize, usize, Complex64)]) -> Self {
        let mut s = Self::zero();
        for &(i, j, k, z) in entries {
            s.phi[4 * i + 2 * j + k] += z;
        }
        s
    }

    pub fn ghz() -> Self {
        Self::from_basis(&[(0, 0, 0, cr(1.0)), (1, 1, 1, cr(1.0))])
    }

    pub fn w() -> Self {
        Self::from_basis(&[(0, 0, 1, cr(1.0)), (0, 1, 0, cr(1.0)), (1, 0, 0, cr(1.0))])
    }

    /// First qubit separate, the other two in a Bell pair.
    pub fn bisep() -> Self {
        Self::from_basis(&[(0, 0, 0, cr(1.0)), (0, 1, 1, cr(1.0))])
    }

    pub fn sep() -> Self {
        Self::from_basis(&[(0, 0, 0, cr(1.0))])
    }

    /// Canonical representative of a three-qubit class label.
    pub fn canonical(label: OrbitLabel) -> Result<Self> {
        Ok(match label {
            OrbitLabel::Ghz => Self::ghz(),
            OrbitLabel::W => Self::w(),
            OrbitLabel::Bisep => Self::bisep(),
            OrbitLabel::Sep => Self::sep(),
            OrbitLabel::Null => Self::zero(),
            other => {
                return Err(Error::Unsupported(format!(
                    "'{other}' is not a three-qubit class"
                )))
            }
        })
    }

    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        let mut s = Self::zero();
        for z in s.phi.iter_mut() {
            *z = crate::fock::complex_normal(rng);
        }
        s
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.phi[4 * i + 2 * j + k]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.phi.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        for z in out.phi.iter_mut() {
            *z *= s;
        }
        out
    }

    /// `Phi'_ijk = sum G1[i][i'] G2[j][j'] G3[k][k'] Phi_i'j'k'`.
    pub fn apply_local(&self, g1: &Local, g2: &Local, g3: &Local) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut s = cr(0.0);
                    for a in 0..2 {
                        for b in 0..2 {
                            for cc in 0..2 {
                                s += g1[(i, a)] * g2[(j, b)] * g3[(k, cc)] * self.get(a, b, cc);
                            }
                        }
                    }
                    out.phi[4 * i + 2 * j + k] = s;
                }
            }
        }
        out
    }

    /// Ket convention `|ijk> -> sum G1[i][i'] G2[j][j'] G3[k][k'] |i'j'k'>`,
    /// i.e. amplitudes move by the transposes.
    pub fn apply_ket_local(&self, g1: &Local, g2: &Local, g3: &Local) -> Self {
        self.apply_local(&g1.transpose(), &g2.transpose(), &g3.transpose())
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.phi
            .iter()
            .zip(&other.phi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.phi.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// The `2 x 4` flattening with qubit `q` as row index.
    pub fn flattening(&self, q: usize) -> CMatrix {
        let mut m = CMatrix::zeros(2, 4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (row, col) = match q {
                        0 => (i, 2 * j + k),
                        1 => (j, 2 * i + k),
                        _ => (k, 2 * i + j),
                    };
                    m[(row, col)] = self.get(i, j, k);
                }
            }
        }
        m
    }
}

/// `sum_ij x_ij f^{i+1}+ f^{j+3}+ |0>` in d = 4.
pub fn embed_two_qubit_d4(x: &TwoQubitState) -> FockState {
    let mut phi = FockState::zeros(4).expect("d = 4 is supported");
    for i in 0..2 {
        for j in 0..2 {
            phi.set((1 << i) | (1 << (j + 2)), x.get(i, j));
        }
    }
    phi
}

/// `PF_CONCURRENCE * |Pf(xi)| / |phi|^2` for a d = 4 two-fermion state.
pub fn pfaffian_concurrence(phi: &FockState) -> Result<f64> {
    let p = crate::coords::EvenD4::from_state(phi)?;
    Ok(PF_CONCURRENCE * pfaffian(&p.xi)?.norm() / phi.norm_sqr())
}

/// `sum Phi_ijk f^{i+1}+ f^{j+3}+ f^{k+5}+ |0>`.
pub fn embed_three_qubit_odd(phi: &ThreeQubitState) -> FockState {
    let mut out = FockState::zeros(6).expect("d = 6 is supported");
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out.set((1 << i) | (1 << (j + 2)) | (1 << (k + 4)), phi.get(i, j, k));
            }
        }
    }
    out
}

/// Paired embedding: `eta = Phi_000`, `xi = -Phi_111`,
/// `y_14, y_25, y_36 = Phi_100, Phi_010, Phi_001` and
/// `x^14, x^25, x^36 = -Phi_011, -Phi_101, -Phi_110`.
pub fn embed_three_qubit_even(phi: &ThreeQubitState) -> FockState {
    let mut p = EvenD6::zero();
    p.eta = phi.get(0, 0, 0);
    p.xi = -phi.get(1, 1, 1);
    let ys = [phi.get(1, 0, 0), phi.get(0, 1, 0), phi.get(0, 0, 1)];
    let xs = [-phi.get(0, 1, 1), -phi.get(1, 0, 1), -phi.get(1, 1, 0)];
    for n in 0..3 {
        p.y[(n, n + 3)] = ys[n];
        p.y[(n + 3, n)] = -ys[n];
        p.x[(n, n + 3)] = xs[n];
        p.x[(n + 3, n)] = -xs[n];
    }
    p.to_state()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SloccKind {
    B,
    Beta,
    A,
}

impl std::str::FromStr for SloccKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(SloccKind::B),
            "beta" => Ok(SloccKind::Beta),
            "a" => Ok(SloccKind::A),
            _ => Err(Error::Unsupported(format!("unknown gate kind '{s}'"))),
        }
    }
}

fn pair_block(v: [Complex64; 3]) -> CMatrix {
    let mut m = CMatrix::zeros(6, 6);
    for n in 0..3 {
        m[(n, n + 3)] = v[n];
        m[(n + 3, n)] = -v[n];
    }
    m
}

/// Generators realizing local gates on the even embedding:
/// `B` with `B_14 = -a, B_25 = -b, B_36 = -c`; `beta` with
/// `beta^14 = a, ...`; `A = diag(log 1/a, log 1/b, log 1/c)` on both halves.
pub fn slocc_gate_generator(
    kind: SloccKind,
    a: Complex64,
    b: Complex64,
    cc: Complex64,
) -> Result<SpinGenerator> {
    match kind {
        SloccKind::B => SpinGenerator::from_b(pair_block([-a, -b, -cc])),
        SloccKind::Beta => SpinGenerator::from_beta(pair_block([a, b, cc])),
        SloccKind::A => {
            if a == cr(0.0) || b == cr(0.0) || cc == cr(0.0) {
                return Err(Error::Premise("diagonal gate needs a, b, c nonzero".into()));
            }
            let logs = [(cr(1.0) / a).ln(), (cr(1.0) / b).ln(), (cr(1.0) / cc).ln()];
            let diag = CMatrix::from_fn(6, 6, |i, j| if i == j { logs[i % 3] } else { cr(0.0) });
            SpinGenerator::from_a(diag)
        }
    }
}

/// Ket-basis gates realized by [`slocc_gate_generator`]: `[[1, a], [0, 1]]`,
/// `[[1, 0], [a, 1]]` and `diag(a, 1/a)` per qubit, acting through
/// [`ThreeQubitState::apply_ket_local`].
pub fn slocc_gate_local(kind: SloccKind, a: Complex64, b: Complex64, cc: Complex64) -> [Local; 3] {
    let one = cr(1.0);
    let zero = cr(0.0);
    let f = |t: Complex64| match kind {
        SloccKind::B => Local::new(one, t, zero, one),
        SloccKind::Beta => Local::new(one, zero, t, one),
        SloccKind::A => Local::new(t, zero, zero, one / t),
    };
    [f(a), f(b), f(cc)]
}

/// Principal logarithm of an invertible 2 x 2 matrix (Sylvester formula).
pub fn log2x2(m: &Local) -> Result<Local> {
    let tr = m.trace();
    let det = m.determinant();
    if det.norm() == 0.0 {
        return Err(Error::Premise("singular local matrix".into()));
    }
    let disc = (tr * tr * 0.25 - det).sqrt();
    let l1 = tr * 0.5 + disc;
    let l2 = tr * 0.5 - disc;
    let id = Local::identity();
    let scale = l1.norm().max(l2.norm());
    if (l1 - l2).norm() <= 1e-8 * scale {
        let lam = (l1 + l2) * 0.5;
        return Ok(id * lam.ln() + (m - id * lam) / lam);
    }
    let f1 = l1.ln();
    let f2 = l2.ln();
    let dd = (f1 - f2) / (l1 - l2);
    Ok(m * dd + id * ((l1 * f2 - l2 * f1) / (l1 - l2)))
}

/// Generator of the odd-embedding action of `G1 ⊗ G2 ⊗ G3` and the global
/// scalar `(det G)^{-1/2}` it carries: exp of the result maps
/// `embed_odd(Phi)` to `scalar * embed_odd(G1 ⊗ G2 ⊗ G3 Phi)`.
pub fn block_gl_generator(g1: &Local, g2: &Local, g3: &Local) -> Result<(SpinGenerator, Complex64)> {
    let mut a = CMatrix::zeros(6, 6);
    for (n, g) in [g1, g2, g3].into_iter().enumerate() {
        let l = log2x2(g)?;
        for i in 0..2 {
            for j in 0..2 {
                // A^T = blockdiag(log G) so kets move by G^T and amplitudes by G
                a[(2 * n + j, 2 * n + i)] = l[(i, j)];
            }
        }
    }
    let scalar = (-a.trace() * 0.5).exp();
    Ok((SpinGenerator::from_a(a)?, scalar))
}

/// Cayley's hyperdeterminant.
pub fn cayley_hyperdeterminant(phi: &ThreeQubitState) -> Complex64 {
    let p = |i, j, k| phi.get(i, j, k);
    let squares = p(0, 0, 0) * p(0, 0, 0) * p(1, 1, 1) * p(1, 1, 1)
        + p(0, 0, 1) * p(0, 0, 1) * p(1, 1, 0) * p(1, 1, 0)
        + p(0, 1, 0) * p(0, 1, 0) * p(1, 0, 1) * p(1, 0, 1)
        + p(1, 0, 0) * p(1, 0, 0) * p(0, 1, 1) * p(0, 1, 1);
    let cross = p(0, 0, 0) * p(1, 1, 1) * p(0, 1, 1) * p(1, 0, 0)
        + p(0, 0, 0) * p(1, 1, 1) * p(1, 0, 1) * p(0, 1, 0)
        + p(0, 0, 0) * p(1, 1, 1) * p(1, 1, 0) * p(0, 0, 1)
        + p(0, 1, 1) * p(1, 0, 0) * p(1, 0, 1) * p(0, 1, 0)
        + p(0, 1, 1) * p(1, 0, 0) * p(1, 1, 0) * p(0, 0, 1)
        + p(1, 0, 1) * p(0, 1, 0) * p(1, 1, 0) * p(0, 0, 1);
    let quads = p(0, 0, 0) * p(1, 1, 0) * p(1, 0, 1) * p(0, 1, 1)
        + p(1, 1, 1) * p(0, 0, 1) * p(0, 1, 0) * p(1, 0, 0);
    squares - cross * 2.0 + quads * 4.0
}

/// `4 |Det(Phi)| / |Phi|^4`.
pub fn three_tangle(phi: &ThreeQubitState) -> f64 {
    let n = phi.norm_sqr();
    if n == 0.0 {
        return 0.0;
    }
    4.0 * cayley_hyperdeterminant(phi).norm() / (n * n)
}

/// SLOCC class from the hyperdeterminant and the flattening ranks.
pub fn three_qubit_class(phi: &ThreeQubitState) -> OrbitLabel {
    let n = phi.norm_sqr();
    if n == 0.0 || phi.max_abs() == 0.0 {
        return OrbitLabel::Null;
    }
    if cayley_hyperdeterminant(phi).norm() > QUBIT_TOL * n * n {
        return OrbitLabel::Ghz;
    }
    let ranks: Vec<usize> = (0..3).map(|q| rank(&phi.flattening(q), QUBIT_TOL)).collect();
    let ones = ranks.iter().filter(|&&r| r == 1).count();
    match ones {
        3 => OrbitLabel::Sep,
        0 => OrbitLabel::W,
        _ => OrbitLabel::Bisep,
    }
}

/// Three views of one three-qubit state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub qubit_class: OrbitLabel,
    /// Three-fermion class of the odd embedding (`None` for the zero state).
    pub odd_label: Option<OrbitLabel>,
    pub even_label: OrbitLabel,
    pub hyperdeterminant: [f64; 2],
    pub q2_over_6: [f64; 2],
    pub consistent: bool,
}

/// Freudenthal rank paired with each three-qubit class.
pub fn even_label_for(class: OrbitLabel) -> Option<OrbitLabel> {
    match class {
        OrbitLabel::Ghz => Some(OrbitLabel::Rank4),
        OrbitLabel::W => Some(OrbitLabel::Rank3),
        OrbitLabel::Bisep => Some(OrbitLabel::Rank2),
        OrbitLabel::Sep => Some(OrbitLabel::Rank1),
        OrbitLabel::Null => Some(OrbitLabel::Rank0),
        _ => None,
    }
}

pub fn duality_check(phi: &ThreeQubitState) -> Result<DualityReport> {
    let qubit_class = three_qubit_class(phi);
    let odd = embed_three_qubit_odd(phi);
    let odd_label = if odd.is_zero() {
        None
    } else {
        Some(classify_d6_odd_threefermion(&odd)?)
    };
    let even = embed_three_qubit_even(phi);
    let even_label = classify_d6_even(&even)?.orbit_label;
    let q2 = if even.is_zero() {
        cr(0.0)
    } else {
        q_invariants(&even, 2)?[1]
    };
    let det = cayley_hyperdeterminant(phi);
    let odd_ok = match odd_label {
        None => qubit_class == OrbitLabel::Null,
        Some(l) => l == qubit_class,
    };
    let consistent = odd_ok && even_label_for(qubit_class) == Some(even_label);
    Ok(DualityReport {
        qubit_class,
        odd_label,
        even_label,
        hyperdeterminant: [det.re, det.im],
        q2_over_6: [q2.re / 6.0, q2.im / 6.0],
        consistent,
    })
}

/// Complex number helper for callers building local matrices.
pub fn local(a: [[f64; 2]; 4]) -> Local {
    Local::new(
        c(a[0][0], a[0][1]),
        c(a[1][0], a[1][1]),
        c(a[2][0], a[2][1]),
        c(a[3][0], a[3][1]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::pfaffian;
    use crate::spin::exp_apply;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_qubit_embedding() {
        let e = embed_two_qubit_d4(&TwoQubitState::new(cr(1.0), cr(0.0), cr(0.0), cr(0.0)));
        assert_eq!(e, FockState::basis(4, &[1, 3]).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = TwoQubitState::new(cr(h), cr(0.0), cr(0.0), cr(h));
        let e = embed_two_qubit_d4(&bell);
        assert_eq!(e.amplitude(&[2, 4]).unwrap(), cr(h));
        assert!((pfaffian_concurrence(&e).unwrap() - 1.0).abs() < 1e-15);
        assert!((bell.concurrence() - 1.0).abs() < 1e-15);
        let p = crate::coords::EvenD4::from_state(&e).unwrap();
        assert!((pfaffian(&p.xi).unwrap() + cr(0.5)).norm() < 1e-15);
    }

    #[test]
    fn product_two_qubit_is_pure() {
        let (a0, a1, b0, b1) = (c(1.0, 0.5), c(-0.3, 0.0), c(0.2, 2.0), cr(1.0));
        let x = TwoQubitState::new(a0 * b0, a0 * b1, a1 * b0, a1 * b1);
        let e = embed_two_qubit_d4(&x);
        assert!(pfaffian_concurrence(&e).unwrap() < 1e-15);
        assert!(crate::classify::is_pure_spinor(&e).unwrap());
    }

    #[test]
    fn concurrence_matches_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let z: Vec<Complex64> = (0..4).map(|_| crate::fock::complex_normal(&mut rng)).collect();
            let x = TwoQubitState::new(z[0], z[1], z[2], z[3]);
            let e = embed_two_qubit_d4(&x);
            assert!((pfaffian_concurrence(&e).unwrap() - x.concurrence()).abs() < 1e-13);
        }
    }

    #[test]
    fn odd_embedding_basis() {
        let e = embed_three_qubit_odd(&ThreeQubitState::sep());
        assert_eq!(e, FockState::basis(6, &[1, 3, 5]).unwrap());
        let e = embed_three_qubit_odd(&ThreeQubitState::from_basis(&[(0, 0, 1, cr(1.0))]));
        assert_eq!(e, FockState::basis(6, &[1, 3, 6]).unwrap());
        let e = embed_three_qubit_odd(&ThreeQubitState::ghz());
        let want = &FockState::basis(6, &[1, 3, 5]).unwrap() + &FockState::basis(6, &[2, 4, 6]).unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn even_embedding_is_paired_product() {
        // |ijk> -> (f1+ f4+)^i (f2+ f5+)^j (f3+ f6+)^k |0> up to the printed signs
        for mask in 0..8usize {
            let (i, j, k) = (mask >> 2 & 1, mask >> 1 & 1, mask & 1);
            let e = embed_three_qubit_even(&ThreeQubitState::from_basis(&[(i, j, k, cr(1.0))]));
            let mut modes = Vec::new();
            for (bit, m) in [(i, 1), (j, 2), (k, 3)] {
                if bit == 1 {
                    modes.push(m);
                    modes.push(m + 3);
                }
            }
            modes.sort();
            let nonzero: Vec<usize> = (0..64).filter(|&m| e.get(m) != cr(0.0)).collect();
            let want = crate::fock::modes_to_mask(6, &modes).unwrap();
            assert_eq!(nonzero, vec![want], "basis |{i}{j}{k}>");
        }
        assert_eq!(
            embed_three_qubit_even(&ThreeQubitState::sep()),
            FockState::vacuum(6).unwrap()
        );
        let g = embed_three_qubit_even(&ThreeQubitState::ghz());
        assert_eq!(g.get(0), cr(1.0));
        assert_eq!(g.get(63), cr(-1.0));
    }

    #[test]
    fn hyperdeterminant_values() {
        assert_eq!(cayley_hyperdeterminant(&ThreeQubitState::ghz()), cr(1.0));
        assert_eq!(cayley_hyperdeterminant(&ThreeQubitState::w()), cr(0.0));
        assert_eq!(cayley_hyperdeterminant(&ThreeQubitState::sep()), cr(0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((three_tangle(&ThreeQubitState::ghz().scale(cr(h))) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyperdeterminant_is_sl_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let phi = ThreeQubitState::random(&mut rng);
        let mut unit = || {
            let m = Local::from_fn(|_, _| crate::fock::complex_normal(&mut rng));
            m / m.determinant().sqrt()
        };
        let (g1, g2, g3) = (unit(), unit(), unit());
        let det = cayley_hyperdeterminant(&phi);
        let moved = cayley_hyperdeterminant(&phi.apply_local(&g1, &g2, &g3));
        assert!((det - moved).norm() < 1e-10 * det.norm().max(1.0));
    }

    #[test]
    fn qubit_classes() {
        assert_eq!(three_qubit_class(&ThreeQubitState::ghz()), OrbitLabel::Ghz);
        assert_eq!(three_qubit_class(&ThreeQubitState::w()), OrbitLabel::W);
        assert_eq!(three_qubit_class(&ThreeQubitState::bisep()), OrbitLabel::Bisep);
        assert_eq!(three_qubit_class(&ThreeQubitState::sep()), OrbitLabel::Sep);
        assert_eq!(three_qubit_class(&ThreeQubitState::zero()), OrbitLabel::Null);
    }

    #[test]
    fn gate_correspondence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in [SloccKind::B, SloccKind::Beta, SloccKind::A] {
            let phi = ThreeQubitState::random(&mut rng);
            let (a, b, cc) = (c(0.7, 0.2), c(-0.4, 1.1), c(1.3, -0.6));
            let gen = slocc_gate_generator(kind, a, b, cc).unwrap();
            let lhs = exp_apply(&gen, &embed_three_qubit_even(&phi)).unwrap();
            let [g1, g2, g3] = slocc_gate_local(kind, a, b, cc);
            let rhs = embed_three_qubit_even(&phi.apply_ket_local(&g1, &g2, &g3));
            assert!(lhs.max_diff(&rhs) < 1e-12 * rhs.max_abs(), "{kind:?}");
        }
        assert!(slocc_gate_generator(SloccKind::A, cr(0.0), cr(1.0), cr(1.0)).is_err());
    }

    #[test]
    fn b_gate_on_vacuum() {
        let a = c(0.5, 0.5);
        let gen = slocc_gate_generator(SloccKind::B, a, cr(0.0), cr(0.0)).unwrap();
        let out = exp_apply(&gen, &embed_three_qubit_even(&ThreeQubitState::sep())).unwrap();
        let want = embed_three_qubit_even(&ThreeQubitState::from_basis(&[
            (0, 0, 0, cr(1.0)),
            (1, 0, 0, a),
        ]));
        assert!(out.max_diff(&want) < 1e-14);
    }

    #[test]
    fn matrix_log() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let m = Local::from_fn(|_, _| crate::fock::complex_normal(&mut rng));
            let l = log2x2(&m).unwrap();
            let e = crate::linalg::expm(&CMatrix::from_fn(2, 2, |i, j| l[(i, j)]));
            for i in 0..2 {
                for j in 0..2 {
                    assert!((e[(i, j)] - m[(i, j)]).norm() < 1e-12);
                }
            }
        }
        let l = log2x2(&Local::identity()).unwrap();
        assert_eq!(l, Local::zeros());
        let jordan = Local::new(cr(2.0), cr(1.0), cr(0.0), cr(2.0));
        let l = log2x2(&jordan).unwrap();
        assert!((l[(0, 1)] - cr(0.5)).norm() < 1e-15);
        assert!(log2x2(&Local::zeros()).is_err());
    }

    #[test]
    fn block_gl_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = ThreeQubitState::random(&mut rng);
        let mut unit = || {
            let m = Local::from_fn(|_, _| crate::fock::complex_normal(&mut rng));
            m / m.determinant().sqrt()
        };
        let (g1, g2, g3) = (unit(), unit(), unit());
        let (gen, scalar) = block_gl_generator(&g1, &g2, &g3).unwrap();
        // unit determinant: the scalar is a sign
        assert!((scalar.norm() - 1.0).abs() < 1e-12);
        let lhs = exp_apply(&gen, &embed_three_qubit_odd(&phi)).unwrap();
        let rhs = embed_three_qubit_odd(&phi.apply_local(&g1, &g2, &g3)).scale(scalar);
        assert!(lhs.max_diff(&rhs) < 1e-11);

        let id = Local::identity();
        let (gen, scalar) = block_gl_generator(&id, &id, &id).unwrap();
        assert_eq!(scalar, cr(1.0));
        assert_eq!(gen.nonzero_blocks(), 0);
    }

    #[test]
    fn bit_flip_on_ghz() {
        let x = Local::new(cr(0.0), cr(1.0), cr(1.0), cr(0.0));
        let (gen, scalar) = block_gl_generator(&x, &Local::identity(), &Local::identity()).unwrap();
        let lhs = exp_apply(&gen, &embed_three_qubit_odd(&ThreeQubitState::ghz())).unwrap();
        let flipped = ThreeQubitState::from_basis(&[(1, 0, 0, cr(1.0)), (0, 1, 1, cr(1.0))]);
        let rhs = embed_three_qubit_odd(&flipped).scale(scalar);
        assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn duality_on_canonical_states() {
        for label in [
            OrbitLabel::Ghz,
            OrbitLabel::W,
            OrbitLabel::Bisep,
            OrbitLabel::Sep,
            OrbitLabel::Null,
        ] {
            let r = duality_check(&ThreeQubitState::canonical(label).unwrap()).unwrap();
            assert!(r.consistent, "{label}: {r:?}");
        }
    }

    #[test]
    fn q2_is_hyperdeterminant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let phi = ThreeQubitState::random(&mut rng);
            let q2 = q_invariants(&embed_three_qubit_even(&phi), 2).unwrap()[1] / 6.0;
            let det = cayley_hyperdeterminant(&phi);
            assert!((q2 - det * KAPPA_DET).norm() < 1e-10 * det.norm());
        }
    }
}

//! Pure-spinor detection and orbit classification for `d <= 6`.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordVector;
use crate::coords::OddD6;
use crate::error::{Error, Result};
use crate::fock::{annihilate_into, create_into, FockState, ParitySector};
use crate::invariants::{
    k_matrix, moment_map, mukai_pairing, pair, q_from_moment, vector_covariant, MomentMapMatrix,
    RANK_TOL, ZERO_MOMENT_TOL,
};
use crate::linalg::{cr, max_abs, null_space, rank, CMatrix};
use crate::spin::{exp_pair_creation, SpinElement, SpinGenerator};

pub mod canonical;

pub use canonical::{canonical_state, CanonicalForm};

/// Default relative tolerance of homogeneous zero tests.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative singular-value threshold of the annihilator kernel.
pub const KERNEL_TOL: f64 = 1e-9;

/// Thresholds used by a classification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A degree-`n` quantity counts as zero below `zero * |phi|^n`.
    pub zero: f64,
    pub rank: f64,
    pub kernel: f64,
    pub moment_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: DEFAULT_TOL,
            rank: RANK_TOL,
            kernel: KERNEL_TOL,
            moment_zero: ZERO_MOMENT_TOL,
        }
    }
}

impl Tolerances {
    pub fn with_zero(zero: f64) -> Self {
        Tolerances {
            zero,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitLabel {
    Null,
    Pure,
    Generic,
    Rank0,
    Rank1,
    Rank2,
    Rank3,
    Rank4,
    Ghz,
    W,
    Bisep,
    Sep,
}

impl OrbitLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitLabel::Null => "null",
            OrbitLabel::Pure => "pure",
            OrbitLabel::Generic => "generic",
            OrbitLabel::Rank0 => "rank0",
            OrbitLabel::Rank1 => "rank1",
            OrbitLabel::Rank2 => "rank2",
            OrbitLabel::Rank3 => "rank3",
            OrbitLabel::Rank4 => "rank4",
            OrbitLabel::Ghz => "ghz",
            OrbitLabel::W => "w",
            OrbitLabel::Bisep => "bisep",
            OrbitLabel::Sep => "sep",
        }
    }

    pub fn freudenthal_rank(self) -> Option<usize> {
        match self {
            OrbitLabel::Rank0 => Some(0),
            OrbitLabel::Rank1 => Some(1),
            OrbitLabel::Rank2 => Some(2),
            OrbitLabel::Rank3 => Some(3),
            OrbitLabel::Rank4 => Some(4),
            _ => None,
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            OrbitLabel::Null,
            OrbitLabel::Pure,
            OrbitLabel::Generic,
            OrbitLabel::Rank0,
            OrbitLabel::Rank1,
            OrbitLabel::Rank2,
            OrbitLabel::Rank3,
            OrbitLabel::Rank4,
            OrbitLabel::Ghz,
            OrbitLabel::W,
            OrbitLabel::Bisep,
            OrbitLabel::Sep,
        ];
        let lower = s.to_ascii_lowercase();
        all.into_iter()
            .find(|l| l.as_str() == lower)
            .ok_or_else(|| Error::Unsupported(format!("unknown orbit label '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub d: usize,
    pub sector: ParitySector,
    /// Kernel dimension equals `d`; false for the zero state.
    pub is_pure: bool,
    /// Annihilator-kernel dimension, 0 for the zero state.
    pub kernel_dim: usize,
    pub moment_rank: Option<usize>,
    pub q2: Option<[f64; 2]>,
    /// `T_phi phi` vanishes (d = 6 only).
    pub dual_zero: Option<bool>,
    /// `(phi, phi)` for d = 4.
    pub pairing_self: Option<[f64; 2]>,
    /// `v_phi` vanishes (d = 5 only).
    pub vphi_zero: Option<bool>,
    /// `rank K_P` for pure three-fermion d = 6 states.
    pub k_rank: Option<usize>,
    /// Three-fermion class from `rank K_P`.
    pub three_fermion_label: Option<OrbitLabel>,
    pub orbit_label: OrbitLabel,
    pub tolerances: Tolerances,
}

/// Annihilator subspace `{x : x phi = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub dim: usize,
    pub basis: Vec<CliffordVector>,
}

fn fixed_sector(phi: &FockState) -> Result<ParitySector> {
    match phi.parity_sector() {
        ParitySector::Mixed => Err(Error::WrongSector(ParitySector::Mixed)),
        s => Ok(s),
    }
}

/// Matrix of `(u, v) -> sum u_j f^j+ phi + v_j f_j phi`, columns ordered
/// creations then annihilations.
fn action_matrix(phi: &FockState) -> CMatrix {
    let d = phi.d();
    let n = phi.dim();
    let mut m = CMatrix::zeros(n, 2 * d);
    let mut buf = vec![cr(0.0); n];
    for j in 0..d {
        buf.fill(cr(0.0));
        create_into(j, phi.amplitudes(), cr(1.0), &mut buf);
        m.column_mut(j).copy_from_slice(&buf);
        buf.fill(cr(0.0));
        annihilate_into(j, phi.amplitudes(), cr(1.0), &mut buf);
        m.column_mut(d + j).copy_from_slice(&buf);
    }
    m
}

pub fn annihilator_kernel(phi: &FockState) -> Result<Kernel> {
    annihilator_kernel_with(phi, KERNEL_TOL)
}

pub fn annihilator_kernel_with(phi: &FockState, rel: f64) -> Result<Kernel> {
    if phi.is_zero() {
        return Err(Error::ZeroState);
    }
    let basis: Vec<CliffordVector> = null_space(&action_matrix(phi), rel)
        .iter()
        .map(CliffordVector::from_coords)
        .collect();
    Ok(Kernel {
        dim: basis.len(),
        basis,
    })
}

pub fn is_pure_spinor(phi: &FockState) -> Result<bool> {
    Ok(annihilator_kernel(phi)?.dim == phi.d())
}

/// `lambda exp(B_op) f_{v_1}^+ ... f_{v_k}^+ |0>` with
/// `f_v^+ = sum_i v_i f^i+` and `B_op = ½ B_ij f^i+ f^j+`.
pub fn pure_spinor_generate(
    lambda: Complex64,
    b: &CMatrix,
    vs: &[Vec<Complex64>],
) -> Result<FockState> {
    let d = b.nrows();
    if lambda == cr(0.0) {
        return Err(Error::Premise("lambda must be nonzero".into()));
    }
    let b = SpinGenerator::from_b(b.clone())?.b().clone();
    for v in vs {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: v.len(),
            });
        }
    }
    if !vs.is_empty() {
        let m = CMatrix::from_fn(vs.len(), d, |r, c| vs[r][c]);
        if vs.len() > d || rank(&m, KERNEL_TOL) < vs.len() {
            return Err(Error::LinearlyDependent);
        }
    }
    let mut phi = FockState::vacuum(d)?;
    for v in vs.iter().rev() {
        let x = CliffordVector::new(v.clone(), vec![cr(0.0); d])?;
        phi = crate::clifford::apply_vector(&x, &phi)?;
    }
    Ok(exp_pair_creation(&b, 1.0, &phi)?.scale(lambda))
}

fn is_small(value: f64, norm: f64, degree: i32, tol: f64) -> bool {
    value <= tol * norm.powi(degree)
}

/// Lift of the moment map to a Fock operator, applied to `phi`.
pub fn freudenthal_dual(phi: &FockState, m: &MomentMapMatrix) -> Result<FockState> {
    let gen = SpinGenerator::from_vector_matrix(m.matrix(), f64::INFINITY)?;
    gen.apply(phi)
}

/// Five-orbit decision chain for d = 6 states of either sector.
fn freudenthal_chain(
    phi: &FockState,
    tol: &Tolerances,
) -> Result<(OrbitLabel, Option<usize>, Option<[f64; 2]>, Option<bool>)> {
    if phi.is_zero() {
        return Ok((OrbitLabel::Rank0, Some(0), Some([0.0, 0.0]), Some(true)));
    }
    let norm = phi.norm();
    let m = moment_map(phi)?;
    let q2 = q_from_moment(&m, 2)[1];
    let moment_zero = max_abs(m.matrix()) <= tol.moment_zero * norm * norm;
    let moment_rank = if moment_zero { 0 } else { rank(m.matrix(), tol.rank) };
    let dual = freudenthal_dual(phi, &m)?;
    let dual_zero = is_small(dual.max_abs(), norm, 3, tol.zero);
    let label = if !is_small(q2.norm(), norm, 4, tol.zero) {
        OrbitLabel::Rank4
    } else if !dual_zero {
        OrbitLabel::Rank3
    } else if !moment_zero {
        OrbitLabel::Rank2
    } else {
        OrbitLabel::Rank1
    };
    Ok((label, Some(moment_rank), Some(pair(q2)), Some(dual_zero)))
}

fn base_report(phi: &FockState, sector: ParitySector, tol: &Tolerances) -> Result<ClassificationReport> {
    let kernel_dim = if phi.is_zero() {
        0
    } else {
        annihilator_kernel_with(phi, tol.kernel)?.dim
    };
    Ok(ClassificationReport {
        d: phi.d(),
        sector,
        is_pure: !phi.is_zero() && kernel_dim == phi.d(),
        kernel_dim,
        moment_rank: None,
        q2: None,
        dual_zero: None,
        pairing_self: None,
        vphi_zero: None,
        k_rank: None,
        three_fermion_label: None,
        orbit_label: OrbitLabel::Null,
        tolerances: *tol,
    })
}

pub fn classify_d6_even(phi: &FockState) -> Result<ClassificationReport> {
    classify_d6_even_with(phi, &Tolerances::default())
}

pub fn classify_d6_even_with(phi: &FockState, tol: &Tolerances) -> Result<ClassificationReport> {
    check_d6(phi, ParitySector::Even)?;
    let mut r = base_report(phi, ParitySector::Even, tol)?;
    let (label, rank, q2, dual_zero) = freudenthal_chain(phi, tol)?;
    r.orbit_label = label;
    r.moment_rank = rank;
    r.q2 = q2;
    r.dual_zero = dual_zero;
    Ok(r)
}

/// d = 6 odd states: the same five-orbit chain, plus the three-fermion
/// class when only three-particle amplitudes are present.
pub fn classify_d6_odd(phi: &FockState) -> Result<ClassificationReport> {
    classify_d6_odd_with(phi, &Tolerances::default())
}

pub fn classify_d6_odd_with(phi: &FockState, tol: &Tolerances) -> Result<ClassificationReport> {
    check_d6(phi, ParitySector::Odd)?;
    let mut r = base_report(phi, ParitySector::Odd, tol)?;
    let (label, rank, q2, dual_zero) = freudenthal_chain(phi, tol)?;
    r.orbit_label = label;
    r.moment_rank = rank;
    r.q2 = q2;
    r.dual_zero = dual_zero;
    if !phi.is_zero() && is_three_fermion(phi) {
        let (k_rank, label) = three_fermion_class(phi, tol)?;
        r.k_rank = Some(k_rank);
        r.three_fermion_label = Some(label);
    }
    Ok(r)
}

fn check_d6(phi: &FockState, sector: ParitySector) -> Result<()> {
    if phi.d() != 6 {
        return Err(Error::Unsupported(format!("expected d = 6, got {}", phi.d())));
    }
    let s = fixed_sector(phi)?;
    if !phi.is_zero() && s != sector {
        return Err(Error::WrongSector(s));
    }
    Ok(())
}

fn is_three_fermion(phi: &FockState) -> bool {
    phi.amplitudes()
        .iter()
        .enumerate()
        .all(|(mask, z)| mask.count_ones() == 3 || *z == cr(0.0))
}

fn three_fermion_class(phi: &FockState, tol: &Tolerances) -> Result<(usize, OrbitLabel)> {
    let p = OddD6::from_state(phi)?;
    let k = k_matrix(&p.p)?;
    let norm = phi.norm();
    let r = if is_small(max_abs(&k), norm, 2, tol.zero) {
        0
    } else {
        rank(&k, tol.rank)
    };
    let label = match r {
        6 => OrbitLabel::Ghz,
        3 => OrbitLabel::W,
        1 => OrbitLabel::Bisep,
        0 => OrbitLabel::Sep,
        other => {
            return Err(Error::Premise(format!(
                "rank K_P = {other} does not match a three-fermion class"
            )))
        }
    };
    Ok((r, label))
}

/// Class of a pure three-fermion d = 6 state from `rank K_P`
/// (6, 3, 1, 0 for GHZ, W, biseparable, separable).
pub fn classify_d6_odd_threefermion(phi: &FockState) -> Result<OrbitLabel> {
    check_d6(phi, ParitySector::Odd)?;
    if !is_three_fermion(phi) {
        return Err(Error::Premise(
            "one- or five-particle amplitudes present; use the generic odd report".into(),
        ));
    }
    if phi.is_zero() {
        return Err(Error::ZeroState);
    }
    Ok(three_fermion_class(phi, &Tolerances::default())?.1)
}

/// Two-orbit classification for `d <= 5`.
pub fn classify_small(phi: &FockState) -> Result<ClassificationReport> {
    classify_small_with(phi, &Tolerances::default())
}

pub fn classify_small_with(phi: &FockState, tol: &Tolerances) -> Result<ClassificationReport> {
    let d = phi.d();
    if d > 5 {
        return Err(Error::Unsupported(format!("small classifier covers d <= 5, got {d}")));
    }
    let sector = fixed_sector(phi)?;
    let mut r = base_report(phi, sector, tol)?;
    if phi.is_zero() {
        r.orbit_label = OrbitLabel::Null;
        return Ok(r);
    }
    let norm = phi.norm();
    r.orbit_label = match d {
        0..=3 => OrbitLabel::Pure,
        4 => {
            let p = mukai_pairing(phi, phi)?;
            r.pairing_self = Some(pair(p));
            if is_small(p.norm(), norm, 2, tol.zero) {
                OrbitLabel::Pure
            } else {
                OrbitLabel::Generic
            }
        }
        _ => {
            let v = vector_covariant(phi)?;
            let zero = is_small(v.max_abs(), norm, 2, tol.zero);
            r.vphi_zero = Some(zero);
            if zero {
                OrbitLabel::Pure
            } else {
                OrbitLabel::Generic
            }
        }
    };
    if d == 2 {
        let m = moment_map(phi)?;
        r.moment_rank = Some(if m.is_zero(norm * norm) { 0 } else { rank(m.matrix(), tol.rank) });
    }
    Ok(r)
}

/// Dispatches on `(d, sector)`.
pub fn classify(phi: &FockState) -> Result<ClassificationReport> {
    classify_with(phi, &Tolerances::default())
}

pub fn classify_with(phi: &FockState, tol: &Tolerances) -> Result<ClassificationReport> {
    let sector = fixed_sector(phi)?;
    match (phi.d(), sector) {
        (0..=5, _) => classify_small_with(phi, tol),
        (6, ParitySector::Odd) => classify_d6_odd_with(phi, tol),
        (6, _) => classify_d6_even_with(phi, tol),
        (d, _) => Err(Error::Unsupported(format!("no orbit classification for d = {d}"))),
    }
}

/// Generator scale used by [`orbit_sample`].
pub const SAMPLE_SCALE: f64 = 0.4;
/// Exponential factors per sampled group element.
pub const SAMPLE_FACTORS: usize = 2;

/// Transports `phi` by `count` random identity-component group elements.
/// Sample `i` depends only on `(seed, i)`.
pub fn orbit_sample(phi: &FockState, seed: u64, count: usize) -> Result<Vec<FockState>> {
    use rand::SeedableRng;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let el = SpinElement::random(phi.d(), SAMPLE_FACTORS, SAMPLE_SCALE, &mut rng);
            el.apply(phi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::random_state;
    use crate::linalg::c;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_antisym(d: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SpinGenerator::random(d, 1.0, &mut rng).b().clone()
    }

    #[test]
    fn kernel_of_vacuum_is_annihilators() {
        let d = 4;
        let k = annihilator_kernel(&FockState::vacuum(d).unwrap()).unwrap();
        assert_eq!(k.dim, d);
        for x in &k.basis {
            assert!(x.u.iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn kernel_of_slater_state() {
        let phi = FockState::basis(5, &[1, 2, 3]).unwrap();
        let k = annihilator_kernel(&phi).unwrap();
        assert_eq!(k.dim, 5);
        for x in &k.basis {
            assert!(crate::clifford::apply_vector(x, &phi).unwrap().max_abs() < 1e-12);
            // only creators 1..3 and annihilators 4..5
            assert!(x.u[3].norm() < 1e-12 && x.u[4].norm() < 1e-12);
            assert!(x.v[0].norm() < 1e-12 && x.v[1].norm() < 1e-12 && x.v[2].norm() < 1e-12);
        }
    }

    #[test]
    fn ghz_like_has_trivial_kernel() {
        let mut phi = FockState::vacuum(6).unwrap();
        phi.set(63, cr(1.0));
        assert_eq!(annihilator_kernel(&phi).unwrap().dim, 0);
        assert!(!is_pure_spinor(&phi).unwrap());
        assert_eq!(annihilator_kernel(&FockState::zeros(3).unwrap()), Err(Error::ZeroState));
    }

    #[test]
    fn generated_pure_spinors() {
        let d = 5;
        assert_eq!(
            pure_spinor_generate(cr(1.0), &CMatrix::zeros(d, d), &[]).unwrap(),
            FockState::vacuum(d).unwrap()
        );
        let full: Vec<Vec<Complex64>> = (0..d)
            .map(|i| (0..d).map(|j| cr(if i == j { 1.0 } else { 0.0 })).collect())
            .collect();
        assert_eq!(
            pure_spinor_generate(cr(1.0), &CMatrix::zeros(d, d), &full).unwrap(),
            FockState::basis(d, &[1, 2, 3, 4, 5]).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 0..=d {
            let vs: Vec<Vec<Complex64>> = (0..k)
                .map(|_| (0..d).map(|_| crate::fock::complex_normal(&mut rng)).collect())
                .collect();
            let phi = pure_spinor_generate(c(0.5, 2.0), &random_antisym(d, k as u64), &vs).unwrap();
            assert!(is_pure_spinor(&phi).unwrap(), "k = {k}");
        }
        let dep = vec![full[0].clone(), full[0].clone()];
        assert_eq!(
            pure_spinor_generate(cr(1.0), &CMatrix::zeros(d, d), &dep),
            Err(Error::LinearlyDependent)
        );
        assert!(pure_spinor_generate(cr(0.0), &CMatrix::zeros(d, d), &[]).is_err());
    }

    #[test]
    fn small_dimensions() {
        for d in 1..=3 {
            for sector in [ParitySector::Even, ParitySector::Odd] {
                let phi = random_state(d, sector, 3).unwrap();
                let r = classify_small(&phi).unwrap();
                assert_eq!(r.orbit_label, OrbitLabel::Pure);
                assert!(r.is_pure);
            }
        }
        let slater = FockState::basis(4, &[1, 2]).unwrap();
        assert_eq!(classify_small(&slater).unwrap().orbit_label, OrbitLabel::Pure);
        let two = &slater + &FockState::basis(4, &[3, 4]).unwrap();
        let r = classify_small(&two).unwrap();
        assert_eq!(r.orbit_label, OrbitLabel::Generic);
        assert!(!r.is_pure);
        let r = classify_small(&FockState::vacuum(5).unwrap()).unwrap();
        assert_eq!(r.orbit_label, OrbitLabel::Pure);
        assert_eq!(r.kernel_dim, 5);
        assert_eq!(
            classify_small(&FockState::zeros(4).unwrap()).unwrap().orbit_label,
            OrbitLabel::Null
        );
        assert!(classify_small(&random_state(4, ParitySector::Mixed, 1).unwrap()).is_err());
    }

    #[test]
    fn d5_generic_state() {
        let mut phi = FockState::vacuum(5).unwrap();
        phi.set(0b00011, cr(1.0));
        phi.set(0b01111, cr(1.0));
        phi.set(0b11110, cr(0.5));
        let r = classify_small(&phi).unwrap();
        assert_eq!(r.orbit_label, OrbitLabel::Generic);
        assert!(!r.is_pure);
    }

    #[test]
    fn label_round_trip() {
        for s in ["rank4", "GHZ", "bisep", "null"] {
            let l: OrbitLabel = s.parse().unwrap();
            assert_eq!(l.as_str(), s.to_ascii_lowercase());
        }
        assert!("rank9".parse::<OrbitLabel>().is_err());
    }

    #[test]
    fn orbit_sample_is_deterministic() {
        let phi = FockState::vacuum(4).unwrap();
        let a = orbit_sample(&phi, 7, 4).unwrap();
        let b = orbit_sample(&phi, 7, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }
}

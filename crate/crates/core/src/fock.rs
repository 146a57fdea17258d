//! Dense states of the fermionic Fock space over `d` modes.
//!
//! A state stores one complex amplitude per occupation bitmask. Bit `i - 1`
//! of the mask is set when mode `i` is occupied, and the amplitude at mask
//! `S = {m1 < m2 < ... < mk}` multiplies the ordered monomial
//! `f^{m1}+ f^{m2}+ ... f^{mk}+ |0>`.
//!
//! Every sign in the crate follows from that ordering: a creation operator
//! `f^i+` acting on `|S>` picks up `(-1)^{#(occupied modes below i)}`
//! while moving past the lower creators. The same rule gives the
//! annihilation sign, so the anticommutation relations hold with exact
//! integer signs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mode count accepted by default constructors.
pub const DEFAULT_MAX_MODES: usize = 12;
/// Mode count accepted with an explicit override.
pub const HARD_MAX_MODES: usize = 16;

/// Particle-number parity of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParitySector {
    Even,
    Odd,
    Mixed,
}

impl ParitySector {
    /// Whether a bitmask belongs to this sector.
    pub fn contains(self, mask: usize) -> bool {
        match self {
            ParitySector::Even => mask.count_ones() % 2 == 0,
            ParitySector::Odd => mask.count_ones() % 2 == 1,
            ParitySector::Mixed => true,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            ParitySector::Even => ParitySector::Odd,
            ParitySector::Odd => ParitySector::Even,
            ParitySector::Mixed => ParitySector::Mixed,
        }
    }
}

impl fmt::Display for ParitySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParitySector::Even => "even",
            ParitySector::Odd => "odd",
            ParitySector::Mixed => "mixed",
        })
    }
}

impl std::str::FromStr for ParitySector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(ParitySector::Even),
            "odd" => Ok(ParitySector::Odd),
            "mixed" => Ok(ParitySector::Mixed),
            other => Err(Error::Unsupported(format!("parity sector `{other}`"))),
        }
    }
}

/// `(-1)^n` as a float.
#[inline]
pub(crate) fn parity_sign(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign picked up by `f^{bit+1}+` or `f_{bit+1}` acting on `mask`.
#[inline]
pub fn mode_sign(mask: usize, bit: usize) -> f64 {
    parity_sign((mask & ((1usize << bit) - 1)).count_ones())
}

/// Sign of the shuffle that sorts the concatenation of the ascending lists
/// `left` and `right` (disjoint masks): the number of pairs `s > t` with
/// `s` in `left` and `t` in `right`.
#[inline]
pub fn shuffle_sign(left: usize, right: usize) -> f64 {
    let mut inversions = 0;
    let mut rest = right;
    while rest != 0 {
        let t = rest.trailing_zeros() as usize;
        inversions += (left >> (t + 1)).count_ones();
        rest &= rest - 1;
    }
    parity_sign(inversions)
}

/// Converts 1-based ascending mode indices to a bitmask.
pub fn modes_to_mask(d: usize, modes: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &m in modes {
        if m == 0 || m > d {
            return Err(Error::ModeOutOfRange { index: m, d });
        }
        mask |= 1 << (m - 1);
    }
    Ok(mask)
}

/// 1-based ascending mode list of a bitmask.
pub fn mask_to_modes(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    d: usize,
    amp: Vec<Complex64>,
}

impl FockState {
    /// Zero state on `d` modes, `1 <= d <= DEFAULT_MAX_MODES`.
    pub fn zeros(d: usize) -> Result<Self> {
        Self::zeros_with_limit(d, DEFAULT_MAX_MODES)
    }

    /// Zero state with a caller-chosen cap, itself bounded by `HARD_MAX_MODES`.
    pub fn zeros_with_limit(d: usize, max: usize) -> Result<Self> {
        let max = max.min(HARD_MAX_MODES);
        if d == 0 || d > max {
            return Err(Error::UnsupportedModeCount { d, max });
        }
        Ok(FockState {
            d,
            amp: vec![Complex64::new(0.0, 0.0); 1 << d],
        })
    }

    /// Fock vacuum `|0>`.
    pub fn vacuum(d: usize) -> Result<Self> {
        let mut s = Self::zeros(d)?;
        s.amp[0] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Ordered monomial `f^{m1}+ ... f^{mk}+ |0>` for 1-based ascending modes.
    pub fn basis(d: usize, modes: &[usize]) -> Result<Self> {
        let mask = modes_to_mask(d, modes)?;
        let mut s = Self::zeros(d)?;
        s.amp[mask] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn basis_mask(d: usize, mask: usize) -> Result<Self> {
        let mut s = Self::zeros(d)?;
        if mask >= s.amp.len() {
            return Err(Error::ModeOutOfRange {
                index: usize::BITS as usize - mask.leading_zeros() as usize,
                d,
            });
        }
        s.amp[mask] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wraps a raw amplitude vector whose length must be a power of two.
    pub fn from_amplitudes(amp: Vec<Complex64>) -> Result<Self> {
        let len = amp.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Unsupported(format!(
                "amplitude vector of length {len}"
            )));
        }
        let d = len.trailing_zeros() as usize;
        if d > HARD_MAX_MODES {
            return Err(Error::UnsupportedModeCount {
                d,
                max: HARD_MAX_MODES,
            });
        }
        Ok(FockState { d, amp })
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amp
    }

    #[inline]
    pub fn get(&self, mask: usize) -> Complex64 {
        self.amp[mask]
    }

    #[inline]
    pub fn set(&mut self, mask: usize, value: Complex64) {
        self.amp[mask] = value;
    }

    /// Amplitude of the ordered monomial on the given 1-based modes.
    pub fn amplitude(&self, modes: &[usize]) -> Result<Complex64> {
        Ok(self.amp[modes_to_mask(self.d, modes)?])
    }

    pub fn full_mask(&self) -> usize {
        self.amp.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.amp.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.amp.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Parity sector from the exact support of the amplitudes. The zero
    /// state reports `Even`.
    pub fn parity_sector(&self) -> ParitySector {
        let mut even = false;
        let mut odd = false;
        for (mask, a) in self.amp.iter().enumerate() {
            if a.re != 0.0 || a.im != 0.0 {
                if mask.count_ones() % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (_, false) => ParitySector::Even,
            (false, true) => ParitySector::Odd,
            (true, true) => ParitySector::Mixed,
        }
    }

    /// Component with exactly `k` particles.
    pub fn grade(&self, k: usize) -> FockState {
        let mut out = self.zeroed();
        for (mask, a) in self.amp.iter().enumerate() {
            if mask.count_ones() as usize == k {
                out.amp[mask] = *a;
            }
        }
        out
    }

    /// Projection onto a parity sector.
    pub fn project(&self, sector: ParitySector) -> FockState {
        let mut out = self.zeroed();
        for (mask, a) in self.amp.iter().enumerate() {
            if sector.contains(mask) {
                out.amp[mask] = *a;
            }
        }
        out
    }

    pub fn zeroed(&self) -> FockState {
        FockState {
            d: self.d,
            amp: vec![Complex64::new(0.0, 0.0); self.amp.len()],
        }
    }

    pub fn scale(&self, c: Complex64) -> FockState {
        FockState {
            d: self.d,
            amp: self.amp.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Complex64, other: &FockState) -> Result<()> {
        check_same_d(self.d, other.d)?;
        for (a, b) in self.amp.iter_mut().zip(&other.amp) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest amplitude difference, for test comparisons.
    pub fn max_diff(&self, other: &FockState) -> f64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn normalized(&self) -> FockState {
        let n = self.norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scale(Complex64::new(1.0 / n, 0.0))
        }
    }
}

#[inline]
pub(crate) fn check_same_d(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

#[inline]
fn check_mode(i: usize, d: usize) -> Result<usize> {
    if i == 0 || i > d {
        return Err(Error::ModeOutOfRange { index: i, d });
    }
    Ok(i - 1)
}

/// `f^i+ |phi>`, 1-based mode index.
pub fn create(i: usize, phi: &FockState) -> Result<FockState> {
    let bit = check_mode(i, phi.d)?;
    let mut out = phi.zeroed();
    create_into(bit, phi.amplitudes(), Complex64::new(1.0, 0.0), &mut out.amp);
    Ok(out)
}

/// `f_i |phi>`, 1-based mode index.
pub fn annihilate(i: usize, phi: &FockState) -> Result<FockState> {
    let bit = check_mode(i, phi.d)?;
    let mut out = phi.zeroed();
    annihilate_into(bit, phi.amplitudes(), Complex64::new(1.0, 0.0), &mut out.amp);
    Ok(out)
}

/// `out += c * f^{bit+1}+ src` on raw amplitude slices.
#[inline]
pub(crate) fn create_into(bit: usize, src: &[Complex64], c: Complex64, out: &mut [Complex64]) {
    let m = 1usize << bit;
    for (mask, a) in src.iter().enumerate() {
        if mask & m == 0 && (a.re != 0.0 || a.im != 0.0) {
            out[mask | m] += c * a * mode_sign(mask, bit);
        }
    }
}

/// `out += c * f_{bit+1} src` on raw amplitude slices.
#[inline]
pub(crate) fn annihilate_into(
    bit: usize,
    src: &[Complex64],
    c: Complex64,
    out: &mut [Complex64],
) {
    let m = 1usize << bit;
    for (mask, a) in src.iter().enumerate() {
        if mask & m != 0 && (a.re != 0.0 || a.im != 0.0) {
            out[mask ^ m] += c * a * mode_sign(mask, bit);
        }
    }
}

/// Exterior product `phi ∧ psi`.
pub fn wedge(phi: &FockState, psi: &FockState) -> Result<FockState> {
    check_same_d(phi.d, psi.d)?;
    let full = phi.full_mask();
    let mut out = phi.zeroed();
    for (s, a) in phi.amp.iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        // enumerate submasks of the complement of s
        let comp = full & !s;
        let mut t = comp;
        loop {
            let b = psi.amp[t];
            if b.re != 0.0 || b.im != 0.0 {
                out.amp[s | t] += a * b * shuffle_sign(s, t);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & comp;
        }
    }
    Ok(out)
}

/// Sign `(-1)^{k(k-1)/2}` of the transpose on a `k`-particle monomial.
#[inline]
pub fn transpose_sign(k: u32) -> f64 {
    parity_sign(k * k.saturating_sub(1) / 2)
}

/// Reversal antiautomorphism: each `k`-particle component is multiplied by
/// `(-1)^{k(k-1)/2}`.
pub fn transpose(phi: &FockState) -> FockState {
    FockState {
        d: phi.d,
        amp: phi
            .amp
            .iter()
            .enumerate()
            .map(|(mask, a)| a * transpose_sign(mask.count_ones()))
            .collect(),
    }
}

/// Coefficient of `f^1+ ... f^d+ |0>`.
pub fn top_coefficient(phi: &FockState) -> Complex64 {
    phi.amp[phi.full_mask()]
}

/// `<phi|psi>`, conjugate-linear in `phi`.
pub fn hermitian_inner(phi: &FockState, psi: &FockState) -> Result<Complex64> {
    check_same_d(phi.d, psi.d)?;
    Ok(phi
        .amp
        .iter()
        .zip(&psi.amp)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

pub fn norm(phi: &FockState) -> f64 {
    phi.norm()
}

/// Standard complex normal sample `(x + iy)/sqrt(2)`.
pub(crate) fn complex_normal<R: rand::Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// I.i.d. standard complex normal amplitudes on the sector's basis,
/// deterministic in `seed`.
pub fn random_state(d: usize, sector: ParitySector, seed: u64) -> Result<FockState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(d, sector, &mut rng)
}

pub fn random_state_with<R: rand::Rng>(
    d: usize,
    sector: ParitySector,
    rng: &mut R,
) -> Result<FockState> {
    let mut s = FockState::zeros(d)?;
    for mask in 0..s.dim() {
        if sector.contains(mask) {
            s.amp[mask] = complex_normal(rng);
        }
    }
    Ok(s)
}

impl Add for &FockState {
    type Output = FockState;

    fn add(self, rhs: &FockState) -> FockState {
        assert_eq!(self.d, rhs.d, "mode count mismatch");
        FockState {
            d: self.d,
            amp: self.amp.iter().zip(&rhs.amp).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FockState {
    type Output = FockState;

    fn sub(self, rhs: &FockState) -> FockState {
        assert_eq!(self.d, rhs.d, "mode count mismatch");
        FockState {
            d: self.d,
            amp: self.amp.iter().zip(&rhs.amp).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&FockState> for FockState {
    fn add_assign(&mut self, rhs: &FockState) {
        assert_eq!(self.d, rhs.d, "mode count mismatch");
        for (a, b) in self.amp.iter_mut().zip(&rhs.amp) {
            *a += b;
        }
    }
}

impl Neg for &FockState {
    type Output = FockState;

    fn neg(self) -> FockState {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &FockState {
    type Output = FockState;

    fn mul(self, c: Complex64) -> FockState {
        self.scale(c)
    }
}

impl Mul<f64> for &FockState {
    type Output = FockState;

    fn mul(self, c: f64) -> FockState {
        self.scale(Complex64::new(c, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn create_examples() {
        let vac = FockState::vacuum(3).unwrap();
        assert_eq!(create(1, &vac).unwrap(), FockState::basis(3, &[1]).unwrap());

        let s13 = FockState::basis(3, &[1, 3]).unwrap();
        let out = create(2, &s13).unwrap();
        assert_eq!(out.amplitude(&[1, 2, 3]).unwrap(), c(-1.0, 0.0));

        let s2 = FockState::basis(3, &[2]).unwrap();
        assert!(create(2, &s2).unwrap().is_zero());
    }

    #[test]
    fn annihilate_examples() {
        let s12 = FockState::basis(2, &[1, 2]).unwrap();
        assert_eq!(annihilate(1, &s12).unwrap(), FockState::basis(2, &[2]).unwrap());
        assert_eq!(
            annihilate(2, &s12).unwrap().amplitude(&[1]).unwrap(),
            c(-1.0, 0.0)
        );
        assert!(annihilate(1, &FockState::vacuum(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn mode_index_errors() {
        let vac = FockState::vacuum(3).unwrap();
        assert_eq!(
            create(0, &vac),
            Err(Error::ModeOutOfRange { index: 0, d: 3 })
        );
        assert_eq!(
            annihilate(4, &vac),
            Err(Error::ModeOutOfRange { index: 4, d: 3 })
        );
        assert!(FockState::zeros(13).is_err());
        assert!(FockState::zeros_with_limit(14, HARD_MAX_MODES).is_ok());
        assert!(FockState::zeros_with_limit(17, 20).is_err());
    }

    #[test]
    fn wedge_examples() {
        let b = |m: &[usize]| FockState::basis(4, m).unwrap();
        assert_eq!(wedge(&b(&[1]), &b(&[2])).unwrap(), b(&[1, 2]));
        assert_eq!(wedge(&b(&[2]), &b(&[1])).unwrap(), -&b(&[1, 2]));
        assert!(wedge(&b(&[1, 2]), &b(&[1])).unwrap().is_zero());
        assert_eq!(wedge(&b(&[1, 2]), &b(&[3, 4])).unwrap(), b(&[1, 2, 3, 4]));
        assert_eq!(wedge(&b(&[1, 3]), &b(&[2, 4])).unwrap(), -&b(&[1, 2, 3, 4]));
    }

    /// Inversion count of an explicit index sequence.
    fn inversion_sign(seq: &[usize]) -> f64 {
        let mut n = 0;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    n += 1;
                }
            }
        }
        parity_sign(n)
    }

    #[test]
    fn shuffle_sign_matches_inversion_count() {
        let d = 6;
        for s in 0usize..(1 << d) {
            for t in 0usize..(1 << d) {
                if s & t != 0 {
                    continue;
                }
                let mut seq = mask_to_modes(s);
                seq.extend(mask_to_modes(t));
                assert_eq!(shuffle_sign(s, t), inversion_sign(&seq), "{s:b} {t:b}");
            }
        }
    }

    #[test]
    fn transpose_examples() {
        let b = |m: &[usize]| FockState::basis(4, m).unwrap();
        assert_eq!(transpose(&b(&[])), b(&[]));
        assert_eq!(transpose(&b(&[1])), b(&[1]));
        assert_eq!(transpose(&b(&[1, 2])), -&b(&[1, 2]));
        assert_eq!(transpose(&b(&[1, 2, 3])), -&b(&[1, 2, 3]));
        assert_eq!(transpose(&b(&[1, 2, 3, 4])), b(&[1, 2, 3, 4]));
    }

    #[test]
    fn top_coefficient_examples() {
        let d = 5;
        let top = FockState::basis(d, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(top_coefficient(&top), c(1.0, 0.0));
        assert_eq!(top_coefficient(&FockState::vacuum(d).unwrap()), c(0.0, 0.0));
        let mix = &top.scale(c(3.0, 0.0)) + &FockState::basis(d, &[1]).unwrap().scale(c(0.0, 2.0));
        assert_eq!(top_coefficient(&mix), c(3.0, 0.0));
    }

    #[test]
    fn inner_product_examples() {
        let b = |m: &[usize]| FockState::basis(3, m).unwrap();
        assert_eq!(hermitian_inner(&b(&[1]), &b(&[1])).unwrap(), c(1.0, 0.0));
        assert_eq!(hermitian_inner(&b(&[1]), &b(&[2])).unwrap(), c(0.0, 0.0));
        let v = FockState::vacuum(3).unwrap().scale(c(0.0, 2.0));
        assert_eq!(hermitian_inner(&v, &v).unwrap(), c(4.0, 0.0));
        assert_eq!(norm(&v), 2.0);
        assert!(hermitian_inner(&v, &FockState::vacuum(2).unwrap()).is_err());
    }

    #[test]
    fn random_state_sectors() {
        let s = random_state(2, ParitySector::Even, 7).unwrap();
        for mask in [1usize, 2] {
            assert_eq!(s.get(mask), c(0.0, 0.0));
        }
        assert_eq!(s.parity_sector(), ParitySector::Even);

        let s = random_state(6, ParitySector::Odd, 11).unwrap();
        assert_eq!(s.parity_sector(), ParitySector::Odd);
        assert_eq!(random_state(6, ParitySector::Odd, 11).unwrap(), s);
        assert_ne!(random_state(6, ParitySector::Odd, 12).unwrap(), s);
        assert_eq!(
            random_state(3, ParitySector::Mixed, 1).unwrap().parity_sector(),
            ParitySector::Mixed
        );
    }

    #[test]
    fn car_exact_on_basis_states() {
        for d in 1..=5 {
            for mask in 0..(1usize << d) {
                let phi = FockState::basis_mask(d, mask).unwrap();
                for i in 1..=d {
                    for j in 1..=d {
                        let ab = annihilate(i, &create(j, &phi).unwrap()).unwrap();
                        let ba = create(j, &annihilate(i, &phi).unwrap()).unwrap();
                        let expected = if i == j { phi.clone() } else { phi.zeroed() };
                        assert_eq!(&ab + &ba, expected);
                        let aa = &annihilate(i, &annihilate(j, &phi).unwrap()).unwrap()
                            + &annihilate(j, &annihilate(i, &phi).unwrap()).unwrap();
                        assert!(aa.is_zero());
                        let cc = &create(i, &create(j, &phi).unwrap()).unwrap()
                            + &create(j, &create(i, &phi).unwrap()).unwrap();
                        assert!(cc.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn create_is_left_wedge_and_annihilate_is_adjoint() {
        let d = 5;
        let phi = random_state(d, ParitySector::Mixed, 3).unwrap();
        let psi = random_state(d, ParitySector::Mixed, 4).unwrap();
        for i in 1..=d {
            let e = FockState::basis(d, &[i]).unwrap();
            assert!(create(i, &phi).unwrap().max_diff(&wedge(&e, &phi).unwrap()) < 1e-15);
            let lhs = hermitian_inner(&create(i, &phi).unwrap(), &psi).unwrap();
            let rhs = hermitian_inner(&phi, &annihilate(i, &psi).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn grade_and_project() {
        let phi = random_state(4, ParitySector::Mixed, 9).unwrap();
        let even = phi.project(ParitySector::Even);
        let odd = phi.project(ParitySector::Odd);
        assert_eq!(&even + &odd, phi);
        let mut sum = phi.zeroed();
        for k in 0..=4 {
            sum += &phi.grade(k);
        }
        assert_eq!(sum, phi);
    }

    #[test]
    fn mask_mode_round_trip() {
        assert_eq!(modes_to_mask(6, &[1, 3, 6]).unwrap(), 0b100101);
        assert_eq!(mask_to_modes(0b100101), vec![1, 3, 6]);
        assert!(modes_to_mask(3, &[4]).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn homogeneous(d: usize, k: usize, seed: u64) -> FockState {
        random_state(d, ParitySector::Mixed, seed).unwrap().grade(k)
    }

    proptest! {
        #[test]
        fn wedge_graded_commutative(p in 0usize..=5, q in 0usize..=5, s1 in any::<u64>(), s2 in any::<u64>()) {
            let d = 5;
            let a = homogeneous(d, p, s1);
            let b = homogeneous(d, q, s2);
            let ab = wedge(&a, &b).unwrap();
            let ba = wedge(&b, &a).unwrap().scale(Complex64::new(parity_sign((p * q) as u32), 0.0));
            prop_assert!(ab.max_diff(&ba) < 1e-10);
        }

        #[test]
        fn wedge_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
            let d = 4;
            let a = random_state(d, ParitySector::Mixed, s1).unwrap();
            let b = random_state(d, ParitySector::Mixed, s2).unwrap();
            let c = random_state(d, ParitySector::Mixed, s3).unwrap();
            let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
            let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
            prop_assert!(left.max_diff(&right) < 1e-10);
        }

        #[test]
        fn transpose_involutive_antiautomorphism(s1 in any::<u64>(), s2 in any::<u64>()) {
            let d = 5;
            let a = random_state(d, ParitySector::Mixed, s1).unwrap();
            let b = random_state(d, ParitySector::Mixed, s2).unwrap();
            prop_assert_eq!(transpose(&transpose(&a)), a.clone());
            let lhs = transpose(&wedge(&a, &b).unwrap());
            let rhs = wedge(&transpose(&b), &transpose(&a)).unwrap();
            prop_assert!(lhs.max_diff(&rhs) < 1e-10);
        }
    }
}

//! Mukai pairing, moment map, trace invariants and closed-form invariants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordVector;
use crate::error::{Error, Result};
use crate::fock::{
    annihilate_into, check_same_d, create_into, shuffle_sign, transpose_sign, FockState,
    ParitySector,
};
use crate::linalg::{block_metric, cr, max_abs, rank, CMatrix};

pub mod closed;
pub mod explicit;

pub use crate::pfaffian::pfaffian;
pub use closed::{
    k_matrix, pairing_even_d4, pairing_odd_d4, quartic_even_closed, quartic_odd_closed,
    vector_covariant_closed_d5, KAPPA_EVEN, KAPPA_ODD,
};
pub use explicit::{moment_blocks_even_d6, moment_blocks_odd_d6, moment_map_explicit};

/// Relative singular-value threshold for moment-map ranks.
pub const RANK_TOL: f64 = 1e-9;
/// Moment maps with max entry below this times `|phi|^2` count as zero.
pub const ZERO_MOMENT_TOL: f64 = 1e-10;

/// `(phi, psi)`: top coefficient of `transpose(phi) ∧ psi`.
pub fn mukai_pairing(phi: &FockState, psi: &FockState) -> Result<Complex64> {
    check_same_d(phi.d(), psi.d())?;
    Ok(pairing_slices(phi.d(), phi.amplitudes(), psi.amplitudes()))
}

/// Pairing on raw amplitude slices; only complementary masks contribute.
pub(crate) fn pairing_slices(d: usize, phi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let full = (1usize << d) - 1;
    let mut total = cr(0.0);
    for (s, a) in phi.iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let t = full & !s;
        let b = psi[t];
        if b.re == 0.0 && b.im == 0.0 {
            continue;
        }
        total += a * b * (transpose_sign(s.count_ones()) * shuffle_sign(s, t));
    }
    total
}

/// Unscaled moment map `[[A, beta], [B, -A^T]]` with
/// `A^i_k = ((f^i+ f_k - ½δ^i_k) phi, phi)`, `B_jk = (f_j f_k phi, phi)` and
/// `beta^il = (f^i+ f^l+ phi, phi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMapMatrix {
    d: usize,
    m: CMatrix,
}

impl MomentMapMatrix {
    pub fn from_blocks(a: &CMatrix, b: &CMatrix, beta: &CMatrix) -> Self {
        let d = a.nrows();
        let mut m = CMatrix::zeros(2 * d, 2 * d);
        m.view_mut((0, 0), (d, d)).copy_from(a);
        m.view_mut((0, d), (d, d)).copy_from(beta);
        m.view_mut((d, 0), (d, d)).copy_from(b);
        m.view_mut((d, d), (d, d)).copy_from(&(-a.transpose()));
        MomentMapMatrix { d, m }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn a(&self) -> CMatrix {
        self.m.view((0, 0), (self.d, self.d)).into_owned()
    }

    pub fn beta(&self) -> CMatrix {
        self.m.view((0, self.d), (self.d, self.d)).into_owned()
    }

    pub fn b(&self) -> CMatrix {
        self.m.view((self.d, 0), (self.d, self.d)).into_owned()
    }

    /// `M^T g + g M`, zero for elements of `so(2d)`.
    pub fn so_residual(&self) -> f64 {
        let g = block_metric(self.d);
        max_abs(&(self.m.transpose() * &g + &g * &self.m))
    }

    pub fn rank(&self, norm_sqr: f64) -> usize {
        if self.is_zero(norm_sqr) {
            0
        } else {
            rank(&self.m, RANK_TOL)
        }
    }

    /// Max entry below `ZERO_MOMENT_TOL * norm_sqr`.
    pub fn is_zero(&self, norm_sqr: f64) -> bool {
        max_abs(&self.m) <= ZERO_MOMENT_TOL * norm_sqr
    }
}

fn fixed_sector(phi: &FockState) -> Result<ParitySector> {
    match phi.parity_sector() {
        ParitySector::Mixed => Err(Error::WrongSector(ParitySector::Mixed)),
        s => Ok(s),
    }
}

fn require_even_d(d: usize) -> Result<()> {
    if d % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "moment map needs an even mode count (d = {d} pairs opposite sectors)"
        )));
    }
    Ok(())
}

pub fn moment_map(phi: &FockState) -> Result<MomentMapMatrix> {
    moment_map_with(phi, |a, b| pairing_slices(phi.d(), a, b))
}

/// Moment map with a caller-supplied pairing on raw amplitude slices.
pub fn moment_map_with<F>(phi: &FockState, pairing: F) -> Result<MomentMapMatrix>
where
    F: Fn(&[Complex64], &[Complex64]) -> Complex64,
{
    require_even_d(phi.d())?;
    fixed_sector(phi)?;
    let d = phi.d();
    let n = phi.dim();
    let src = phi.amplitudes();
    let mut ann: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut cre: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut a = vec![cr(0.0); n];
        annihilate_into(k, src, cr(1.0), &mut a);
        ann.push(a);
        let mut c = vec![cr(0.0); n];
        create_into(k, src, cr(1.0), &mut c);
        cre.push(c);
    }
    let mut a = CMatrix::zeros(d, d);
    let mut b = CMatrix::zeros(d, d);
    let mut beta = CMatrix::zeros(d, d);
    let mut buf = vec![cr(0.0); n];
    for i in 0..d {
        for k in 0..d {
            buf.fill(cr(0.0));
            create_into(i, &ann[k], cr(1.0), &mut buf);
            a[(i, k)] = pairing(&buf, src);
        }
    }
    // pair against the traceless f^i+ f_i - ½, which matters once (phi, phi) != 0
    let self_pair = pairing(src, src);
    for i in 0..d {
        a[(i, i)] -= self_pair * 0.5;
    }
    for j in 0..d {
        for k in j + 1..d {
            buf.fill(cr(0.0));
            annihilate_into(j, &ann[k], cr(1.0), &mut buf);
            let z = pairing(&buf, src);
            b[(j, k)] = z;
            b[(k, j)] = -z;
            buf.fill(cr(0.0));
            create_into(j, &cre[k], cr(1.0), &mut buf);
            let z = pairing(&buf, src);
            beta[(j, k)] = z;
            beta[(k, j)] = -z;
        }
    }
    Ok(MomentMapMatrix::from_blocks(&a, &b, &beta))
}

/// `q_k = (8(d-1))^{2-k} / 2 * Tr(M^k)` for `k = 1..=k_max`; `q_2 = ½ Tr M^2`.
pub fn q_invariants(phi: &FockState, k_max: usize) -> Result<Vec<Complex64>> {
    let m = moment_map(phi)?;
    Ok(q_from_moment(&m, k_max))
}

pub fn q_from_moment(m: &MomentMapMatrix, k_max: usize) -> Vec<Complex64> {
    let scale = 8.0 * (m.d() as f64 - 1.0);
    let mut power = m.matrix().clone();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            power = &power * m.matrix();
        }
        let c = scale.powi(2 - k as i32) / 2.0;
        let t = power.trace() * c;
        // odd traces vanish identically for so(2d) elements
        out.push(if k % 2 == 1 { cr(0.0) } else { t });
    }
    out
}

/// Raw `½ Tr(M^k)` without the zeroing of odd `k`.
pub fn half_trace_power(m: &MomentMapMatrix, k: usize) -> Complex64 {
    let mut power = CMatrix::identity(2 * m.d(), 2 * m.d());
    for _ in 0..k {
        power = &power * m.matrix();
    }
    power.trace() * 0.5
}

/// `v_phi` in `W ⊕ W*` for odd `d`, defined by `form(u, v_phi) = (u phi, phi)`:
/// creation coefficients `2 (f_i phi, phi)`, annihilation coefficients
/// `2 (f^i+ phi, phi)`.
pub fn vector_covariant(phi: &FockState) -> Result<CliffordVector> {
    let d = phi.d();
    if d % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "vector covariant needs an odd mode count, got {d}"
        )));
    }
    fixed_sector(phi)?;
    let n = phi.dim();
    let src = phi.amplitudes();
    let mut u = vec![cr(0.0); d];
    let mut v = vec![cr(0.0); d];
    let mut buf = vec![cr(0.0); n];
    for i in 0..d {
        buf.fill(cr(0.0));
        annihilate_into(i, src, cr(1.0), &mut buf);
        u[i] = pairing_slices(d, &buf, src) * 2.0;
        buf.fill(cr(0.0));
        create_into(i, src, cr(1.0), &mut buf);
        v[i] = pairing_slices(d, &buf, src) * 2.0;
    }
    CliffordVector::new(u, v)
}

/// Invariant summary of one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub d: usize,
    pub sector: ParitySector,
    pub pairing_self: [f64; 2],
    /// `q_k` for `k = 1..=k_max` as `[re, im]`.
    pub qk: Vec<[f64; 2]>,
    pub moment_rank: Option<usize>,
    pub moment_zero: Option<bool>,
    /// Largest moment-map entry, so an all-zero map is visible as such.
    pub moment_max_abs: Option<f64>,
    /// `v_phi` as `(u, v)` coordinates for odd `d`.
    pub vphi: Option<Vec<[f64; 2]>>,
}

pub(crate) fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Collects the invariants that apply to `phi`'s mode count.
pub fn invariant_report(phi: &FockState, k_max: usize) -> Result<InvariantReport> {
    let sector = fixed_sector(phi)?;
    let d = phi.d();
    let mut report = InvariantReport {
        d,
        sector,
        pairing_self: pair(mukai_pairing(phi, phi)?),
        qk: Vec::new(),
        moment_rank: None,
        moment_zero: None,
        moment_max_abs: None,
        vphi: None,
    };
    if d % 2 == 0 {
        let m = moment_map(phi)?;
        report.qk = q_from_moment(&m, k_max).into_iter().map(pair).collect();
        report.moment_rank = Some(m.rank(phi.norm_sqr()));
        report.moment_zero = Some(m.is_zero(phi.norm_sqr()));
        report.moment_max_abs = Some(max_abs(m.matrix()));
    } else {
        let v = vector_covariant(phi)?;
        report.vphi = Some(v.u.iter().chain(v.v.iter()).copied().map(pair).collect());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{random_state, transpose, wedge};
    use crate::linalg::{c, rel_diff};

    #[test]
    fn pairing_matches_wedge_definition() {
        for d in 1..=6 {
            for sector in [ParitySector::Even, ParitySector::Odd, ParitySector::Mixed] {
                let phi = random_state(d, sector, 1).unwrap();
                let psi = random_state(d, sector, 2).unwrap();
                let want = crate::fock::top_coefficient(&wedge(&transpose(&phi), &psi).unwrap());
                let got = mukai_pairing(&phi, &psi).unwrap();
                assert!((got - want).norm() < 1e-12, "d = {d}");
            }
        }
    }

    #[test]
    fn pairing_d2() {
        let (p0, pt) = (c(0.3, 1.0), c(-2.0, 0.5));
        let (s0, st) = (c(1.5, 0.0), c(0.0, -1.0));
        let mut phi = FockState::zeros(2).unwrap();
        phi.set(0, p0);
        phi.set(3, pt);
        let mut psi = FockState::zeros(2).unwrap();
        psi.set(0, s0);
        psi.set(3, st);
        let got = mukai_pairing(&phi, &psi).unwrap();
        assert!((got - (p0 * st - pt * s0)).norm() < 1e-15);
    }

    #[test]
    fn pairing_symmetry_by_dimension() {
        for d in [2, 4, 6] {
            let phi = random_state(d, ParitySector::Even, 3).unwrap();
            let psi = random_state(d, ParitySector::Even, 4).unwrap();
            let ab = mukai_pairing(&phi, &psi).unwrap();
            let ba = mukai_pairing(&psi, &phi).unwrap();
            let sign = if d % 4 == 0 { 1.0 } else { -1.0 };
            assert!((ab - ba * sign).norm() < 1e-12);
            if d % 4 == 2 {
                assert!(mukai_pairing(&phi, &phi).unwrap().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn moment_d2_matches_matrices() {
        let (p0, pt) = (c(0.7, -0.2), c(1.3, 0.4));
        let mut phi = FockState::zeros(2).unwrap();
        phi.set(0, p0);
        phi.set(3, pt);
        let m = moment_map(&phi).unwrap();
        let z = cr(0.0);
        let want = CMatrix::from_row_slice(
            4,
            4,
            &[
                -p0 * pt, z, z, -p0 * p0,
                z, -p0 * pt, p0 * p0, z,
                z, -pt * pt, p0 * pt, z,
                pt * pt, z, z, p0 * pt,
            ],
        );
        assert!(rel_diff(m.matrix(), &want, 1.0) < 1e-14);
        let sq = m.matrix() * m.matrix();
        assert!(max_abs(&sq) < 1e-13);
    }

    #[test]
    fn moment_d2_odd_a_block() {
        let (s1, s2) = (c(0.2, 0.9), c(-1.1, 0.3));
        let mut psi = FockState::zeros(2).unwrap();
        psi.set(1, s1);
        psi.set(2, s2);
        let m = moment_map(&psi).unwrap();
        let a = CMatrix::from_row_slice(2, 2, &[s1 * s2, s2 * s2, -s1 * s1, -s1 * s2]);
        assert!(rel_diff(&m.a(), &a, 1.0) < 1e-14);
        assert_eq!(max_abs(&m.b()), 0.0);
        assert_eq!(max_abs(&m.beta()), 0.0);
        assert!(max_abs(&(m.matrix() * m.matrix())) < 1e-13);
    }

    #[test]
    fn moment_vanishes_for_d4() {
        for seed in 0..5 {
            for sector in [ParitySector::Even, ParitySector::Odd] {
                let phi = random_state(4, sector, seed).unwrap();
                let m = moment_map(&phi).unwrap();
                assert!(m.is_zero(phi.norm_sqr()));
            }
        }
    }

    #[test]
    fn moment_rejects_mixed_and_odd_d() {
        let phi = random_state(6, ParitySector::Mixed, 1).unwrap();
        assert_eq!(
            moment_map(&phi),
            Err(Error::WrongSector(ParitySector::Mixed))
        );
        assert!(moment_map(&FockState::vacuum(5).unwrap()).is_err());
    }

    #[test]
    fn moment_is_in_so() {
        let phi = random_state(6, ParitySector::Even, 7).unwrap();
        assert!(moment_map(&phi).unwrap().so_residual() < 1e-12);
    }

    #[test]
    fn trace_pairing_relation() {
        // Tr(M T) = 2 (T phi, phi)
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for sector in [ParitySector::Even, ParitySector::Odd] {
            let phi = random_state(6, sector, 8).unwrap();
            let gen = crate::spin::SpinGenerator::random(6, 1.0, &mut rng);
            let m = moment_map(&phi).unwrap();
            let lhs = (m.matrix() * gen.vector_matrix()).trace();
            let rhs = mukai_pairing(&gen.apply(&phi).unwrap(), &phi).unwrap() * 2.0;
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn odd_q_vanish() {
        let phi = random_state(6, ParitySector::Even, 9).unwrap();
        let q = q_invariants(&phi, 5).unwrap();
        let m = moment_map(&phi).unwrap();
        for k in [1, 3, 5] {
            assert_eq!(q[k - 1], cr(0.0));
            assert!(half_trace_power(&m, k).norm() < 1e-10 * phi.norm_sqr().powi(k as i32));
        }
    }

    #[test]
    fn vector_covariant_defining_relation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let phi = random_state(5, ParitySector::Even, 10).unwrap();
        let v = vector_covariant(&phi).unwrap();
        for _ in 0..5 {
            let u = CliffordVector::random(5, &mut rng);
            let lhs = crate::clifford::form(&u, &v).unwrap();
            let rhs =
                mukai_pairing(&crate::clifford::apply_vector(&u, &phi).unwrap(), &phi).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert_eq!(v.max_abs(), vector_covariant(&phi).unwrap().max_abs());
        let vac = vector_covariant(&FockState::vacuum(5).unwrap()).unwrap();
        assert_eq!(vac.max_abs(), 0.0);
        assert!(vector_covariant(&FockState::vacuum(4).unwrap()).is_err());
    }
}

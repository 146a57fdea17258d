//! Acceptance properties as a runnable suite.
//!
//! Each criterion returns a pass/fail line with the worst residual seen. A
//! [`Fault`] swaps in a deliberately broken pairing so callers can check that
//! the suite notices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    annihilator_kernel, canonical_state, classify, is_pure_spinor, orbit_sample, OrbitLabel,
};
use crate::clifford::form;
use crate::coords::{EvenD4, EvenD6, OddD4, OddD6};
use crate::embed::{
    cayley_hyperdeterminant, duality_check, embed_three_qubit_even, embed_three_qubit_odd,
    slocc_gate_generator, slocc_gate_local, SloccKind, ThreeQubitState,
};
use crate::error::Error;
use crate::fock::{
    annihilate, complex_normal, create, random_state_with, shuffle_sign, FockState, ParitySector,
};
use crate::invariants::{
    moment_map_with, pairing_even_d4, pairing_odd_d4, pairing_slices, q_from_moment,
    quartic_even_closed, quartic_odd_closed, vector_covariant, MomentMapMatrix, KAPPA_EVEN,
    KAPPA_ODD,
};
use crate::linalg::{cr, max_abs, CMatrix};
use crate::pfaffian::pfaffian;
use crate::spin::{
    compact_form_image, exp_apply, exp_spinor, exp_vector, is_unitary_generator,
    vacuum_orbit_state, SpinGenerator,
};

pub const CRITERIA: usize = 12;
const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Pairing without the `(-1)^{k(k-1)/2}` transpose sign.
    PairingTransposeSign,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("{tag} {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

type Check = std::result::Result<String, String>;

fn lib(e: Error) -> String {
    e.to_string()
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct Ctx {
    fault: Fault,
}

fn pairing_no_transpose(d: usize, a: &[num_complex::Complex64], b: &[num_complex::Complex64]) -> num_complex::Complex64 {
    let full = (1usize << d) - 1;
    let mut s = cr(0.0);
    for (m, &x) in a.iter().enumerate() {
        let y = b[full ^ m];
        if x != cr(0.0) && y != cr(0.0) {
            s += x * y * shuffle_sign(m, full ^ m);
        }
    }
    s
}

impl Ctx {
    fn pairing(&self, phi: &FockState, psi: &FockState) -> num_complex::Complex64 {
        let d = phi.d();
        match self.fault {
            Fault::None => pairing_slices(d, phi.amplitudes(), psi.amplitudes()),
            Fault::PairingTransposeSign => {
                pairing_no_transpose(d, phi.amplitudes(), psi.amplitudes())
            }
        }
    }

    fn moment(&self, phi: &FockState) -> std::result::Result<MomentMapMatrix, String> {
        let d = phi.d();
        match self.fault {
            Fault::None => moment_map_with(phi, |a, b| pairing_slices(d, a, b)).map_err(lib),
            Fault::PairingTransposeSign => {
                moment_map_with(phi, |a, b| pairing_no_transpose(d, a, b)).map_err(lib)
            }
        }
    }

    fn q2(&self, phi: &FockState) -> std::result::Result<num_complex::Complex64, String> {
        Ok(q_from_moment(&self.moment(phi)?, 2)[1])
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_antisym<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let z = complex_normal(rng);
            m[(i, j)] = z;
            m[(j, i)] = -z;
        }
    }
    m
}

fn c1_car() -> Check {
    let mut checked = 0usize;
    for d in 2..=6 {
        for mask in 0..1usize << d {
            let b = FockState::basis_mask(d, mask).map_err(lib)?;
            let zero = b.zeroed();
            for i in 1..=d {
                for j in 1..=d {
                    let ac = &annihilate(i, &create(j, &b).map_err(lib)?).map_err(lib)?
                        + &create(j, &annihilate(i, &b).map_err(lib)?).map_err(lib)?;
                    let want = if i == j { b.clone() } else { zero.clone() };
                    let aa = &annihilate(i, &annihilate(j, &b).map_err(lib)?).map_err(lib)?
                        + &annihilate(j, &annihilate(i, &b).map_err(lib)?).map_err(lib)?;
                    let cc = &create(i, &create(j, &b).map_err(lib)?).map_err(lib)?
                        + &create(j, &create(i, &b).map_err(lib)?).map_err(lib)?;
                    if ac != want || aa != zero || cc != zero {
                        return Err(format!("d = {d}, basis {mask:#b}, modes ({i}, {j})"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (basis, i, j) triples exact for d = 2..6"))
}

fn c2_d2_moment(ctx: &Ctx) -> Check {
    let mut r = rng(2);
    let z = cr(0.0);
    let mut worst = 0.0f64;
    let mut worst_sq = 0.0f64;
    for _ in 0..20 {
        let (p0, pt) = (complex_normal(&mut r), complex_normal(&mut r));
        let mut phi = FockState::zeros(2).map_err(lib)?;
        phi.set(0, p0);
        phi.set(3, pt);
        let m = ctx.moment(&phi)?;
        #[rustfmt::skip]
        let t_phi = CMatrix::from_row_slice(4, 4, &[
            -p0 * pt, z, z, -p0 * p0,
            z, -p0 * pt, p0 * p0, z,
            z, -pt * pt, p0 * pt, z,
            pt * pt, z, z, p0 * pt,
        ]);
        let scale = p0.norm_sqr() + pt.norm_sqr();
        worst = worst.max(max_abs(&(m.matrix() / cr(8.0) - t_phi / cr(8.0))) / scale);
        worst_sq = worst_sq.max(max_abs(&(m.matrix() * m.matrix())) / (scale * scale));

        let (s1, s2) = (complex_normal(&mut r), complex_normal(&mut r));
        let mut psi = FockState::zeros(2).map_err(lib)?;
        psi.set(1, s1);
        psi.set(2, s2);
        let m = ctx.moment(&psi)?;
        // lower-right block taken as -A^T; the printed one is not in so(4)
        #[rustfmt::skip]
        let t_psi = CMatrix::from_row_slice(4, 4, &[
            s1 * s2, s2 * s2, z, z,
            -s1 * s1, -s1 * s2, z, z,
            z, z, -s1 * s2, s1 * s1,
            z, z, -s2 * s2, s1 * s2,
        ]);
        let scale = s1.norm_sqr() + s2.norm_sqr();
        worst = worst.max(max_abs(&(m.matrix() / cr(8.0) - t_psi / cr(8.0))) / scale);
        worst_sq = worst_sq.max(max_abs(&(m.matrix() * m.matrix())) / (scale * scale));
    }
    ensure(
        worst < 1e-12 && worst_sq < 1e-12,
        format!("max |M/8 - T| = {worst:.1e}, max |M^2| = {worst_sq:.1e} (tol 1e-12, 40 states)"),
    )
}

fn c3_d4_vanishing(ctx: &Ctx) -> Check {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for sector in [ParitySector::Even, ParitySector::Odd] {
        for _ in 0..100 {
            let phi = random_state_with(4, sector, &mut r).map_err(lib)?;
            let m = ctx.moment(&phi)?;
            worst = worst.max(max_abs(m.matrix()) / phi.norm_sqr());
        }
    }
    ensure(
        worst < 1e-10,
        format!("max |M| / |phi|^2 = {worst:.1e} over 200 states (tol 1e-10)"),
    )
}

fn c4_d4_quadratic(ctx: &Ctx) -> Check {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let phi = random_state_with(4, ParitySector::Even, &mut r).map_err(lib)?;
        let p = EvenD4::from_state(&phi).map_err(lib)?;
        let want = pairing_even_d4(p.eta, &p.xi, p.rho).map_err(lib)?;
        let got = ctx.pairing(&phi, &phi);
        worst = worst.max((got - want).norm() / want.norm().max(1e-300));
        let psi = random_state_with(4, ParitySector::Odd, &mut r).map_err(lib)?;
        let want = pairing_odd_d4(&OddD4::from_state(&psi).map_err(lib)?);
        let got = ctx.pairing(&psi, &psi);
        worst = worst.max((got - want).norm() / want.norm().max(1e-300));
    }
    if worst >= 1e-10 {
        return Err(format!("pairing vs closed forms: rel {worst:.1e} (tol 1e-10)"));
    }
    let mut slater_fail = 0;
    let mut generic_fail = 0;
    let mut worst_pf = 0.0f64;
    for _ in 0..50 {
        let u: Vec<_> = (0..4).map(|_| complex_normal(&mut r)).collect();
        let v: Vec<_> = (0..4).map(|_| complex_normal(&mut r)).collect();
        let xi = CMatrix::from_fn(4, 4, |i, j| u[i] * v[j] - u[j] * v[i]);
        let pf = pfaffian(&xi).map_err(lib)?;
        let n2 = xi.iter().map(|z| z.norm_sqr()).sum::<f64>();
        worst_pf = worst_pf.max(pf.norm() / n2);
        let phi = EvenD4 { eta: cr(0.0), xi, rho: cr(0.0) }.to_state();
        if !is_pure_spinor(&phi).map_err(lib)? {
            slater_fail += 1;
        }
        let xi = random_antisym(4, &mut r);
        let phi = EvenD4 { eta: cr(0.0), xi, rho: cr(0.0) }.to_state();
        if is_pure_spinor(&phi).map_err(lib)? {
            generic_fail += 1;
        }
    }
    ensure(
        worst_pf < 1e-12 && slater_fail == 0 && generic_fail == 0,
        format!(
            "pairing rel {worst:.1e}; Slater |Pf|/|xi|^2 <= {worst_pf:.1e}, \
             {slater_fail}/50 Slater not pure, {generic_fail}/50 rank-4 pure"
        ),
    )
}

fn c5_d5() -> Check {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let phi = random_state_with(5, ParitySector::Even, &mut r).map_err(lib)?;
        let v = vector_covariant(&phi).map_err(lib)?;
        let n2 = phi.norm_sqr();
        worst = worst.max(form(&v, &v).map_err(lib)?.norm() / (n2 * n2));
    }
    if worst >= 1e-10 {
        return Err(format!("(v, v) / |phi|^4 = {worst:.1e} (tol 1e-10)"));
    }
    let mut split = 0;
    for sector in [ParitySector::Even, ParitySector::Odd] {
        for (label, pure) in [(OrbitLabel::Pure, true), (OrbitLabel::Generic, false)] {
            let base = canonical_state(5, sector, label).map_err(lib)?.state;
            let mut states = orbit_sample(&base, 7, 4).map_err(lib)?;
            states.push(base);
            for phi in states {
                let v = vector_covariant(&phi).map_err(lib)?;
                let v_zero = v.max_abs() <= 1e-10 * phi.norm_sqr();
                let is_pure = is_pure_spinor(&phi).map_err(lib)?;
                if v_zero != is_pure || is_pure != pure {
                    return Err(format!(
                        "{sector} {label}: v_phi zero = {v_zero}, kernel pure = {is_pure}"
                    ));
                }
                split += 1;
            }
        }
    }
    ensure(
        true,
        format!("(v, v) / |phi|^4 <= {worst:.1e}; v = 0 <=> pure on {split} orbit samples"),
    )
}

fn c6_table(ctx: &Ctx) -> Check {
    for (label, want_rank) in [
        (OrbitLabel::Rank4, 12),
        (OrbitLabel::Rank3, 6),
        (OrbitLabel::Rank2, 2),
        (OrbitLabel::Rank1, 0),
    ] {
        let phi = canonical_state(6, ParitySector::Even, label).map_err(lib)?.state;
        let rep = classify(&phi).map_err(lib)?;
        let rank = ctx.moment(&phi)?.rank(phi.norm_sqr());
        if rep.orbit_label != label || rep.moment_rank != Some(want_rank) || rank != want_rank {
            return Err(format!(
                "{label}: got {} with moment rank {rank} (want {want_rank})",
                rep.orbit_label
            ));
        }
    }
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p: Vec<_> = (0..4).map(|_| complex_normal(&mut r)).collect();
        let phi = crate::classify::canonical::even_family(p[0], p[1], p[2], p[3]);
        let want = p[0] * p[1] * p[2] * p[3] * 4.0;
        let got = ctx.q2(&phi)? / 6.0;
        worst = worst.max((got - want).norm() / want.norm());
    }
    let ghz = canonical_state(6, ParitySector::Even, OrbitLabel::Ghz).map_err(lib)?.state;
    let g = ctx.q2(&ghz)? / 6.0;
    let ghz_err = (g - cr(1.0)).norm();
    ensure(
        worst < 1e-9 && ghz_err < 1e-9,
        format!(
            "ranks 12/6/2/0 and labels rank4..rank1; q2/6 vs 4abcd rel {worst:.1e}; \
             GHZ q2/6 = {:.12} (tol 1e-9)",
            g.re
        ),
    )
}

fn spread(ratios: &[num_complex::Complex64]) -> f64 {
    let r0 = ratios[0];
    ratios.iter().map(|r| (r - r0).norm() / r0.norm()).fold(0.0, f64::max)
}

fn c7_trace_vs_closed(ctx: &Ctx) -> Check {
    let mut r = rng(7);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for _ in 0..100 {
        let phi = random_state_with(6, ParitySector::Even, &mut r).map_err(lib)?;
        let closed = quartic_even_closed(&EvenD6::from_state(&phi).map_err(lib)?).map_err(lib)?;
        even.push(ctx.q2(&phi)? / 6.0 / closed);
        let psi = random_state_with(6, ParitySector::Odd, &mut r).map_err(lib)?;
        let closed = quartic_odd_closed(&OddD6::from_state(&psi).map_err(lib)?).map_err(lib)?;
        odd.push(ctx.q2(&psi)? / closed);
    }
    let (se, so) = (spread(&even), spread(&odd));
    let ke = (even[0] - cr(KAPPA_EVEN)).norm();
    let ko = (odd[0] - cr(KAPPA_ODD)).norm();
    ensure(
        se < 1e-8 && so < 1e-8 && ke < 1e-8 && ko < 1e-8,
        format!(
            "even kappa = {:.10} spread {se:.1e}; odd kappa = {:.10} spread {so:.1e} (tol 1e-8)",
            even[0].re, odd[0].re
        ),
    )
}

fn c8_equivariance(ctx: &Ctx) -> Check {
    let mut r = rng(8);
    let structured: Vec<FockState> = [
        (ParitySector::Even, OrbitLabel::Rank1),
        (ParitySector::Even, OrbitLabel::Rank2),
        (ParitySector::Even, OrbitLabel::Rank3),
        (ParitySector::Odd, OrbitLabel::Rank1),
        (ParitySector::Odd, OrbitLabel::Rank3),
    ]
    .into_iter()
    .map(|(s, l)| canonical_state(6, s, l).map(|cf| cf.state))
    .collect::<crate::error::Result<_>>()
    .map_err(lib)?;
    let (mut w_m, mut w_pair, mut w_q) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..50 {
        let sector = if n % 2 == 0 { ParitySector::Even } else { ParitySector::Odd };
        let phi = if n % 5 == 0 {
            structured[(n / 5) % structured.len()].clone()
        } else {
            random_state_with(6, sector, &mut r).map_err(lib)?
        };
        let sector = phi.parity_sector();
        let psi = random_state_with(6, sector, &mut r).map_err(lib)?;
        let gen = SpinGenerator::random(6, 0.3, &mut r);
        let o_phi = exp_apply(&gen, &phi).map_err(lib)?;
        let o_psi = exp_apply(&gen, &psi).map_err(lib)?;
        if o_phi.parity_sector() != sector || o_psi.parity_sector() != sector {
            return Err(format!("pair {n}: parity sector not preserved"));
        }
        let v = exp_vector(&gen);
        let v_inv = v.clone().try_inverse().ok_or("singular vector matrix")?;
        let m = ctx.moment(&phi)?;
        let m_o = ctx.moment(&o_phi)?;
        let want = &v_inv * m.matrix() * &v;
        // M is quadratic in the state: |phi|^2 is the floor of its natural scale
        let floor = phi.norm_sqr().max(o_phi.norm_sqr());
        w_m = w_m.max(max_abs(&(m_o.matrix() - &want)) / max_abs(&want).max(floor));

        let a = ctx.pairing(&phi, &psi);
        let b = ctx.pairing(&o_phi, &o_psi);
        w_pair = w_pair.max((a - b).norm() / a.norm().max(1e-300));

        let q = q_from_moment(&m, 4);
        let q_o = q_from_moment(&m_o, 4);
        let fro = m.matrix().norm().max(m_o.matrix().norm()).max(floor);
        for k in 2..=4 {
            let prefactor = (8.0 * 5.0f64).powi(2 - k as i32) / 2.0;
            let natural = prefactor * fro.powi(k as i32);
            w_q = w_q.max((q[k - 1] - q_o[k - 1]).norm() / natural.max(1e-300));
        }
        let kd = |s: &FockState| annihilator_kernel(s).map(|k| k.dim);
        let (k0, k1) = (kd(&phi).map_err(lib)?, kd(&o_phi).map_err(lib)?);
        if k0 != k1 {
            return Err(format!("pair {n}: kernel dimension {k0} -> {k1}"));
        }
    }
    ensure(
        w_m < 1e-8 && w_pair < 1e-9 && w_q < 1e-8,
        format!(
            "M rel {w_m:.1e} (1e-8), pairing rel {w_pair:.1e} (1e-9), q_k rel {w_q:.1e} (1e-8); \
             kernel dims and sectors preserved over 50 pairs"
        ),
    )
}

fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

fn c9_unitarity() -> Check {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for n in 0..50 {
        let d = 2 + n % 5;
        let gen = SpinGenerator::random_unitary(d, 0.5, &mut r);
        let res = unitarity_residual(&exp_spinor(&gen));
        worst = worst.max(res);
        if !is_unitary_generator(&gen) || res >= 1e-9 {
            return Err(format!("unitary generator {n}: flagged {}, residual {res:.1e}", is_unitary_generator(&gen)));
        }
        compact_form_image(&exp_vector(&gen)).map_err(|e| format!("compact form {n}: {e}"))?;
    }
    let mut least = f64::INFINITY;
    for n in 0..50 {
        let d = 2 + n % 5;
        let gen = SpinGenerator::random(d, 0.5, &mut r);
        let res = unitarity_residual(&exp_spinor(&gen));
        least = least.min(res);
        if is_unitary_generator(&gen) || res < 1e-9 {
            return Err(format!("generic generator {n}: flagged unitary or residual {res:.1e}"));
        }
    }
    Ok(format!(
        "unitary residual <= {worst:.1e}; generic residual >= {least:.1e}; \
         compact images real orthogonal (tol 1e-9)"
    ))
}

fn c10_duality(ctx: &Ctx) -> Check {
    let canon = [
        (OrbitLabel::Ghz, Some(6)),
        (OrbitLabel::W, Some(3)),
        (OrbitLabel::Bisep, Some(1)),
        (OrbitLabel::Sep, Some(0)),
        (OrbitLabel::Null, None),
    ];
    for (label, k_rank) in canon {
        let phi = ThreeQubitState::canonical(label).map_err(lib)?;
        let rep = duality_check(&phi).map_err(lib)?;
        let odd = embed_three_qubit_odd(&phi);
        let got_k = if odd.is_zero() {
            None
        } else {
            classify(&odd).map_err(lib)?.k_rank
        };
        if !rep.consistent || got_k != k_rank {
            return Err(format!("{label}: {rep:?}, rank K_P {got_k:?}"));
        }
    }
    let mut r = rng(10);
    let mut worst_gate = 0.0f64;
    for n in 0..50 {
        let kind = [SloccKind::B, SloccKind::Beta, SloccKind::A][n % 3];
        let (a, b, cc) = (
            complex_normal(&mut r),
            complex_normal(&mut r),
            complex_normal(&mut r),
        );
        let phi = ThreeQubitState::random(&mut r);
        let gen = slocc_gate_generator(kind, a, b, cc).map_err(lib)?;
        let lhs = exp_apply(&gen, &embed_three_qubit_even(&phi)).map_err(lib)?;
        let [g1, g2, g3] = slocc_gate_local(kind, a, b, cc);
        let rhs = embed_three_qubit_even(&phi.apply_ket_local(&g1, &g2, &g3));
        worst_gate = worst_gate.max(lhs.max_diff(&rhs) / rhs.max_abs());
    }
    let ghz = ThreeQubitState::ghz();
    let kappa = ctx.q2(&embed_three_qubit_even(&ghz))? / 6.0 / cayley_hyperdeterminant(&ghz);
    let mut worst_det = 0.0f64;
    for _ in 0..100 {
        let phi = ThreeQubitState::random(&mut r);
        let want = kappa * cayley_hyperdeterminant(&phi);
        let got = ctx.q2(&embed_three_qubit_even(&phi))? / 6.0;
        worst_det = worst_det.max((got - want).norm() / want.norm());
    }
    ensure(
        worst_gate < 1e-9 && worst_det < 1e-8,
        format!(
            "five classes consistent, rank K_P 6/3/1/0; gates rel {worst_gate:.1e} (1e-9); \
             kappa = {:.10}, q2/6 vs kappa Det rel {worst_det:.1e} (1e-8)",
            kappa.re
        ),
    )
}

fn random_slater<R: Rng>(d: usize, k: usize, rng: &mut R) -> crate::error::Result<FockState> {
    let mut phi = FockState::vacuum(d)?;
    for _ in 0..k {
        let mut next = phi.zeroed();
        for i in 1..=d {
            next.axpy(complex_normal(rng), &create(i, &phi)?)?;
        }
        phi = next;
    }
    Ok(phi)
}

fn c11_purity() -> Check {
    let mut r = rng(11);
    let mut count = 0;
    let fail = |what: String| Err::<String, String>(what);
    for n in 0..20 {
        let d = 2 + n % 5;
        let gen = SpinGenerator::from_b(random_antisym(d, &mut r)).map_err(lib)?;
        let phi = vacuum_orbit_state(&gen).map_err(lib)?;
        if !is_pure_spinor(&phi).map_err(lib)? {
            return fail(format!("e^-B |0> not pure (d = {d})"));
        }
        count += 1;
    }
    for d in 1..=6 {
        for mask in 0..1usize << d {
            if !is_pure_spinor(&FockState::basis_mask(d, mask).map_err(lib)?).map_err(lib)? {
                return fail(format!("basis Slater state {mask:#b} (d = {d}) not pure"));
            }
            count += 1;
        }
        for k in 0..=d {
            let phi = random_slater(d, k, &mut r).map_err(lib)?;
            if !is_pure_spinor(&phi).map_err(lib)? {
                return fail(format!("random {k}-particle Slater state (d = {d}) not pure"));
            }
            count += 1;
        }
    }
    for d in 1..=3 {
        for sector in [ParitySector::Even, ParitySector::Odd] {
            for _ in 0..20 {
                let phi = random_state_with(d, sector, &mut r).map_err(lib)?;
                if !is_pure_spinor(&phi).map_err(lib)? {
                    return fail(format!("random d = {d} {sector} state not pure"));
                }
                count += 1;
            }
        }
    }
    let ghz = canonical_state(6, ParitySector::Even, OrbitLabel::Ghz).map_err(lib)?.state;
    if is_pure_spinor(&ghz).map_err(lib)? {
        return fail("GHZ-like d = 6 state reported pure".into());
    }
    Ok(format!("{count} pure states accepted, GHZ-like d = 6 rejected"))
}

/// Runs one criterion (1-based).
pub fn run_criterion(id: usize, fault: Fault) -> CriterionResult {
    let ctx = Ctx { fault };
    let (name, outcome) = match id {
        1 => ("CAR exactness", c1_car()),
        2 => ("d=2 moment maps", c2_d2_moment(&ctx)),
        3 => ("d=4 moment map vanishes", c3_d4_vanishing(&ctx)),
        4 => ("d=4 quadratic invariant and Pluecker", c4_d4_quadratic(&ctx)),
        5 => ("d=5 covariant", c5_d5()),
        6 => ("d=6 even orbit table", c6_table(&ctx)),
        7 => ("trace vs closed quartics", c7_trace_vs_closed(&ctx)),
        8 => ("equivariance and invariance", c8_equivariance(&ctx)),
        9 => ("unitarity", c9_unitarity()),
        10 => ("three-qubit duality", c10_duality(&ctx)),
        11 => ("purity suite", c11_purity()),
        12 => {
            let deps = [8, 11].map(|i| run_criterion(i, fault));
            return scope_result(&deps);
        }
        _ => ("unknown", Err(format!("no criterion {id}"))),
    };
    let (pass, detail) = match outcome {
        Ok(s) => (true, s),
        Err(s) => (false, s),
    };
    CriterionResult { id, name, pass, detail }
}

/// Criterion 12 follows from the property-based criteria 8 and 11.
fn scope_result(deps: &[CriterionResult]) -> CriterionResult {
    CriterionResult {
        id: 12,
        name: "scope of d>6 and stabilizer results",
        pass: deps.iter().all(|r| r.pass),
        detail: "not reproduced; covered property-wise by criteria 8 and 11".into(),
    }
}

pub fn run_all(fault: Fault) -> Vec<CriterionResult> {
    let mut out: Vec<CriterionResult> = (1..CRITERIA).map(|id| run_criterion(id, fault)).collect();
    let deps = [out[7].clone(), out[10].clone()];
    out.push(scope_result(&deps));
    out
}

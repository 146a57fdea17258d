//! `so(2d, C)` generators, their lift to the Fock space, and the
//! corresponding Spin-group (Bogoliubov) transformations.
//!
//! A generator is the block data `(A, B, beta)` of the vector-representation
//! matrix `[[A, beta], [B, -A^T]]` (rows act on `(f^i+, f_j)`). Its spinor
//! lift is
//!
//! ```text
//! T = -B_op - beta_op + A_op - ½ Tr(A)
//! A_op    = A^i_j f^j+ f_i
//! B_op    = ½ B_ij f^i+ f^j+
//! beta_op = ½ beta^ij f_i f_j
//! ```
//!
//! and satisfies `[T, e_a] = sum_b M[a][b] e_b` on the basis vectors.
//! Group elements are kept as generator data (or products of exponentials),
//! so the determinant square root is always the principal `exp(-½ Tr A)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::{
    annihilate_into, check_same_d, complex_normal, create_into, mode_sign, FockState,
};
use crate::linalg::{antisymmetry_residual, block_metric, c, cr, expm, max_abs, CMatrix};

pub mod closed_form;

pub use closed_form::closed_form_even_d6;

/// Antisymmetry tolerance applied when generator blocks are constructed.
pub const ANTISYMMETRY_TOL: f64 = 1e-12;
/// Tolerance of the unitarity test on generator blocks.
pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SpinGenerator {
    d: usize,
    a: CMatrix,
    b: CMatrix,
    beta: CMatrix,
}

fn antisymmetrized(m: CMatrix) -> Result<CMatrix> {
    let residual = antisymmetry_residual(&m);
    if residual > ANTISYMMETRY_TOL {
        return Err(Error::NotAntisymmetric { residual });
    }
    Ok((&m - m.transpose()) * cr(0.5))
}

impl SpinGenerator {
    pub fn new(a: CMatrix, b: CMatrix, beta: CMatrix) -> Result<Self> {
        let d = a.nrows();
        for m in [&a, &b, &beta] {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: m.nrows().max(m.ncols()),
                });
            }
        }
        Ok(SpinGenerator {
            d,
            a,
            b: antisymmetrized(b)?,
            beta: antisymmetrized(beta)?,
        })
    }

    pub fn zero(d: usize) -> Self {
        SpinGenerator {
            d,
            a: CMatrix::zeros(d, d),
            b: CMatrix::zeros(d, d),
            beta: CMatrix::zeros(d, d),
        }
    }

    pub fn from_a(a: CMatrix) -> Result<Self> {
        let d = a.nrows();
        Self::new(a, CMatrix::zeros(d, d), CMatrix::zeros(d, d))
    }

    pub fn from_b(b: CMatrix) -> Result<Self> {
        let d = b.nrows();
        Self::new(CMatrix::zeros(d, d), b, CMatrix::zeros(d, d))
    }

    pub fn from_beta(beta: CMatrix) -> Result<Self> {
        let d = beta.nrows();
        Self::new(CMatrix::zeros(d, d), CMatrix::zeros(d, d), beta)
    }

    /// Reads the blocks back from a `2d x 2d` matrix of `so(2d)`.
    pub fn from_vector_matrix(m: &CMatrix, tol: f64) -> Result<Self> {
        let n = m.nrows();
        if n % 2 != 0 || m.ncols() != n {
            return Err(Error::Unsupported(format!("{}x{} matrix", n, m.ncols())));
        }
        let d = n / 2;
        let g = block_metric(d);
        let residual = max_abs(&(m.transpose() * &g + &g * m));
        if residual > tol {
            return Err(Error::Premise(format!(
                "matrix is not in so(2d) (residual {residual:e})"
            )));
        }
        let a = m.view((0, 0), (d, d)).into_owned();
        let beta = m.view((0, d), (d, d)).into_owned();
        let b = m.view((d, 0), (d, d)).into_owned();
        Ok(SpinGenerator {
            d,
            a,
            b: (&b - b.transpose()) * cr(0.5),
            beta: (&beta - beta.transpose()) * cr(0.5),
        })
    }

    /// Entries i.i.d. complex normal times `scale`.
    pub fn random<R: Rng>(d: usize, scale: f64, rng: &mut R) -> Self {
        let mut draw = || complex_normal(rng) * scale;
        let a = CMatrix::from_fn(d, d, |_, _| draw());
        let b = random_antisymmetric(d, scale, rng);
        let beta = random_antisymmetric(d, scale, rng);
        SpinGenerator { d, a, b, beta }
    }

    /// Random generator with `A` antihermitian and `beta = -B^†`.
    pub fn random_unitary<R: Rng>(d: usize, scale: f64, rng: &mut R) -> Self {
        let m = CMatrix::from_fn(d, d, |_, _| complex_normal(rng) * scale);
        let a = (&m - m.adjoint()) * cr(0.5);
        let b = random_antisymmetric(d, scale, rng);
        let beta = -b.adjoint();
        SpinGenerator { d, a, b, beta }
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn beta(&self) -> &CMatrix {
        &self.beta
    }

    pub fn scaled(&self, t: Complex64) -> Self {
        SpinGenerator {
            d: self.d,
            a: &self.a * t,
            b: &self.b * t,
            beta: &self.beta * t,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        SpinGenerator {
            d: self.d,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            beta: &self.beta + &other.beta,
        }
    }

    /// Number of nonzero blocks among `A`, `B`, `beta`.
    pub fn nonzero_blocks(&self) -> usize {
        [&self.a, &self.b, &self.beta]
            .iter()
            .filter(|m| max_abs(m) > 0.0)
            .count()
    }

    /// `[[A, beta], [B, -A^T]]`.
    pub fn vector_matrix(&self) -> CMatrix {
        let d = self.d;
        let mut m = CMatrix::zeros(2 * d, 2 * d);
        m.view_mut((0, 0), (d, d)).copy_from(&self.a);
        m.view_mut((0, d), (d, d)).copy_from(&self.beta);
        m.view_mut((d, 0), (d, d)).copy_from(&self.b);
        m.view_mut((d, d), (d, d)).copy_from(&(-self.a.transpose()));
        m
    }

    /// Lie bracket for which the spinor lift is a homomorphism:
    /// `spinor([g, h]) = [spinor(g), spinor(h)]`. In the row convention the
    /// vector matrix of the result is `[M_h, M_g]`.
    pub fn bracket(&self, other: &Self) -> Self {
        let mg = self.vector_matrix();
        let mh = other.vector_matrix();
        let m = &mh * &mg - &mg * &mh;
        SpinGenerator::from_vector_matrix(&m, f64::INFINITY)
            .expect("bracket of so(2d) elements stays in so(2d)")
    }

    /// `T |phi>` without forming the `2^d x 2^d` matrix.
    pub fn apply(&self, phi: &FockState) -> Result<FockState> {
        check_same_d(self.d, phi.d())?;
        let d = self.d;
        let src = phi.amplitudes();
        let mut out = phi.scale(-self.a.trace() * 0.5);
        let buf = out.amplitudes_mut();

        // A^i_j f^j+ f_i
        for i in 0..d {
            for j in 0..d {
                let coef = self.a[(i, j)];
                if coef == cr(0.0) {
                    continue;
                }
                let mi = 1usize << i;
                let mj = 1usize << j;
                for (mask, amp) in src.iter().enumerate() {
                    if mask & mi == 0 || *amp == cr(0.0) {
                        continue;
                    }
                    let s1 = mode_sign(mask, i);
                    let mid = mask ^ mi;
                    if mid & mj != 0 {
                        continue;
                    }
                    let s2 = mode_sign(mid, j);
                    buf[mid | mj] += coef * amp * (s1 * s2);
                }
            }
        }

        // -B_ij f^i+ f^j+ and -beta^ij f_i f_j over i < j
        for i in 0..d {
            for j in i + 1..d {
                let bij = self.b[(i, j)];
                if bij != cr(0.0) {
                    let mut tmp = vec![cr(0.0); src.len()];
                    create_into(j, src, cr(1.0), &mut tmp);
                    create_into(i, &tmp, -bij, buf);
                }
                let betaij = self.beta[(i, j)];
                if betaij != cr(0.0) {
                    let mut tmp = vec![cr(0.0); src.len()];
                    annihilate_into(j, src, cr(1.0), &mut tmp);
                    annihilate_into(i, &tmp, -betaij, buf);
                }
            }
        }
        Ok(out)
    }

    /// `2^d x 2^d` matrix of `T` on the bitmask basis.
    pub fn spinor_matrix(&self) -> CMatrix {
        let n = 1usize << self.d;
        let mut m = CMatrix::zeros(n, n);
        for col in 0..n {
            let e = FockState::basis_mask(self.d, col).expect("mask in range");
            let image = self.apply(&e).expect("same mode count");
            for (row, z) in image.amplitudes().iter().enumerate() {
                m[(row, col)] = *z;
            }
        }
        m
    }

    /// `A + A^† = 0` and `B^† = -beta` within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        max_abs(&(&self.a + self.a.adjoint())) <= tol
            && max_abs(&(self.b.adjoint() + &self.beta)) <= tol
    }
}

fn random_antisymmetric<R: Rng>(d: usize, scale: f64, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let z = complex_normal(rng) * scale;
            m[(i, j)] = z;
            m[(j, i)] = -z;
        }
    }
    m
}

/// Spinor representation matrix of a generator.
pub fn spinor_operator(gen: &SpinGenerator) -> CMatrix {
    gen.spinor_matrix()
}

pub fn vector_matrix(gen: &SpinGenerator) -> CMatrix {
    gen.vector_matrix()
}

/// `exp(T)` on the Fock space.
pub fn exp_spinor(gen: &SpinGenerator) -> CMatrix {
    expm(&gen.spinor_matrix())
}

/// `exp(M)` on `W ⊕ W*`, in `SO(2d, C)`.
pub fn exp_vector(gen: &SpinGenerator) -> CMatrix {
    expm(&gen.vector_matrix())
}

/// Applies a dense operator to a state.
pub fn apply_matrix(op: &CMatrix, phi: &FockState) -> Result<FockState> {
    check_same_d(op.ncols(), phi.dim())?;
    let v = op * nalgebra::DVector::from_column_slice(phi.amplitudes());
    FockState::from_amplitudes(v.iter().copied().collect())
}

/// Upper bound on the operator norm of `T` from its coefficients.
fn operator_bound(gen: &SpinGenerator) -> f64 {
    let d = gen.d;
    let mut nu = (gen.a.trace() * 0.5).norm();
    nu += gen.a.iter().map(|z| z.norm()).sum::<f64>();
    for i in 0..d {
        for j in i + 1..d {
            nu += gen.b[(i, j)].norm() + gen.beta[(i, j)].norm();
        }
    }
    nu
}

/// `exp(T) |phi>` by a Taylor series on the state, split into steps of
/// operator norm at most ½.
pub fn exp_apply(gen: &SpinGenerator, phi: &FockState) -> Result<FockState> {
    check_same_d(gen.d(), phi.d())?;
    let steps = (2.0 * operator_bound(gen)).ceil().max(1.0) as usize;
    let step = gen.scaled(cr(1.0 / steps as f64));
    let mut cur = phi.clone();
    for _ in 0..steps {
        let mut term = cur.clone();
        let mut acc = cur.clone();
        for k in 1..60 {
            term = step.apply(&term)?.scale(cr(1.0 / k as f64));
            acc += &term;
            if term.max_abs() <= f64::EPSILON * 1e-2 * acc.max_abs() {
                break;
            }
        }
        cur = acc;
    }
    Ok(cur)
}

/// Ordered product `exp(T_1) exp(T_2) ... exp(T_n)`; the rightmost factor
/// acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement {
    d: usize,
    factors: Vec<SpinGenerator>,
}

impl SpinElement {
    pub fn new(d: usize, factors: Vec<SpinGenerator>) -> Result<Self> {
        for g in &factors {
            check_same_d(d, g.d())?;
        }
        Ok(SpinElement { d, factors })
    }

    pub fn identity(d: usize) -> Self {
        SpinElement {
            d,
            factors: Vec::new(),
        }
    }

    pub fn random<R: Rng>(d: usize, count: usize, scale: f64, rng: &mut R) -> Self {
        SpinElement {
            d,
            factors: (0..count)
                .map(|_| SpinGenerator::random(d, scale, rng))
                .collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> &[SpinGenerator] {
        &self.factors
    }

    pub fn spinor_matrix(&self) -> CMatrix {
        let n = 1usize << self.d;
        self.factors
            .iter()
            .fold(CMatrix::identity(n, n), |acc, g| acc * exp_spinor(g))
    }

    /// Row-convention matrix of `x -> O x O^-1`; for `O = O_1 O_2` it is
    /// `V_2 V_1`.
    pub fn vector_matrix(&self) -> CMatrix {
        let n = 2 * self.d;
        self.factors
            .iter()
            .fold(CMatrix::identity(n, n), |acc, g| exp_vector(g) * acc)
    }

    pub fn inverse(&self) -> SpinElement {
        SpinElement {
            d: self.d,
            factors: self
                .factors
                .iter()
                .rev()
                .map(|g| g.scaled(cr(-1.0)))
                .collect(),
        }
    }

    pub fn apply(&self, phi: &FockState) -> Result<FockState> {
        check_same_d(self.d, phi.d())?;
        let mut out = phi.clone();
        for g in self.factors.iter().rev() {
            out = exp_apply(g, &out)?;
        }
        Ok(out)
    }
}

/// `½ sum_ij B_ij f^i+ f^j+ |phi>`.
pub fn apply_pair_creation(b: &CMatrix, phi: &FockState) -> Result<FockState> {
    check_same_d(b.nrows(), phi.d())?;
    let src = phi.amplitudes();
    let mut out = phi.zeroed();
    for i in 0..phi.d() {
        for j in i + 1..phi.d() {
            let bij = (b[(i, j)] - b[(j, i)]) * 0.5;
            if bij == cr(0.0) {
                continue;
            }
            let mut tmp = vec![cr(0.0); src.len()];
            create_into(j, src, cr(1.0), &mut tmp);
            create_into(i, &tmp, bij, out.amplitudes_mut());
        }
    }
    Ok(out)
}

/// `exp(±B_op) |phi>` by its terminating series.
pub(crate) fn exp_pair_creation(b: &CMatrix, sign: f64, phi: &FockState) -> Result<FockState> {
    let mut term = phi.clone();
    let mut total = phi.clone();
    let mut k = 1.0;
    loop {
        term = apply_pair_creation(b, &term)?.scale(cr(sign / k));
        if term.is_zero() {
            break;
        }
        total += &term;
        k += 1.0;
    }
    Ok(total)
}

/// `(det e^A)^{-1/2} e^{-B_op} |0>` for a generator with `beta = 0`.
pub fn vacuum_orbit_state(gen: &SpinGenerator) -> Result<FockState> {
    if max_abs(&gen.beta) != 0.0 {
        return Err(Error::Premise(
            "vacuum orbit closed form needs beta = 0".into(),
        ));
    }
    let vac = FockState::vacuum(gen.d())?;
    let prefactor = (-gen.a.trace() * 0.5).exp();
    Ok(exp_pair_creation(&gen.b, -1.0, &vac)?.scale(prefactor))
}

pub fn is_unitary_generator(gen: &SpinGenerator) -> bool {
    gen.is_unitary(UNITARY_TOL)
}

/// Tolerance for the premises and output checks of [`compact_form_image`].
pub const COMPACT_FORM_TOL: f64 = 1e-9;

/// `S = N^† O N` with `N = [[I, iI], [I, -iI]] / sqrt 2`, for `O` unitary in
/// `SO(2d, C)`; the result is checked to be real orthogonal.
pub fn compact_form_image(o: &CMatrix) -> Result<DMatrix<f64>> {
    let n = o.nrows();
    if n % 2 != 0 || o.ncols() != n {
        return Err(Error::Unsupported(format!("{}x{} matrix", n, o.ncols())));
    }
    let d = n / 2;
    let id = CMatrix::identity(n, n);
    let unitarity = max_abs(&(o.adjoint() * o - &id));
    if unitarity > COMPACT_FORM_TOL {
        return Err(Error::Premise(format!(
            "matrix is not unitary (residual {unitarity:e})"
        )));
    }
    let g = block_metric(d);
    let orth = max_abs(&(o * &g * o.transpose() - &g));
    if orth > COMPACT_FORM_TOL {
        return Err(Error::Premise(format!(
            "matrix does not preserve the form (residual {orth:e})"
        )));
    }
    let s = compact_form_matrix(d).adjoint() * o * compact_form_matrix(d);
    let imag = s.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > COMPACT_FORM_TOL {
        return Err(Error::Premise(format!("image is not real (residual {imag:e})")));
    }
    let real = s.map(|z| z.re);
    let ortho = (&real * real.transpose() - DMatrix::<f64>::identity(n, n)).amax();
    if ortho > COMPACT_FORM_TOL {
        return Err(Error::Premise(format!(
            "image is not orthogonal (residual {ortho:e})"
        )));
    }
    Ok(real)
}

/// The unitary `N` that diagonalizes the block metric: `g N = N g0`.
pub fn compact_form_matrix(d: usize) -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(i, i)] = cr(h);
        m[(i, d + i)] = c(0.0, h);
        m[(d + i, i)] = cr(h);
        m[(d + i, d + i)] = c(0.0, -h);
    }
    m
}

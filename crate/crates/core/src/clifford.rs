//! Vectors of `W ⊕ W*` (combinations of creators and annihilators), their
//! anticommutator form, and Spin-group elements built as vector products.
//!
//! Coordinates on `W ⊕ W*` are always ordered creations first, then
//! annihilations: `(f^1+, ..., f^d+, f_1, ..., f_d)`. Matrices acting on
//! this space use the row convention `O e_a O^-1 = sum_b M[a][b] e_b`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::{annihilate_into, check_same_d, complex_normal, create_into, FockState};
use crate::linalg::{cr, CMatrix, CVector};

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordVector {
    /// Creation coefficients: `x` contains `sum_i u_i f^i+`.
    pub u: Vec<Complex64>,
    /// Annihilation coefficients: `x` contains `sum_i v_i f_i`.
    pub v: Vec<Complex64>,
}

impl CliffordVector {
    pub fn new(u: Vec<Complex64>, v: Vec<Complex64>) -> Result<Self> {
        check_same_d(u.len(), v.len())?;
        Ok(CliffordVector { u, v })
    }

    pub fn zero(d: usize) -> Self {
        CliffordVector {
            u: vec![cr(0.0); d],
            v: vec![cr(0.0); d],
        }
    }

    /// `f^i+`, 1-based.
    pub fn creator(d: usize, i: usize) -> Self {
        let mut x = Self::zero(d);
        x.u[i - 1] = cr(1.0);
        x
    }

    /// `f_i`, 1-based.
    pub fn annihilator(d: usize, i: usize) -> Self {
        let mut x = Self::zero(d);
        x.v[i - 1] = cr(1.0);
        x
    }

    /// Basis vector `e_a` in the creations-then-annihilations order, 0-based.
    pub fn basis(d: usize, a: usize) -> Self {
        if a < d {
            Self::creator(d, a + 1)
        } else {
            Self::annihilator(d, a - d + 1)
        }
    }

    pub fn from_coords(coords: &CVector) -> Self {
        let d = coords.len() / 2;
        CliffordVector {
            u: coords.iter().take(d).copied().collect(),
            v: coords.iter().skip(d).copied().collect(),
        }
    }

    pub fn coords(&self) -> CVector {
        CVector::from_iterator(2 * self.d(), self.u.iter().chain(&self.v).copied())
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.u.len()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CliffordVector {
            u: self.u.iter().map(|z| z * c).collect(),
            v: self.v.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CliffordVector {
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.u
            .iter()
            .chain(&self.v)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn random<R: Rng>(d: usize, rng: &mut R) -> Self {
        CliffordVector {
            u: (0..d).map(|_| complex_normal(rng)).collect(),
            v: (0..d).map(|_| complex_normal(rng)).collect(),
        }
    }

    /// Random vector rescaled to `form(x, x) = 1`.
    pub fn random_unit<R: Rng>(d: usize, rng: &mut R) -> Self {
        loop {
            let x = Self::random(d, rng);
            let q = form_unchecked(&x, &x);
            if q.norm() > 1e-3 {
                return x.scale(cr(1.0) / q.sqrt());
            }
        }
    }
}

fn form_unchecked(x: &CliffordVector, y: &CliffordVector) -> Complex64 {
    let uv: Complex64 = x.u.iter().zip(&y.v).map(|(a, b)| a * b).sum();
    let vu: Complex64 = y.u.iter().zip(&x.v).map(|(a, b)| a * b).sum();
    (uv + vu) * 0.5
}

/// Anticommutator form `(x, y) = ½(u_x·v_y + u_y·v_x)`.
pub fn form(x: &CliffordVector, y: &CliffordVector) -> Result<Complex64> {
    check_same_d(x.d(), y.d())?;
    Ok(form_unchecked(x, y))
}

/// `x |phi> = sum_i u_i f^i+ |phi> + sum_i v_i f_i |phi>`.
pub fn apply_vector(x: &CliffordVector, phi: &FockState) -> Result<FockState> {
    check_same_d(x.d(), phi.d())?;
    let mut out = phi.zeroed();
    let src = phi.amplitudes();
    for i in 0..x.d() {
        if x.u[i] != cr(0.0) {
            create_into(i, src, x.u[i], out.amplitudes_mut());
        }
        if x.v[i] != cr(0.0) {
            annihilate_into(i, src, x.v[i], out.amplitudes_mut());
        }
    }
    Ok(out)
}

/// Conjugation `y x y^-1 = (2 (x,y) / (y,y)) y - x`.
pub fn reflect(y: &CliffordVector, x: &CliffordVector) -> Result<CliffordVector> {
    check_same_d(x.d(), y.d())?;
    let yy = form_unchecked(y, y);
    if yy.norm() == 0.0 {
        return Err(Error::IsotropicVector);
    }
    let k = form_unchecked(x, y) * 2.0 / yy;
    Ok(y.scale(k).add(&x.scale(cr(-1.0))))
}

/// Product `O = x_1 x_2 ... x_r` of an even number of unit vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorChain {
    d: usize,
    factors: Vec<CliffordVector>,
}

/// Tolerance on `|(x,x)| = 1` for chain factors.
const UNIT_FORM_TOL: f64 = 1e-10;

impl VectorChain {
    pub fn new(d: usize, factors: Vec<CliffordVector>) -> Result<Self> {
        if factors.len() % 2 != 0 {
            return Err(Error::Unsupported(format!(
                "odd-length vector chain ({} factors)",
                factors.len()
            )));
        }
        for x in &factors {
            check_same_d(d, x.d())?;
            let q = form_unchecked(x, x);
            if q.norm() < UNIT_FORM_TOL {
                return Err(Error::IsotropicVector);
            }
            if (q - cr(1.0)).norm() > UNIT_FORM_TOL && (q + cr(1.0)).norm() > UNIT_FORM_TOL {
                return Err(Error::Premise(format!("chain factor has form {q}, expected ±1")));
            }
        }
        Ok(VectorChain { d, factors })
    }

    pub fn identity(d: usize) -> Self {
        VectorChain {
            d,
            factors: Vec::new(),
        }
    }

    pub fn random<R: Rng>(d: usize, len: usize, rng: &mut R) -> Self {
        let len = len + len % 2;
        VectorChain {
            d,
            factors: (0..len).map(|_| CliffordVector::random_unit(d, rng)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> &[CliffordVector] {
        &self.factors
    }

    /// `O |phi>`: the rightmost factor acts first.
    pub fn apply(&self, phi: &FockState) -> Result<FockState> {
        check_same_d(self.d, phi.d())?;
        let mut out = phi.clone();
        for x in self.factors.iter().rev() {
            out = apply_vector(x, &out)?;
        }
        Ok(out)
    }

    /// `O x O^-1`.
    pub fn conjugate(&self, x: &CliffordVector) -> Result<CliffordVector> {
        check_same_d(self.d, x.d())?;
        let mut out = x.clone();
        for y in self.factors.iter().rev() {
            out = reflect(y, &out)?;
        }
        Ok(out)
    }
}

/// Matrix of `x -> O x O^-1` in the row convention: row `a` holds the
/// coordinates of `O e_a O^-1`.
pub fn chain_to_vector_matrix(chain: &VectorChain) -> Result<CMatrix> {
    let d = chain.d();
    let mut m = CMatrix::zeros(2 * d, 2 * d);
    for a in 0..2 * d {
        let image = chain.conjugate(&CliffordVector::basis(d, a))?.coords();
        m.row_mut(a).copy_from(&image.transpose());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{random_state, ParitySector};
    use crate::linalg::{block_metric, max_abs_diff};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn form_examples() {
        let d = 3;
        let c1 = CliffordVector::creator(d, 1);
        let a1 = CliffordVector::annihilator(d, 1);
        assert_eq!(form(&c1, &a1).unwrap(), cr(0.5));
        assert_eq!(form(&c1, &CliffordVector::creator(d, 2)).unwrap(), cr(0.0));
        let x = c1.add(&a1);
        assert_eq!(form(&x, &x).unwrap(), cr(1.0));
        assert!(form(&x, &CliffordVector::zero(2)).is_err());
    }

    #[test]
    fn apply_vector_examples() {
        let d = 3;
        let x = CliffordVector::creator(d, 1).add(&CliffordVector::annihilator(d, 1));
        let vac = FockState::vacuum(d).unwrap();
        assert_eq!(apply_vector(&x, &vac).unwrap(), FockState::basis(d, &[1]).unwrap());

        let phi = random_state(d, ParitySector::Mixed, 5).unwrap();
        let twice = apply_vector(&x, &apply_vector(&x, &phi).unwrap()).unwrap();
        assert!(twice.max_diff(&phi) < 1e-14);

        assert!(apply_vector(&CliffordVector::zero(d), &phi).unwrap().is_zero());
    }

    #[test]
    fn clifford_relation_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=6 {
            let x = CliffordVector::random(d, &mut rng);
            let phi = random_state(d, ParitySector::Mixed, d as u64).unwrap();
            let lhs = apply_vector(&x, &apply_vector(&x, &phi).unwrap()).unwrap();
            let rhs = phi.scale(form(&x, &x).unwrap());
            assert!(lhs.max_diff(&rhs) <= 1e-12 * rhs.max_abs().max(1.0));
        }
    }

    /// Compares two vectors as operators on every basis state.
    fn same_operator(x: &CliffordVector, y: &CliffordVector) -> bool {
        let d = x.d();
        (0..1usize << d).all(|m| {
            let b = FockState::basis_mask(d, m).unwrap();
            apply_vector(x, &b)
                .unwrap()
                .max_diff(&apply_vector(y, &b).unwrap())
                < 1e-14
        })
    }

    #[test]
    fn reflect_examples() {
        let d = 2;
        let c1 = CliffordVector::creator(d, 1);
        let a1 = CliffordVector::annihilator(d, 1);
        let y = c1.add(&a1);
        let r = reflect(&y, &c1).unwrap();
        assert!(same_operator(&r, &a1));

        // operator oracle: y x y^-1 with y^-1 = y since (y,y) = 1
        for m in 0..1usize << d {
            let b = FockState::basis_mask(d, m).unwrap();
            let lhs = apply_vector(&y, &apply_vector(&c1, &apply_vector(&y, &b).unwrap()).unwrap())
                .unwrap();
            assert!(lhs.max_diff(&apply_vector(&r, &b).unwrap()) < 1e-14);
        }

        let c2 = CliffordVector::creator(d, 2);
        assert_eq!(reflect(&y, &c2).unwrap(), c2.scale(cr(-1.0)));
        assert_eq!(reflect(&y, &y).unwrap(), y);
        assert_eq!(reflect(&c1, &a1), Err(Error::IsotropicVector));
    }

    #[test]
    fn chain_matrix_examples() {
        let d = 3;
        let id = chain_to_vector_matrix(&VectorChain::identity(d)).unwrap();
        assert_eq!(id, CMatrix::identity(2 * d, 2 * d));

        let y = CliffordVector::creator(d, 2).add(&CliffordVector::annihilator(d, 2));
        let yy = VectorChain::new(d, vec![y.clone(), y]).unwrap();
        assert!(max_abs_diff(&chain_to_vector_matrix(&yy).unwrap(), &id) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = block_metric(d);
        for len in [2, 4, 6] {
            let o = chain_to_vector_matrix(&VectorChain::random(d, len, &mut rng)).unwrap();
            let lhs = &o * &g * o.transpose();
            assert!(max_abs_diff(&lhs, &g) < 1e-9, "len {len}");
            assert!((o.determinant() - cr(1.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn chain_validation() {
        let d = 2;
        let c1 = CliffordVector::creator(d, 1);
        let y = c1.add(&CliffordVector::annihilator(d, 1));
        assert!(VectorChain::new(d, vec![y.clone()]).is_err());
        assert_eq!(
            VectorChain::new(d, vec![y.clone(), c1]),
            Err(Error::IsotropicVector)
        );
        assert!(VectorChain::new(d, vec![y.clone(), y.scale(cr(2.0))]).is_err());
        // form -1 is allowed
        let z = CliffordVector::creator(d, 1).add(&CliffordVector::annihilator(d, 1).scale(cr(-1.0)));
        assert!(VectorChain::new(d, vec![y, z]).is_ok());
    }

    #[test]
    fn chain_conjugation_is_consistent_with_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = 4;
        for trial in 0..5 {
            let chain = VectorChain::random(d, 4, &mut rng);
            let x = CliffordVector::random(d, &mut rng);
            let phi = random_state(d, ParitySector::Mixed, trial).unwrap();
            let lhs = chain.apply(&apply_vector(&x, &phi).unwrap()).unwrap();
            let rhs = apply_vector(&chain.conjugate(&x).unwrap(), &chain.apply(&phi).unwrap()).unwrap();
            assert!(lhs.max_diff(&rhs) < 1e-9 * lhs.max_abs().max(1.0));
        }
    }
}

//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |a - b| / max(max |b|, floor)`.
pub fn rel_diff(a: &CMatrix, b: &CMatrix, floor: f64) -> f64 {
    max_abs_diff(a, b) / max_abs(b).max(floor)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant. Relative accuracy near machine precision for the small
/// matrices used here.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a * cr(0.5f64.powi(s));
    let id = CMatrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| cr(PADE13[k]);

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Singular values, in no particular order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().singular_values().iter().copied().collect()
}

/// Rank with singular values below `rel * sigma_max` counted as zero.
pub fn rank(m: &CMatrix, rel: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * top).count()
}

/// Orthonormal basis of the right null space, with the same relative
/// threshold convention as [`rank`].
pub fn null_space(m: &CMatrix, rel: f64) -> Vec<CVector> {
    let (rows, cols) = m.shape();
    // pad so the SVD returns a full right factor
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut basis = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if top == 0.0 || s <= rel * top {
            basis.push(v_t.row(k).adjoint().into_owned());
        }
    }
    basis
}

/// Sign of the permutation given by `seq` (distinct entries), 0 on repeats.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn antisymmetry_residual(m: &CMatrix) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            r = r.max((m[(i, j)] + m[(j, i)]).norm());
        }
    }
    r
}

/// Block metric `[[0, I], [I, 0]]` of size `2d`.
pub fn block_metric(d: usize) -> CMatrix {
    let mut g = CMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        g[(i, d + i)] = cr(1.0);
        g[(d + i, i)] = cr(1.0);
    }
    g
}

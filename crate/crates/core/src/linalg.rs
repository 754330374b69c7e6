//! Small dense complex matrix helpers.
//!
//! Tensor products use the Kronecker layout: the basis vector
//! `xi_a (x) xi_c` of `H_n (x) H_m` sits at position `a * dim_m + c`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Max-absolute-entry norm.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn diag_real(values: &[f64]) -> CMat {
    CMat::from_diagonal(&CVec::from_iterator(values.len(), values.iter().map(|&v| c(v))))
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn matrix_unit(d: usize, row: usize, col: usize) -> CMat {
    let mut m = CMat::zeros(d, d);
    m[(row, col)] = ONE;
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Apply `f` to the left tensor leg of `x` acting on `C^dl (x) C^dr`.
pub fn map_left(x: &CMat, dl: usize, dr: usize, f: impl Fn(&CMat) -> CMat) -> CMat {
    let mut out = CMat::zeros(dl * dr, dl * dr);
    for c in 0..dr {
        for d in 0..dr {
            let block = CMat::from_fn(dl, dl, |a, b| x[(a * dr + c, b * dr + d)]);
            let image = f(&block);
            for a in 0..dl {
                for b in 0..dl {
                    out[(a * dr + c, b * dr + d)] += image[(a, b)];
                }
            }
        }
    }
    out
}

/// Apply `f` to the right tensor leg of `x` acting on `C^dl (x) C^dr`.
pub fn map_right(x: &CMat, dl: usize, dr: usize, f: impl Fn(&CMat) -> CMat) -> CMat {
    let mut out = CMat::zeros(dl * dr, dl * dr);
    for a in 0..dl {
        for b in 0..dl {
            let image = f(&x.view((a * dr, b * dr), (dr, dr)).clone_owned());
            out.view_mut((a * dr, b * dr), (dr, dr)).copy_from(&image);
        }
    }
    out
}

/// `(omega (x) id)(x)` for a linear functional `omega` on the left leg.
pub fn contract_left(x: &CMat, dl: usize, dr: usize, omega: impl Fn(&CMat) -> Complex64) -> CMat {
    CMat::from_fn(dr, dr, |c, d| {
        let block = CMat::from_fn(dl, dl, |a, b| x[(a * dr + c, b * dr + d)]);
        omega(&block)
    })
}

/// `(id (x) omega)(x)` for a linear functional `omega` on the right leg.
pub fn contract_right(x: &CMat, dl: usize, dr: usize, omega: impl Fn(&CMat) -> Complex64) -> CMat {
    CMat::from_fn(dl, dl, |a, b| omega(&x.view((a * dr, b * dr), (dr, dr)).clone_owned()))
}

/// The multiplication map `M_d (x) M_d -> M_d`, `y (x) z |-> y z`.
pub fn multiply_legs(x: &CMat, d: usize) -> CMat {
    CMat::from_fn(d, d, |a, e| (0..d).map(|b| x[(a * d + b, b * d + e)]).sum())
}

/// Exchange the two tensor legs: `C^dl (x) C^dr -> C^dr (x) C^dl`.
pub fn flip(x: &CMat, dl: usize, dr: usize) -> CMat {
    let idx = |a: usize, c: usize| a * dr + c;
    CMat::from_fn(dl * dr, dl * dr, |row, col| {
        let (c, a) = (row / dl, row % dl);
        let (d, b) = (col / dl, col % dl);
        x[(idx(a, c), idx(b, d))]
    })
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Orthonormal basis of the numerical kernel of `m`, plus all singular values
/// (descending). A singular value counts as zero when it is at most
/// `rel_tol * sigma_max` (or `abs_floor` when `m` is zero).
pub fn null_space(m: &CMat, rel_tol: f64, abs_floor: f64) -> (Vec<CVec>, Vec<f64>) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    // Pad with zero rows so the thin SVD returns a full right basis.
    let rows = m.nrows().max(cols);
    let mut padded = CMat::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let threshold = (rel_tol * sigma[0]).max(abs_floor);
    let kernel = order
        .iter()
        .filter(|&&i| svd.singular_values[i] <= threshold)
        .map(|&i| v_t.row(i).adjoint())
        .collect();
    (kernel, sigma)
}

/// Rescale `v` so its first entry with modulus above `eps` is real positive.
pub fn fix_phase(v: &mut CVec, eps: f64) {
    if let Some(z) = v.iter().copied().find(|z| z.norm() > eps) {
        let phase = z.conj() / z.norm();
        *v *= phase;
    }
}

/// Singular values of `m` in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

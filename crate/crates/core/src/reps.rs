//! Irreducible `*`-representations `pi_n` and the sign-twisted `pi'_n`.
//!
//! Basis order is descending in weight: `xi(n, n)` comes first.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, diag_real, identity, max_abs, max_abs_diff, null_space, CMat, CVec};
use crate::params::{Params, RepIndex, Weight};
use crate::words::{self, AlgPoly, Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Rep {
    index: RepIndex,
    sign: Sign,
    /// `r_j` for `j = n-1, n-2, ..., -n`; `r[p]` links basis positions `p` and `p+1`.
    r: Vec<f64>,
    q: CMat,
    q_inv: CMat,
    e: CMat,
    f: CMat,
}

/// Solve `r_{j-1}^2 - r_j^2 = c (lambda^{2j} - lambda^{-2j})` downward from
/// `r_n = 0`. Returns `r_{n-1}, ..., r_{-n}` and the terminal `r_{-n-1}^2`.
fn lowering_coefficients(params: &Params, index: RepIndex, coupling: f64) -> Result<(Vec<f64>, f64)> {
    let clamp = params.tol_abs();
    let mut squares = Vec::with_capacity(index.twice() as usize + 1);
    let mut current = 0.0;
    for j in index.weights() {
        let twice_j = j.twice();
        current += coupling * (params.lambda_half_pow(2 * twice_j) - params.lambda_half_pow(-2 * twice_j));
        squares.push((twice_j - 2, current));
    }
    let (_, terminal) = squares.pop().expect("at least one weight");
    let mut r = Vec::with_capacity(squares.len());
    for (twice_j, sq) in squares {
        if sq < -clamp {
            return Err(Error::NegativeSquare { index, twice_j, value: sq });
        }
        r.push(if sq.abs() <= clamp { 0.0 } else { sq.sqrt() });
    }
    Ok((r, terminal))
}

/// Generator matrices `(Q, E, F)` for the relation `ef - fe = coupling (q^2 - q^-2)`.
pub fn generators_with_coupling(
    params: &Params,
    index: RepIndex,
    sign: Sign,
    coupling: f64,
) -> Result<(CMat, CMat, CMat, Vec<f64>)> {
    let (r, _) = lowering_coefficients(params, index, coupling)?;
    let d = index.dim();
    let q_diag: Vec<f64> = index
        .weights()
        .map(|j| sign.as_f64() * params.lambda_half_pow(j.twice()))
        .collect();
    let mut e = CMat::zeros(d, d);
    for (p, &rp) in r.iter().enumerate() {
        e[(p, p + 1)] = c(rp);
    }
    let f = e.adjoint();
    Ok((diag_real(&q_diag), e, f, r))
}

/// Build `pi_n` (`Sign::Plus`) or `pi'_n` (`Sign::Minus`).
pub fn build_rep(params: &Params, index: RepIndex, sign: Sign) -> Result<Rep> {
    let (q, e, f, r) = generators_with_coupling(params, index, sign, params.coupling())?;
    let q_inv = CMat::from_diagonal(&q.diagonal().map(|z| Complex64::new(1.0 / z.re, 0.0)));
    Ok(Rep { index, sign, r, q, q_inv, e, f })
}

/// `r_{-n-1}^2` from the downward recursion; vanishes for a consistent representation.
pub fn terminal_square(params: &Params, index: RepIndex) -> Result<f64> {
    Ok(lowering_coefficients(params, index, params.coupling())?.1)
}

impl Rep {
    pub fn index(&self) -> RepIndex {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.index.dim()
    }

    /// `r_j` for `j = n-1` down to `-n`.
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// `r_j` looked up by weight, with `r_n = r_{-n-1} = 0`.
    pub fn r_at(&self, j: Weight) -> f64 {
        let p = (self.index.twice() as i32 - 2 - j.twice()) / 2;
        if p < 0 || (j.twice() - self.index.twice() as i32) % 2 != 0 {
            return 0.0;
        }
        self.r.get(p as usize).copied().unwrap_or(0.0)
    }

    pub fn q(&self) -> &CMat {
        &self.q
    }

    pub fn q_inv(&self) -> &CMat {
        &self.q_inv
    }

    pub fn e(&self) -> &CMat {
        &self.e
    }

    pub fn f(&self) -> &CMat {
        &self.f
    }

    /// Real diagonal `Q^s` for real `s`; only defined for `pi_n`.
    pub fn q_power(&self, params: &Params, s: f64) -> CMat {
        debug_assert_eq!(self.sign, Sign::Plus);
        let values: Vec<f64> = self.index.weights().map(|j| params.lambda_pow(s * j.as_f64())).collect();
        diag_real(&values)
    }

    fn generator(&self, g: Generator) -> &CMat {
        match g {
            Generator::Q => &self.q,
            Generator::QInv => &self.q_inv,
            Generator::E => &self.e,
            Generator::F => &self.f,
        }
    }

    pub fn eval_word(&self, w: &Word) -> CMat {
        w.letters()
            .iter()
            .fold(identity(self.dim()), |acc, &g| acc * self.generator(g))
    }

    /// Evaluate a polynomial multiplicatively and linearly.
    pub fn eval(&self, x: &AlgPoly) -> CMat {
        let d = self.dim();
        x.terms().fold(CMat::zeros(d, d), |acc, (w, v)| acc + self.eval_word(w) * *v)
    }
}

/// Residuals of `QE - lambda EQ`, `QF - lambda^-1 FQ` and
/// `EF - FE - coupling (Q^2 - Q^-2)` in the max-entry norm.
pub fn relation_residuals(params: &Params, q: &CMat, e: &CMat, f: &CMat, coupling: f64) -> [f64; 3] {
    let lam = params.lambda();
    let q_inv = q.clone().try_inverse().expect("Q invertible");
    let q2 = q * q;
    let qi2 = &q_inv * &q_inv;
    let r1 = max_abs(&(q * e - e * q * c(lam)));
    let r2 = max_abs(&(q * f - f * q * c(1.0 / lam)));
    let r3 = max_abs(&(e * f - f * e - (q2 - qi2) * c(coupling)));
    [r1, r2, r3]
}

/// `pi(C)` for the Casimir element.
pub fn casimir_matrix(params: &Params, rep: &Rep) -> CMat {
    rep.eval(&words::casimir(params.lambda()))
}

/// The eigenvalue `2 (lambda^{2n+1} + lambda^{-2n-1})` of the Casimir on `H_n`.
pub fn casimir_scalar(params: &Params, index: RepIndex) -> f64 {
    let x = f64::from(index.twice()) + 1.0;
    2.0 * (params.lambda_pow(x) + params.lambda_pow(-x))
}

/// The three algebraically equivalent expressions of the Casimir, evaluated in `rep`.
pub fn casimir_forms(params: &Params, rep: &Rep) -> [CMat; 3] {
    let lam = params.lambda();
    [
        casimir_matrix(params, rep),
        rep.eval(&words::half_casimir_fe(lam)) * c(2.0),
        rep.eval(&words::half_casimir_ef(lam)) * c(2.0),
    ]
}

/// `pi(Gamma_k(q))` with
/// `Gamma_k(q) = c (l - l^{1-2k})/(l - 1/l) q^2 - c (1/l - l^{2k-1})/(1/l - l) q^-2`.
pub fn gamma_poly(params: &Params, k: u32, rep: &Rep) -> CMat {
    assert!(k >= 1, "Gamma_k needs k >= 1");
    let lam = params.lambda();
    let cpl = params.coupling();
    let kf = f64::from(k);
    let a = cpl * (lam - params.lambda_pow(1.0 - 2.0 * kf)) / (lam - 1.0 / lam);
    let b = cpl * (1.0 / lam - params.lambda_pow(2.0 * kf - 1.0)) / (1.0 / lam - lam);
    let q2 = rep.q() * rep.q();
    let qi2 = rep.q_inv() * rep.q_inv();
    q2 * c(a) - qi2 * c(b)
}

/// `max |E F^k - F^k E - F^{k-1} Gamma_k(Q)|`.
pub fn gamma_residual(params: &Params, k: u32, rep: &Rep) -> f64 {
    let fk = rep.eval(&AlgPoly::f().pow(k as usize));
    let fk1 = rep.eval(&AlgPoly::f().pow(k as usize - 1));
    let lhs = rep.e() * &fk - &fk * rep.e();
    let rhs = fk1 * gamma_poly(params, k, rep);
    max_abs_diff(&lhs, &rhs)
}

/// Identify `(n, sign)` of an irreducible `*`-representation from its
/// highest weight: an eigenvector `xi_0` of `Q` with `E xi_0 = 0` and
/// eigenvalue `a = sign * lambda^n`.
pub fn classify_by_highest_weight(params: &Params, q: &CMat, e: &CMat, f: &CMat) -> Result<(RepIndex, Sign)> {
    let d = q.nrows();
    if q.ncols() != d || e.shape() != (d, d) || f.shape() != (d, d) || d == 0 {
        return Err(Error::NotAdmissible("generator matrices must be square and equal-sized".into()));
    }
    let scale = max_abs(q).max(max_abs(e)).max(1.0);
    let tol = params.tol_abs() + params.tol_rel() * scale;
    if max_abs_diff(e, &f.adjoint()) > tol || max_abs_diff(q, &q.adjoint()) > tol {
        return Err(Error::NotAdmissible("not a *-representation (E^* != F or Q^* != Q)".into()));
    }

    let hermitian = (q + q.adjoint()) * c(0.5);
    let eig = hermitian.symmetric_eigen();
    // Group eigenvalues into clusters and look for a cluster with an E-kernel vector.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let mut best: Option<(f64, CVec)> = None;
    let mut used = vec![false; d];
    for &i in &order {
        if used[i] {
            continue;
        }
        let a = eig.eigenvalues[i];
        let cluster: Vec<usize> = (0..d)
            .filter(|&k| !used[k] && (eig.eigenvalues[k] - a).abs() <= tol * a.abs().max(1.0))
            .collect();
        for &k in &cluster {
            used[k] = true;
        }
        let basis = CMat::from_columns(&cluster.iter().map(|&k| eig.eigenvectors.column(k).clone_owned()).collect::<Vec<_>>());
        let restricted = e * &basis;
        let (ker, _) = null_space(&restricted, params.tol_rel().max(1e-12), tol);
        if let Some(v) = ker.first() {
            let candidate = &basis * v;
            if best.as_ref().is_none_or(|(b, _)| a.abs() > b.abs()) {
                best = Some((a, candidate));
            }
        }
    }
    let (a, _) = best.ok_or_else(|| Error::NotAdmissible("no eigenvector of Q is annihilated by E".into()))?;
    if a.abs() < f64::MIN_POSITIVE {
        return Err(Error::NotAdmissible("highest weight eigenvalue is zero".into()));
    }
    let spin = a.abs().ln() / params.t();
    let twice = (2.0 * spin).round();
    if twice < 0.0 || (2.0 * spin - twice).abs() > 1e-6 {
        return Err(Error::NotAdmissible(format!("|a| = {} is not lambda^(k/2) for an integer k >= 0", a.abs())));
    }
    let index = RepIndex::from_twice(twice as u32);
    if index.dim() != d {
        return Err(Error::NotAdmissible(format!(
            "highest weight gives spin {index} (dimension {}) but the space has dimension {d}; reducible input",
            index.dim()
        )));
    }
    let sign = if a > 0.0 { Sign::Plus } else { Sign::Minus };
    Ok((index, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(0.3).unwrap()
    }

    #[test]
    fn spin_half_has_unit_r() {
        let rep = build_rep(&params(), RepIndex::HALF, Sign::Plus).unwrap();
        assert_eq!(rep.r().len(), 1);
        assert!((rep.r()[0] - 1.0).abs() < 1e-14);
        let lam = params().lambda();
        let q = rep.eval(&AlgPoly::q());
        assert!((q[(0, 0)].re - lam.sqrt()).abs() < 1e-14);
        assert!((q[(1, 1)].re - 1.0 / lam.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn trivial_rep_is_counit() {
        let p = params();
        let rep = build_rep(&p, RepIndex::ZERO, Sign::Plus).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.q()[(0, 0)], c(1.0));
        assert_eq!(rep.e()[(0, 0)], c(0.0));
        for w in Word::all_up_to(3) {
            let x = AlgPoly::from_word(w);
            assert!((rep.eval(&x)[(0, 0)] - words::formal_counit(&x)).norm() < 1e-14);
        }
    }

    #[test]
    fn spin_one_r_squares() {
        let p = params();
        let lam = p.lambda();
        let rep = build_rep(&p, RepIndex::from_twice(2), Sign::Plus).unwrap();
        assert!((rep.r()[0].powi(2) - (lam + 1.0 / lam)).abs() < 1e-12);
        assert!((rep.r()[1].powi(2) - (lam + 1.0 / lam)).abs() < 1e-12);
        assert_eq!(rep.r_at(Weight(0)), rep.r()[0]);
        assert_eq!(rep.r_at(Weight(-2)), rep.r()[1]);
        assert_eq!(rep.r_at(Weight(2)), 0.0);
    }

    #[test]
    fn commutator_in_spin_half() {
        let rep = build_rep(&params(), RepIndex::HALF, Sign::Plus).unwrap();
        let x = &AlgPoly::parse_word("ef").unwrap() - &AlgPoly::parse_word("fe").unwrap();
        let m = rep.eval(&x);
        assert!(max_abs_diff(&m, &diag_real(&[1.0, -1.0])) < 1e-14);
        assert!(max_abs_diff(&rep.eval(&AlgPoly::one()), &identity(2)) < 1e-15);
    }

    #[test]
    fn relations_and_symmetry() {
        let p = params();
        for twice in 0..=10 {
            for sign in [Sign::Plus, Sign::Minus] {
                let rep = build_rep(&p, RepIndex::from_twice(twice), sign).unwrap();
                let res = relation_residuals(&p, rep.q(), rep.e(), rep.f(), p.coupling());
                assert!(res.iter().all(|&r| r < 1e-10), "2n={twice} {res:?}");
                assert_eq!(rep.e().adjoint(), *rep.f());
                let r = rep.r();
                for (a, b) in r.iter().zip(r.iter().rev()) {
                    assert!((a - b).abs() < 1e-10);
                    assert!(*a > 0.0);
                }
                assert!(terminal_square(&p, rep.index()).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn casimir_scalars() {
        let p = params();
        let lam = p.lambda();
        let rep0 = build_rep(&p, RepIndex::ZERO, Sign::Plus).unwrap();
        assert!((casimir_matrix(&p, &rep0)[(0, 0)].re - 2.0 * (lam + 1.0 / lam)).abs() < 1e-12);
        let rep_half = build_rep(&p, RepIndex::HALF, Sign::Plus).unwrap();
        let expected = identity(2) * c(2.0 * (lam * lam + 1.0 / (lam * lam)));
        assert!(max_abs_diff(&casimir_matrix(&p, &rep_half), &expected) < 1e-12);
        let rep1 = build_rep(&p, RepIndex::from_twice(2), Sign::Minus).unwrap();
        let [a, b, cc] = casimir_forms(&p, &rep1);
        assert!(max_abs_diff(&a, &b) < 1e-12 && max_abs_diff(&a, &cc) < 1e-12);
        let scalar = casimir_scalar(&p, RepIndex::from_twice(2));
        assert!(max_abs_diff(&a, &(identity(3) * c(scalar))) < 1e-11);
    }

    #[test]
    fn gamma_identity() {
        let p = params();
        let rep0 = build_rep(&p, RepIndex::ZERO, Sign::Plus).unwrap();
        // Gamma_1 = c (q^2 - q^-2) vanishes on the trivial representation.
        assert!(max_abs(&gamma_poly(&p, 1, &rep0)) < 1e-15);
        let rep1 = build_rep(&p, RepIndex::from_twice(2), Sign::Plus).unwrap();
        let g1 = gamma_poly(&p, 1, &rep1);
        let direct = (rep1.q() * rep1.q() - rep1.q_inv() * rep1.q_inv()) * c(p.coupling());
        assert!(max_abs_diff(&g1, &direct) < 1e-13);
        for k in 1..=4 {
            assert!(gamma_residual(&p, k, &rep1) < 1e-10, "k={k}");
        }
    }

    #[test]
    fn classical_limit() {
        // As t -> 0, [E, F] -> diag(2j) and r_j^2 -> (n - j)(n + j + 1).
        let p = Params::new(1e-5).unwrap();
        let n = RepIndex::from_twice(4);
        let rep = build_rep(&p, n, Sign::Plus).unwrap();
        let h = rep.e() * rep.f() - rep.f() * rep.e();
        let h_classical: Vec<f64> = n.weights().map(|j| 2.0 * j.as_f64()).collect();
        assert!(max_abs_diff(&h, &diag_real(&h_classical)) < 1e-6);
        for (p_idx, r) in rep.r().iter().enumerate() {
            let j = n.as_f64() - 1.0 - p_idx as f64;
            let classical = (n.as_f64() - j) * (n.as_f64() + j + 1.0);
            assert!((r * r - classical).abs() < 1e-6);
        }
    }

    #[test]
    fn rescaled_generators_satisfy_coupled_relations() {
        // Representation for coupling 1, then e -> c^{1/2} e, f -> c^{1/2} f.
        let p = params();
        let cpl = p.coupling();
        for twice in 0..=6 {
            let (q, e, f, _) = generators_with_coupling(&p, RepIndex::from_twice(twice), Sign::Plus, 1.0).unwrap();
            let s = c(cpl.sqrt());
            let res = relation_residuals(&p, &q, &(&e * s), &(&f * s), cpl);
            assert!(res.iter().all(|&r| r < 1e-10));
        }
    }

    #[test]
    fn gauge_automorphism_preserves_relations() {
        let p = params();
        let z = Complex64::from_polar(1.0, 0.77);
        let rep = build_rep(&p, RepIndex::from_twice(3), Sign::Plus).unwrap();
        let res = relation_residuals(&p, rep.q(), &(rep.e() * z), &(rep.f() * z.conj()), p.coupling());
        assert!(res.iter().all(|&r| r < 1e-10));
    }

    // There is no test for the absence of a positive integral on the
    // enveloping algebra: it is a non-existence statement with nothing to
    // evaluate numerically.

    #[test]
    fn classify_round_trip() {
        let p = params();
        for twice in 0..=6 {
            for sign in [Sign::Plus, Sign::Minus] {
                let rep = build_rep(&p, RepIndex::from_twice(twice), sign).unwrap();
                let got = classify_by_highest_weight(&p, rep.q(), rep.e(), rep.f()).unwrap();
                assert_eq!(got, (RepIndex::from_twice(twice), sign));
            }
        }
    }

    #[test]
    fn classify_rejects_direct_sums() {
        let p = params();
        let a = build_rep(&p, RepIndex::ZERO, Sign::Plus).unwrap();
        let b = build_rep(&p, RepIndex::HALF, Sign::Plus).unwrap();
        let block = |x: &CMat, y: &CMat| {
            let mut m = CMat::zeros(3, 3);
            m.view_mut((0, 0), (1, 1)).copy_from(x);
            m.view_mut((1, 1), (2, 2)).copy_from(y);
            m
        };
        let r = classify_by_highest_weight(&p, &block(a.q(), b.q()), &block(a.e(), b.e()), &block(a.f(), b.f()));
        assert!(matches!(r, Err(Error::NotAdmissible(_))));
    }
}

//! The discrete quantum group `A = (+)_n A_n`, `A_n = M_{2n+1}(C)`.
//!
//! Elements are finitely supported. Multipliers such as `1`, `q` or the
//! modular element are never materialized globally; operations take an
//! explicit window of components instead.
//!
//! Matrix units `e_rs` in `A_n` are indexed by weights in the basis of `pi_n`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::clebsch::index_set;
use crate::error::Result;
use crate::group::QuantumGroup;
use crate::linalg::{self, c, diag_real, kron, matrix_unit, max_abs, CMat, CVec, ZERO};
use crate::params::{sign_pow, Params, RepIndex, Weight};
use crate::words::AlgPoly;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgElement {
    components: BTreeMap<RepIndex, CMat>,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_component(n: RepIndex, m: CMat) -> Self {
        assert_eq!(m.shape(), (n.dim(), n.dim()), "component size for spin {n}");
        let mut out = Self::zero();
        out.set(n, m);
        out
    }

    pub fn from_components(items: impl IntoIterator<Item = (RepIndex, CMat)>) -> Self {
        let mut out = Self::zero();
        for (n, m) in items {
            out.set(n, m);
        }
        out
    }

    /// The matrix unit `e_rs` in `A_n`.
    pub fn matrix_unit(n: RepIndex, r: Weight, s: Weight) -> Self {
        let (i, j) = (n.position(r).expect("weight r in range"), n.position(s).expect("weight s in range"));
        Self::from_component(n, matrix_unit(n.dim(), i, j))
    }

    /// `sum_{n in window} 1_n`.
    pub fn window_identity(window: &[RepIndex]) -> Self {
        Self::from_components(window.iter().map(|&n| (n, linalg::identity(n.dim()))))
    }

    fn set(&mut self, n: RepIndex, m: CMat) {
        if m.iter().any(|z| *z != ZERO) {
            self.components.insert(n, m);
        } else {
            self.components.remove(&n);
        }
    }

    pub fn component(&self, n: RepIndex) -> Option<&CMat> {
        self.components.get(&n)
    }

    pub fn component_or_zero(&self, n: RepIndex) -> CMat {
        self.components.get(&n).cloned().unwrap_or_else(|| CMat::zeros(n.dim(), n.dim()))
    }

    pub fn components(&self) -> impl Iterator<Item = (RepIndex, &CMat)> {
        self.components.iter().map(|(n, m)| (*n, m))
    }

    pub fn support(&self) -> Vec<RepIndex> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn map(&self, mut f: impl FnMut(RepIndex, &CMat) -> CMat) -> Self {
        Self::from_components(self.components.iter().map(|(n, m)| (*n, f(*n, m))))
    }

    pub fn add(&self, other: &AlgElement) -> Self {
        let keys: BTreeSet<RepIndex> = self.components.keys().chain(other.components.keys()).copied().collect();
        Self::from_components(keys.into_iter().map(|n| (n, self.component_or_zero(n) + other.component_or_zero(n))))
    }

    pub fn sub(&self, other: &AlgElement) -> Self {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map(|_, m| m * z)
    }

    pub fn mul(&self, other: &AlgElement) -> Self {
        Self::from_components(
            self.components
                .iter()
                .filter_map(|(n, a)| other.components.get(n).map(|b| (*n, a * b))),
        )
    }

    pub fn star(&self) -> Self {
        self.map(|_, m| m.adjoint())
    }

    /// Largest entry of `self - other` over the union of supports.
    pub fn max_abs_diff(&self, other: &AlgElement) -> f64 {
        self.sub(other).components.values().fold(0.0, |acc, m| acc.max(max_abs(m)))
    }

    pub fn max_abs(&self) -> f64 {
        self.components.values().fold(0.0, |acc, m| acc.max(max_abs(m)))
    }
}

/// Finitely many blocks `Delta(a)_{nm}` of an element of `M(A (x) A)`.
#[derive(Clone, Debug, Default)]
pub struct BiElement {
    components: BTreeMap<(RepIndex, RepIndex), CMat>,
}

impl BiElement {
    pub fn component(&self, n: RepIndex, m: RepIndex) -> Option<&CMat> {
        self.components.get(&(n, m))
    }

    pub fn components(&self) -> impl Iterator<Item = ((RepIndex, RepIndex), &CMat)> {
        self.components.iter().map(|(k, v)| (*k, v))
    }

    pub fn insert(&mut self, n: RepIndex, m: RepIndex, x: CMat) {
        self.components.insert((n, m), x);
    }
}

/// The conjugate-linear unitary `G_n xi(n, j) = (-1)^{n+j} xi(n, -j)`,
/// stored as `G_n = U K` with `U` a real signed permutation and `K` entrywise
/// conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugateUnitary {
    index: RepIndex,
}

impl ConjugateUnitary {
    pub fn new(index: RepIndex) -> Self {
        Self { index }
    }

    pub fn signed_permutation(&self) -> CMat {
        let n = self.index;
        let mut u = CMat::zeros(n.dim(), n.dim());
        for j in n.weights() {
            let col = n.position(j).expect("weight");
            let row = n.position(j.neg()).expect("weight");
            u[(row, col)] = c(sign_pow(n.twice() as i32 + j.twice()));
        }
        u
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        self.signed_permutation() * v.map(|z| z.conj())
    }

    /// `G_n^2 = +1` for integer spin and `-1` otherwise.
    pub fn square_sign(&self) -> f64 {
        if self.index.is_integer() {
            1.0
        } else {
            -1.0
        }
    }
}

/// `R(a) = G^* a^* G` on one component; with `G = U K` this is `U^T a^T U`.
pub fn unitary_antipode_block(n: RepIndex, a: &CMat) -> CMat {
    let u = ConjugateUnitary::new(n).signed_permutation();
    u.transpose() * a.transpose() * u
}

fn weights_of(n: RepIndex) -> Vec<f64> {
    n.weights().map(|j| j.as_f64()).collect()
}

/// `a |-> Q^{2s} a Q^{-2s}` on one component: entry `(r, s')` scales by `lambda^{2s(r - s')}`.
pub fn scaling_imag_block(params: &Params, n: RepIndex, a: &CMat, s: f64) -> CMat {
    let w = weights_of(n);
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * params.lambda_pow(2.0 * s * (w[i] - w[j])))
}

/// `tau_s(a) = Q^{-2is} a Q^{2is}` on one component.
pub fn scaling_block(params: &Params, n: RepIndex, a: &CMat, s: f64) -> CMat {
    let w = weights_of(n);
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| {
        a[(i, j)] * Complex64::from_polar(1.0, -2.0 * s * params.t() * (w[i] - w[j]))
    })
}

/// `S = R tau_{-i/2}` on one component.
pub fn antipode_block(params: &Params, n: RepIndex, a: &CMat) -> CMat {
    unitary_antipode_block(n, &scaling_imag_block(params, n, a, -0.5))
}

/// `S^{-1} = tau_{i/2} R` on one component.
pub fn antipode_inv_block(params: &Params, n: RepIndex, a: &CMat) -> CMat {
    scaling_imag_block(params, n, &unitary_antipode_block(n, a), 0.5)
}

/// `c_n = sum_j lambda^{2j} = trace(Q_n^2)`.
pub fn trace_q2(params: &Params, n: RepIndex) -> f64 {
    n.weights().map(|j| params.lambda_pow(2.0 * j.as_f64())).sum()
}

/// `phi(e_rs) = c_n delta(r, s) lambda^{-2r}`.
pub fn left_integral_block(params: &Params, n: RepIndex, a: &CMat) -> Complex64 {
    let cn = trace_q2(params, n);
    n.weights()
        .enumerate()
        .map(|(p, j)| a[(p, p)] * params.lambda_pow(-2.0 * j.as_f64()))
        .sum::<Complex64>()
        * cn
}

/// `psi(e_rs) = c_n delta(r, s) lambda^{2r}`.
pub fn right_integral_block(params: &Params, n: RepIndex, a: &CMat) -> Complex64 {
    let cn = trace_q2(params, n);
    n.weights()
        .enumerate()
        .map(|(p, j)| a[(p, p)] * params.lambda_pow(2.0 * j.as_f64()))
        .sum::<Complex64>()
        * cn
}

/// Closed form `Delta(h)(1_n (x) 1_n) = (1/c) sum_{r,s} (-1)^{s-r} lambda^{r+s} e_{-s,-r} (x) e_{sr}`.
pub fn delta_h(params: &Params, n: RepIndex) -> CMat {
    let d = n.dim();
    let cn = trace_q2(params, n);
    let mut out = CMat::zeros(d * d, d * d);
    for r in n.weights() {
        for s in n.weights() {
            let coeff = sign_pow(s.twice() - r.twice()) * params.lambda_pow(r.as_f64() + s.as_f64()) / cn;
            let left = matrix_unit(d, n.position(s.neg()).unwrap(), n.position(r.neg()).unwrap());
            let right = matrix_unit(d, n.position(s).unwrap(), n.position(r).unwrap());
            out += kron(&left, &right) * c(coeff);
        }
    }
    out
}

/// The vector `sum_k (-1)^{k+n} lambda^k xi(n, -k) (x) xi(n, k)` spanning the range of `Delta(h)_{nn}`.
pub fn delta_h_range_vector(params: &Params, n: RepIndex) -> CVec {
    let d = n.dim();
    let mut v = CVec::zeros(d * d);
    for k in n.weights() {
        let pos = n.position(k.neg()).unwrap() * d + n.position(k).unwrap();
        v[pos] = c(sign_pow(k.twice() + n.twice() as i32) * params.lambda_pow(k.as_f64()));
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralSide {
    Left,
    Right,
}

impl QuantumGroup {
    /// `pi(x)` restricted to the components in `window`.
    pub fn embed(&self, x: &AlgPoly, window: &[RepIndex]) -> Result<AlgElement> {
        let mut out = AlgElement::zero();
        for &n in window {
            out.set(n, self.rep(n)?.eval(x));
        }
        Ok(out)
    }

    /// `Delta(a)_{nm} = sum_{k in I_nm} V_k a_k V_k^*`.
    pub fn coproduct_component(&self, a: &AlgElement, n: RepIndex, m: RepIndex) -> Result<CMat> {
        let ks = index_set(n, m);
        if !ks.iter().any(|k| a.component(*k).is_some()) {
            let d = n.dim() * m.dim();
            return Ok(CMat::zeros(d, d));
        }
        Ok(self.decompose(n, m)?.assemble(|k| a.component(k)))
    }

    /// All blocks `Delta(a)_{nm}` with `n, m` in `window`.
    pub fn coproduct(&self, a: &AlgElement, window: &[RepIndex]) -> Result<BiElement> {
        let mut out = BiElement::default();
        for &n in window {
            for &m in window {
                out.insert(n, m, self.coproduct_component(a, n, m)?);
            }
        }
        Ok(out)
    }

    /// `epsilon(a)`: the entry of the `A_0` component.
    pub fn counit(&self, a: &AlgElement) -> Complex64 {
        a.component(RepIndex::ZERO).map_or(ZERO, |m| m[(0, 0)])
    }

    pub fn scaling(&self, a: &AlgElement, s: f64) -> AlgElement {
        a.map(|n, m| scaling_block(self.params(), n, m, s))
    }

    pub fn scaling_imag(&self, a: &AlgElement, s: f64) -> AlgElement {
        a.map(|n, m| scaling_imag_block(self.params(), n, m, s))
    }

    pub fn unitary_antipode(&self, a: &AlgElement) -> AlgElement {
        a.map(unitary_antipode_block)
    }

    pub fn antipode(&self, a: &AlgElement) -> AlgElement {
        a.map(|n, m| antipode_block(self.params(), n, m))
    }

    pub fn antipode_inv(&self, a: &AlgElement) -> AlgElement {
        a.map(|n, m| antipode_inv_block(self.params(), n, m))
    }

    /// The cointegral `h`: the unit of `A_0`.
    pub fn cointegral(&self) -> AlgElement {
        AlgElement::from_component(RepIndex::ZERO, linalg::identity(1))
    }

    pub fn delta_h(&self, n: RepIndex) -> CMat {
        delta_h(self.params(), n)
    }

    pub fn left_integral(&self, a: &AlgElement) -> Complex64 {
        a.components().map(|(n, m)| left_integral_block(self.params(), n, m)).sum()
    }

    pub fn right_integral(&self, a: &AlgElement) -> Complex64 {
        a.components().map(|(n, m)| right_integral_block(self.params(), n, m)).sum()
    }

    /// `delta_n = pi_n(q^4)`.
    pub fn modular_element_component(&self, n: RepIndex) -> CMat {
        let values: Vec<f64> = n.weights().map(|j| self.params().lambda_pow(4.0 * j.as_f64())).collect();
        diag_real(&values)
    }

    /// Modular automorphisms with the convention `phi(ab) = phi(b sigma(a))`
    /// for both integrals: `sigma_phi(a) = Q^{-2} a Q^2`, `sigma_psi(a) = Q^2 a Q^{-2}`.
    pub fn modular_automorphism(&self, a: &AlgElement, side: IntegralSide) -> AlgElement {
        let s = match side {
            IntegralSide::Left => -1.0,
            IntegralSide::Right => 1.0,
        };
        self.scaling_imag(a, s)
    }
}

//! The dual `B`: finitely supported linear functionals on `A`.
//!
//! A functional is stored by coefficient matrices `F^(n)` with
//! `<a, b> = sum_n sum_{rs} F^(n)_{rs} (a_n)_{rs}`. Every structure map on `B`
//! is the transpose of the corresponding map on `A`:
//!
//! - product: `<a, x y> = <Delta(a), y (x) x>` (`y` pairs with the first leg);
//! - antipode: `<a, S(b)> = <S^-1(a), b>`;
//! - involution: `<a, b*> = conj(<S(a*), b>)`.
//!
//! The fundamental matrix `u` is indexed by weights; basis labels `1, 2`
//! correspond to weights `+1/2, -1/2`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;

use crate::dqg::{antipode_block, antipode_inv_block, scaling_imag_block, AlgElement};
use crate::error::Result;
use crate::group::QuantumGroup;
use crate::linalg::{self, c, matrix_unit, max_abs, singular_values, CMat, ZERO};
use crate::params::{sign_pow, RepIndex, Weight};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DualElement {
    components: BTreeMap<RepIndex, CMat>,
}

impl DualElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_component(n: RepIndex, coeffs: CMat) -> Self {
        assert_eq!(coeffs.shape(), (n.dim(), n.dim()), "coefficient size for spin {n}");
        let mut out = Self::zero();
        out.set(n, coeffs);
        out
    }

    /// The unit of `B`: the counit of `A`, supported on `A_0`.
    pub fn unit() -> Self {
        Self::from_component(RepIndex::ZERO, linalg::identity(1))
    }

    /// The coordinate functional `a |-> (a_n)_{rs}`.
    pub fn coordinate(n: RepIndex, r: Weight, s: Weight) -> Self {
        let (i, j) = (n.position(r).expect("weight r"), n.position(s).expect("weight s"));
        Self::from_component(n, matrix_unit(n.dim(), i, j))
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

    pub fn add(&self, other: &DualElement) -> Self {
        let keys: BTreeSet<RepIndex> = self.components.keys().chain(other.components.keys()).copied().collect();
        let mut out = Self::zero();
        for n in keys {
            out.set(n, self.component_or_zero(n) + other.component_or_zero(n));
        }
        out
    }

    pub fn sub(&self, other: &DualElement) -> Self {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = Self::zero();
        for (n, m) in &self.components {
            out.set(*n, m * z);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.components.values().fold(0.0, |acc, m| acc.max(max_abs(m)))
    }

    pub fn max_abs_diff(&self, other: &DualElement) -> f64 {
        self.sub(other).max_abs()
    }

    /// The functional `b o T` for a component-preserving linear map `T` on `A`.
    pub fn compose(&self, map: impl Fn(RepIndex, &CMat) -> CMat) -> Self {
        self.compose_with(|n, unit| pair_block(self.components.get(&n), &map(n, unit)))
    }

    fn compose_with(&self, value_on_unit: impl Fn(RepIndex, &CMat) -> Complex64) -> Self {
        let mut out = Self::zero();
        for &n in self.components.keys() {
            let d = n.dim();
            let coeffs = CMat::from_fn(d, d, |p, q| value_on_unit(n, &matrix_unit(d, p, q)));
            out.set(n, coeffs);
        }
        out
    }
}

fn pair_block(coeffs: Option<&CMat>, a: &CMat) -> Complex64 {
    coeffs.map_or(ZERO, |f| f.iter().zip(a.iter()).map(|(x, y)| x * y).sum())
}

/// `<a, b>`.
pub fn pair(a: &AlgElement, b: &DualElement) -> Complex64 {
    a.components().map(|(n, m)| pair_block(b.component(n), m)).sum()
}

/// The pairing `<X, y (x) x>` for a block `X` on `H_n (x) H_m`, with `y` on the first leg.
pub fn pair_tensor(x_block: &CMat, first: &CMat, second: &CMat) -> Complex64 {
    let k = linalg::kron(first, second);
    x_block.iter().zip(k.iter()).map(|(a, b)| a * b).sum()
}

/// The fundamental matrix `u`, `<a, u_ij> = a_ij` on `A_{1/2}`.
#[derive(Clone, Debug)]
pub struct UMatrix {
    entries: [[DualElement; 2]; 2],
}

impl UMatrix {
    pub fn new() -> Self {
        let w = [Weight(1), Weight(-1)];
        let entry = |i: usize, j: usize| DualElement::coordinate(RepIndex::HALF, w[i], w[j]);
        Self { entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    /// Entry by basis label position (0 for weight `+1/2`, 1 for `-1/2`).
    pub fn get(&self, i: usize, j: usize) -> &DualElement {
        &self.entries[i][j]
    }

    /// Entry by weights `(2i, 2j)` with values in `{1, -1}`.
    pub fn by_weight(&self, twice_i: i32, twice_j: i32) -> &DualElement {
        &self.entries[weight_pos(twice_i)][weight_pos(twice_j)]
    }

    pub fn alpha(&self) -> &DualElement {
        &self.entries[0][0]
    }

    pub fn gamma(&self) -> &DualElement {
        &self.entries[1][0]
    }
}

impl Default for UMatrix {
    fn default() -> Self {
        Self::new()
    }
}

fn weight_pos(twice: i32) -> usize {
    match twice {
        1 => 0,
        -1 => 1,
        other => panic!("u is indexed by weights +-1/2, got 2j = {other}"),
    }
}

/// Residuals of the unitarity equations and of the shape of `u`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitarityResiduals {
    /// `S(u) u - 1`.
    pub left: f64,
    /// `u S(u) - 1`.
    pub right: f64,
    /// `u_22 - u_11*`.
    pub diagonal_shape: f64,
    /// `u_12 + lambda^-1 u_21*`.
    pub off_diagonal_shape: f64,
}

/// Rank of the `A_k` projections of all `u`-words, per component.
#[derive(Clone, Debug, Serialize)]
pub struct SpanRank {
    pub twice_k: u32,
    pub rank: usize,
    pub expected: usize,
    /// Smallest of the leading `expected` singular values divided by the largest.
    pub relative_gap: f64,
}

impl SpanRank {
    pub fn full(&self, min_gap: f64) -> bool {
        self.rank == self.expected && self.relative_gap >= min_gap
    }
}

impl QuantumGroup {
    /// The product with `<a, x y> = <Delta(a), y (x) x>`.
    pub fn dual_mul(&self, x: &DualElement, y: &DualElement) -> Result<DualElement> {
        let mut acc: BTreeMap<RepIndex, CMat> = BTreeMap::new();
        for (n, fy) in y.components() {
            for (m, fx) in x.components() {
                let kernel = linalg::kron(fy, fx);
                let decomposition = self.decompose(n, m)?;
                for piece in decomposition.pieces() {
                    let v = piece.matrix();
                    let contribution = v.transpose() * &kernel * v.map(|z| z.conj());
                    let k = piece.k();
                    acc.entry(k)
                        .and_modify(|existing| *existing += &contribution)
                        .or_insert(contribution);
                }
            }
        }
        let mut out = DualElement::zero();
        for (k, m) in acc {
            out.set(k, m);
        }
        Ok(out)
    }

    /// Product of a list of functionals, left to right; the empty product is the unit.
    pub fn dual_product(&self, factors: &[&DualElement]) -> Result<DualElement> {
        factors.iter().try_fold(DualElement::unit(), |acc, f| self.dual_mul(&acc, f))
    }

    /// `<a (x) a', Delta(b)> = <a a', b>`.
    pub fn dual_coproduct_pairing(&self, a: &AlgElement, a2: &AlgElement, b: &DualElement) -> Complex64 {
        pair(&a.mul(a2), b)
    }

    /// `<a, S(b)> = <S^-1(a), b>`.
    pub fn dual_antipode(&self, b: &DualElement) -> DualElement {
        b.compose(|n, a| antipode_inv_block(self.params(), n, a))
    }

    /// `<a, S^-1(b)> = <S(a), b>`.
    pub fn dual_antipode_inv(&self, b: &DualElement) -> DualElement {
        b.compose(|n, a| antipode_block(self.params(), n, a))
    }

    /// `<a, b*> = conj(<S(a*), b>)`.
    pub fn dual_star(&self, b: &DualElement) -> DualElement {
        b.compose_with(|n, unit| pair_block(b.component(n), &antipode_block(self.params(), n, &unit.adjoint())).conj())
    }

    /// `epsilon_B(b) = <1, b>`.
    pub fn dual_counit(&self, b: &DualElement) -> Complex64 {
        b.components().map(|(_, m)| linalg::trace(m)).sum()
    }

    /// `phi_B(b) = <h, b>`.
    pub fn dual_haar(&self, b: &DualElement) -> Complex64 {
        pair(&self.cointegral(), b)
    }

    /// Modular automorphism of `phi_B`: `<a, sigma(b)> = <S^-2(a) delta, b>`.
    pub fn dual_modular(&self, b: &DualElement) -> DualElement {
        b.compose(|n, a| scaling_imag_block(self.params(), n, a, 1.0) * self.modular_element_component(n))
    }

    /// Inverse of [`dual_modular`](Self::dual_modular): `<a, sigma^-1(b)> = <S^2(a delta^-1), b>`.
    pub fn dual_modular_inv(&self, b: &DualElement) -> DualElement {
        b.compose(|n, a| {
            let delta_inv = self.modular_element_component(n).map(|z| if z == ZERO { z } else { c(1.0) / z });
            scaling_imag_block(self.params(), n, &(a * delta_inv), -1.0)
        })
    }

    pub fn u_matrix(&self) -> UMatrix {
        UMatrix::new()
    }

    /// 2x2 product of matrices over `B` built from `entry(i, j)`.
    fn matrix_product(
        &self,
        left: impl Fn(usize, usize) -> DualElement,
        right: impl Fn(usize, usize) -> DualElement,
    ) -> Result<[[DualElement; 2]; 2]> {
        let mut out: [[DualElement; 2]; 2] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = DualElement::zero();
                for k in 0..2 {
                    acc = acc.add(&self.dual_mul(&left(i, k), &right(k, j))?);
                }
                *slot = acc;
            }
        }
        Ok(out)
    }

    fn distance_to_identity(product: &[[DualElement; 2]; 2]) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in product.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let target = if i == j { DualElement::unit() } else { DualElement::zero() };
                worst = worst.max(entry.max_abs_diff(&target));
            }
        }
        worst
    }

    pub fn check_unitarity(&self, u: &UMatrix) -> Result<UnitarityResiduals> {
        let lam = self.params().lambda();
        let s = |i: usize, j: usize| self.dual_antipode(u.get(i, j));
        let plain = |i: usize, j: usize| u.get(i, j).clone();
        let left = Self::distance_to_identity(&self.matrix_product(s, plain)?);
        let right = Self::distance_to_identity(&self.matrix_product(plain, s)?);
        let diagonal_shape = u.get(1, 1).max_abs_diff(&self.dual_star(u.get(0, 0)));
        let off_diagonal_shape = u.get(0, 1).max_abs_diff(&self.dual_star(u.get(1, 0)).scale(c(-1.0 / lam)));
        Ok(UnitarityResiduals { left, right, diagonal_shape, off_diagonal_shape })
    }

    /// Residuals of the five defining relations of `SU_q(2)` with
    /// `alpha = u_11`, `gamma = u_21` and `q = 1/lambda`, in the order
    /// `ag - q ga`, `ag* - q g*a`, `gg* - g*g`, `a*a + g*g - 1`, `aa* + q^2 g*g - 1`.
    pub fn woronowicz_residuals(&self, u: &UMatrix) -> Result<[f64; 5]> {
        let q = 1.0 / self.params().lambda();
        let a = u.alpha();
        let g = u.gamma();
        let a_star = self.dual_star(a);
        let g_star = self.dual_star(g);
        let one = DualElement::unit();
        let m = |x: &DualElement, y: &DualElement| self.dual_mul(x, y);
        Ok([
            m(a, g)?.sub(&m(g, a)?.scale(c(q))).max_abs(),
            m(a, &g_star)?.sub(&m(&g_star, a)?.scale(c(q))).max_abs(),
            m(g, &g_star)?.sub(&m(&g_star, g)?).max_abs(),
            m(&a_star, a)?.add(&m(&g_star, g)?).sub(&one).max_abs(),
            m(a, &a_star)?.add(&m(&g_star, g)?.scale(c(q * q))).sub(&one).max_abs(),
        ])
    }

    /// Ranks of the `A_k` parts of all products of at most `2 n_max` entries of `u`,
    /// for `k = 0, 1/2, ..., n_max`.
    pub fn span_check(&self, n_max: RepIndex) -> Result<Vec<SpanRank>> {
        let u = self.u_matrix();
        let generators: Vec<&DualElement> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| u.get(i, j)).collect();
        let mut all = vec![DualElement::unit()];
        let mut layer = vec![DualElement::unit()];
        for _ in 0..n_max.twice() {
            let mut next = Vec::with_capacity(layer.len() * 4);
            for w in &layer {
                for g in &generators {
                    next.push(self.dual_mul(w, g)?);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut out = Vec::new();
        for k in RepIndex::up_to(n_max) {
            let d = k.dim();
            let rows: Vec<CMat> = all.iter().filter_map(|b| b.component(k).cloned()).collect();
            let expected = d * d;
            if rows.is_empty() {
                out.push(SpanRank { twice_k: k.twice(), rank: 0, expected, relative_gap: 0.0 });
                continue;
            }
            let stacked = CMat::from_fn(rows.len(), expected, |r, col| rows[r][(col / d, col % d)]);
            let sigma = singular_values(&stacked);
            let top = sigma[0];
            let rank = sigma.iter().filter(|&&s| s > self.params().tol_rel() * top).count();
            let relative_gap = if sigma.len() >= expected { sigma[expected - 1] / top } else { 0.0 };
            out.push(SpanRank { twice_k: k.twice(), rank, expected, relative_gap });
        }
        Ok(out)
    }
}

/// Closed form `phi_B(u_kl u_ij) = delta(i,-k) delta(j,-l) (-1)^{k-l} lambda^{k+l} / (lambda + 1/lambda)`,
/// arguments doubled.
pub fn haar_quadratic_closed_form(lambda: f64, k: i32, l: i32, i: i32, j: i32) -> f64 {
    if i != -k || j != -l {
        return 0.0;
    }
    sign_pow(k - l) * lambda.powf(f64::from(k + l) / 2.0) / (lambda + 1.0 / lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Params;
    use crate::words::AlgPoly;

    fn qg() -> QuantumGroup {
        QuantumGroup::new(Params::new(0.3).unwrap())
    }

    #[test]
    fn pairing_with_u() {
        let g = qg();
        let lam = g.params().lambda();
        let u = g.u_matrix();
        let q = g.embed(&AlgPoly::q(), &[RepIndex::HALF]).unwrap();
        assert!((pair(&q, u.by_weight(1, 1)) - c(lam.sqrt())).norm() < 1e-14);
        let e = g.embed(&AlgPoly::e(), &[RepIndex::HALF]).unwrap();
        assert!((pair(&e, u.by_weight(1, -1)) - c(1.0)).norm() < 1e-14);
        assert_eq!(pair(&q, &DualElement::zero()), ZERO);
    }

    #[test]
    fn unit_is_neutral() {
        let g = qg();
        let u = g.u_matrix();
        for i in 0..2 {
            for j in 0..2 {
                let b = u.get(i, j);
                assert!(g.dual_mul(&DualElement::unit(), b).unwrap().max_abs_diff(b) < 1e-14);
                assert!(g.dual_mul(b, &DualElement::unit()).unwrap().max_abs_diff(b) < 1e-14);
            }
        }
    }

    #[test]
    fn commutator_pairing() {
        // <pi(e),u><pi(f),u> - <pi(f),u><pi(e),u> = diag(1, -1)
        let g = qg();
        let u = g.u_matrix();
        let w = [RepIndex::HALF];
        let e = g.embed(&AlgPoly::e(), &w).unwrap();
        let f = g.embed(&AlgPoly::f(), &w).unwrap();
        let as_matrix = |a: &AlgElement| CMat::from_fn(2, 2, |i, j| pair(a, u.get(i, j)));
        let comm = as_matrix(&e) * as_matrix(&f) - as_matrix(&f) * as_matrix(&e);
        assert!(linalg::max_abs_diff(&comm, &linalg::diag_real(&[1.0, -1.0])) < 1e-14);
    }

    #[test]
    fn antipode_of_u_and_unit() {
        let g = qg();
        let lam = g.params().lambda();
        let u = g.u_matrix();
        assert!(g.dual_antipode(u.get(0, 0)).max_abs_diff(u.get(1, 1)) < 1e-13);
        assert!(g.dual_antipode(u.get(0, 1)).max_abs_diff(&u.get(0, 1).scale(c(-lam))) < 1e-13);
        assert!(g.dual_antipode(u.get(1, 0)).max_abs_diff(&u.get(1, 0).scale(c(-1.0 / lam))) < 1e-13);
        assert!(g.dual_antipode(&DualElement::unit()).max_abs_diff(&DualElement::unit()) < 1e-15);
    }

    #[test]
    fn haar_basics() {
        let g = qg();
        assert!((g.dual_haar(&DualElement::unit()) - c(1.0)).norm() < 1e-15);
        let u = g.u_matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.dual_haar(u.get(i, j)), ZERO);
            }
        }
    }

    #[test]
    fn counit_of_u() {
        let g = qg();
        let u = g.u_matrix();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { c(1.0) } else { ZERO };
                assert_eq!(g.dual_counit(u.get(i, j)), expected);
            }
        }
    }

    #[test]
    fn modular_on_unit_and_inverse() {
        let g = qg();
        let one = DualElement::unit();
        assert!(g.dual_modular(&one).max_abs_diff(&one) < 1e-15);
        let u = g.u_matrix();
        for i in 0..2 {
            for j in 0..2 {
                let b = u.get(i, j);
                assert!(g.dual_modular_inv(&g.dual_modular(b)).max_abs_diff(b) < 1e-13);
            }
        }
    }
}

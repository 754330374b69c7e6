//! Clebsch–Gordan decomposition of `(pi_n (x) pi_m) Delta`.
//!
//! Each component `pi_k` is realized by an isometry `V_k : H_k -> H_n (x) H_m`
//! whose first column is the normalized highest weight vector of weight `k`
//! and whose remaining columns come from lowering with `Delta(f)`, divided by
//! the known coefficients `r^{(k)}_j`. Intertwining of `f` then holds by
//! construction; intertwining of `q` and `e`, orthogonality and completeness
//! are the checks.
//!
//! Phase convention: the first coordinate of modulus above tolerance in the
//! highest weight vector (left factor index major) is real positive.

use crate::error::{Error, Result};
use crate::linalg::{c, fix_phase, identity, kron, max_abs_diff, null_space, CMat, CVec};
use crate::params::{Params, RepIndex};
use crate::reps::{relation_residuals, Rep};
use crate::words::{formal_coproduct, AlgPoly};

/// The representation `(pi_n (x) pi_m) Delta` on `H_n (x) H_m`.
#[derive(Clone, Debug)]
pub struct TensorRep {
    left: RepIndex,
    right: RepIndex,
    q: CMat,
    e: CMat,
    f: CMat,
}

impl TensorRep {
    pub fn new(left: &Rep, right: &Rep) -> Self {
        let q = kron(left.q(), right.q());
        let e = kron(left.q(), right.e()) + kron(left.e(), right.q_inv());
        let f = kron(left.q(), right.f()) + kron(left.f(), right.q_inv());
        Self { left: left.index(), right: right.index(), q, e, f }
    }

    pub fn left(&self) -> RepIndex {
        self.left
    }

    pub fn right(&self) -> RepIndex {
        self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn q(&self) -> &CMat {
        &self.q
    }

    pub fn e(&self) -> &CMat {
        &self.e
    }

    pub fn f(&self) -> &CMat {
        &self.f
    }

    pub fn relation_residuals(&self, params: &Params) -> [f64; 3] {
        relation_residuals(params, &self.q, &self.e, &self.f, params.coupling())
    }

    /// Twice the weight of basis vector `a * dim_m + b`.
    fn twice_weight(&self, pos: usize) -> i32 {
        let dm = self.right.dim();
        self.left.weight_at(pos / dm).twice() + self.right.weight_at(pos % dm).twice()
    }

    /// Basis positions of total weight `w` (doubled), in lexicographic order.
    pub fn weight_space(&self, twice_w: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&p| self.twice_weight(p) == twice_w).collect()
    }
}

/// `(pi_n (x) pi_m)(Delta(x))`, evaluated from the formal coproduct.
pub fn tensor_eval(left: &Rep, right: &Rep, x: &AlgPoly) -> CMat {
    let d = left.dim() * right.dim();
    formal_coproduct(x)
        .terms()
        .fold(CMat::zeros(d, d), |acc, ((a, b), v)| acc + kron(&left.eval_word(a), &right.eval_word(b)) * *v)
}

/// `|n - m|, |n - m| + 1, ..., n + m`.
pub fn index_set(n: RepIndex, m: RepIndex) -> Vec<RepIndex> {
    let lo = n.twice().abs_diff(m.twice());
    let hi = n.twice() + m.twice();
    (lo..=hi).step_by(2).map(RepIndex::from_twice).collect()
}

#[derive(Clone, Debug)]
pub struct CgIsometry {
    n: RepIndex,
    m: RepIndex,
    k: RepIndex,
    v: CMat,
}

impl CgIsometry {
    pub fn n(&self) -> RepIndex {
        self.n
    }

    pub fn m(&self) -> RepIndex {
        self.m
    }

    pub fn k(&self) -> RepIndex {
        self.k
    }

    /// The `(2n+1)(2m+1) x (2k+1)` matrix.
    pub fn matrix(&self) -> &CMat {
        &self.v
    }

    /// `V^* V - I`.
    pub fn isometry_residual(&self) -> f64 {
        max_abs_diff(&(self.v.adjoint() * &self.v), &identity(self.k.dim()))
    }

    /// Residuals of `V pi_k(x) - pi(x) V` for `x = q, e, f`.
    pub fn intertwining_residuals(&self, tensor: &TensorRep, rep_k: &Rep) -> [f64; 3] {
        let v = &self.v;
        [
            max_abs_diff(&(v * rep_k.q()), &(tensor.q() * v)),
            max_abs_diff(&(v * rep_k.e()), &(tensor.e() * v)),
            max_abs_diff(&(v * rep_k.f()), &(tensor.f() * v)),
        ]
    }
}

/// Unit vector of weight `k` killed by `Delta(e)`.
pub fn highest_weight_vector(params: &Params, tensor: &TensorRep, k: RepIndex) -> Result<CVec> {
    let (n, m) = (tensor.left(), tensor.right());
    if !index_set(n, m).contains(&k) {
        return Err(Error::NotInIndexSet { n, m, k });
    }
    let source = tensor.weight_space(k.twice() as i32);
    let target = tensor.weight_space(k.twice() as i32 + 2);
    let restricted = CMat::from_fn(target.len(), source.len(), |r, col| tensor.e()[(target[r], source[col])]);
    let (kernel, _) = null_space(&restricted, params.tol_rel(), params.tol_abs());
    if kernel.len() != 1 {
        return Err(Error::DegenerateKernel { n, m, k, dim: kernel.len() });
    }
    let mut v = CVec::zeros(tensor.dim());
    for (coord, &pos) in kernel[0].iter().zip(&source) {
        v[pos] = *coord;
    }
    let norm = v.norm();
    v /= c(norm);
    fix_phase(&mut v, params.tol_abs());
    Ok(v)
}

/// The isometry `V_k` obtained by lowering the highest weight vector.
pub fn cg_isometry(params: &Params, tensor: &TensorRep, rep_k: &Rep) -> Result<CgIsometry> {
    let k = rep_k.index();
    let top = highest_weight_vector(params, tensor, k)?;
    let mut v = CMat::zeros(tensor.dim(), k.dim());
    v.set_column(0, &top);
    for (p, &r) in rep_k.r().iter().enumerate() {
        let next = tensor.f() * v.column(p) / c(r);
        let norm = next.norm();
        if (norm - 1.0).abs() > params.tol_abs() + params.tol_rel() {
            return Err(Error::ColumnNorm { k, column: p + 1, norm });
        }
        v.set_column(p + 1, &next);
    }
    Ok(CgIsometry { n: tensor.left(), m: tensor.right(), k, v })
}

/// All isometries `V_k`, `k` in the index set, for one pair `(n, m)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    n: RepIndex,
    m: RepIndex,
    pieces: Vec<CgIsometry>,
}

impl Decomposition {
    pub fn new(n: RepIndex, m: RepIndex, pieces: Vec<CgIsometry>) -> Self {
        Self { n, m, pieces }
    }

    pub fn n(&self) -> RepIndex {
        self.n
    }

    pub fn m(&self) -> RepIndex {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n.dim() * self.m.dim()
    }

    pub fn pieces(&self) -> &[CgIsometry] {
        &self.pieces
    }

    pub fn piece(&self, k: RepIndex) -> Option<&CgIsometry> {
        self.pieces.iter().find(|p| p.k == k)
    }

    /// Largest `|V_k^* V_l|` entry over `k != l`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.pieces.iter().enumerate() {
            for b in &self.pieces[i + 1..] {
                let cross = a.v.adjoint() * &b.v;
                worst = worst.max(crate::linalg::max_abs(&cross));
            }
        }
        worst
    }

    /// `sum_k V_k V_k^* - I`.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.dim();
        let sum = self.pieces.iter().fold(CMat::zeros(d, d), |acc, p| acc + &p.v * p.v.adjoint());
        max_abs_diff(&sum, &identity(d))
    }

    /// `sum_k V_k blocks[k] V_k^*` where `blocks` yields the `A_k` matrix (if any).
    pub fn assemble<'a>(&self, mut block: impl FnMut(RepIndex) -> Option<&'a CMat>) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for p in &self.pieces {
            if let Some(a) = block(p.k) {
                out += &p.v * a * p.v.adjoint();
            }
        }
        out
    }

    /// `V_k^* X V_k`: compression of an operator on `H_n (x) H_m` to the `k` block.
    pub fn compress(&self, k: RepIndex, x: &CMat) -> Option<CMat> {
        self.piece(k).map(|p| p.v.adjoint() * x * &p.v)
    }
}

/// Decompose `(pi_n (x) pi_m) Delta` given the component representations.
pub fn decompose_with(params: &Params, left: &Rep, right: &Rep, rep_for: impl Fn(RepIndex) -> Result<Rep>) -> Result<Decomposition> {
    let tensor = TensorRep::new(left, right);
    let pieces = index_set(left.index(), right.index())
        .into_iter()
        .map(|k| cg_isometry(params, &tensor, &rep_for(k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition::new(left.index(), right.index(), pieces))
}

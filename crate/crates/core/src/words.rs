//! Free (relation-free) polynomials in the generators `q, q^-1, e, f` and the
//! formal Hopf `*`-structure on them.
//!
//! No normal form is computed: relations between the generators only hold
//! after evaluation in a representation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::linalg::{c, ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Q,
    QInv,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Q, Generator::QInv, Generator::E, Generator::F];
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Q => "q",
            Generator::QInv => "q'",
            Generator::E => "e",
            Generator::F => "f",
        })
    }
}

/// A monomial; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    Generator::ALL.iter().map(move |&g| {
                        let mut letters = w.0.clone();
                        letters.push(g);
                        Word(letters)
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, Complex64>, key: K, coeff: Complex64) {
    let entry = terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
    *entry += coeff;
}

fn prune<K: Ord>(terms: &mut BTreeMap<K, Complex64>) {
    terms.retain(|_, v| *v != Complex64::new(0.0, 0.0));
}

/// A finite linear combination of words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgPoly {
    terms: BTreeMap<Word, Complex64>,
}

impl AlgPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, ONE)
    }

    pub fn term(w: Word, coeff: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != Complex64::new(0.0, 0.0) {
            terms.insert(w, coeff);
        }
        Self { terms }
    }

    pub fn gen(g: Generator) -> Self {
        Self::from_word(Word(vec![g]))
    }

    pub fn q() -> Self {
        Self::gen(Generator::Q)
    }

    pub fn q_inv() -> Self {
        Self::gen(Generator::QInv)
    }

    pub fn e() -> Self {
        Self::gen(Generator::E)
    }

    pub fn f() -> Self {
        Self::gen(Generator::F)
    }

    /// Parse a product of generators such as `"qef"`; `'` after `q` marks the
    /// inverse and `"1"` is the unit.
    pub fn parse_word(s: &str) -> Option<Self> {
        if s == "1" {
            return Some(Self::one());
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            let g = match ch {
                'q' if chars.peek() == Some(&'\'') => {
                    chars.next();
                    Generator::QInv
                }
                'q' => Generator::Q,
                'e' => Generator::E,
                'f' => Generator::F,
                _ => return None,
            };
            letters.push(g);
        }
        Some(Self::from_word(Word(letters)))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut terms: BTreeMap<Word, Complex64> =
            self.terms.iter().map(|(w, v)| (w.clone(), v * z)).collect();
        prune(&mut terms);
        Self { terms }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Complex64 {
        self.terms.get(w).copied().unwrap_or_default()
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn distance(&self, other: &AlgPoly) -> f64 {
        (self - other).terms.values().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

impl<'a> Add<&'a AlgPoly> for &'a AlgPoly {
    type Output = AlgPoly;
    fn add(self, rhs: &AlgPoly) -> AlgPoly {
        let mut terms = self.terms.clone();
        for (w, v) in &rhs.terms {
            insert_term(&mut terms, w.clone(), *v);
        }
        prune(&mut terms);
        AlgPoly { terms }
    }
}

impl<'a> Sub<&'a AlgPoly> for &'a AlgPoly {
    type Output = AlgPoly;
    fn sub(self, rhs: &AlgPoly) -> AlgPoly {
        self + &(-rhs)
    }
}

impl Neg for &AlgPoly {
    type Output = AlgPoly;
    fn neg(self) -> AlgPoly {
        self.scale(c(-1.0))
    }
}

impl<'a> Mul<&'a AlgPoly> for &'a AlgPoly {
    type Output = AlgPoly;
    fn mul(self, rhs: &AlgPoly) -> AlgPoly {
        let mut terms = BTreeMap::new();
        for (w1, v1) in &self.terms {
            for (w2, v2) in &rhs.terms {
                insert_term(&mut terms, w1.concat(w2), v1 * v2);
            }
        }
        prune(&mut terms);
        AlgPoly { terms }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $tr::$method(&self, &rhs)
            }
        }
    };
}

forward_owned_binop!(AlgPoly, Add, add);
forward_owned_binop!(AlgPoly, Sub, sub);
forward_owned_binop!(AlgPoly, Mul, mul);

impl fmt::Display for AlgPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, v)| format!("({v})*{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Element of the algebraic tensor product of two copies of the free algebra.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Complex64>,
}

impl TensorPoly {
    pub fn one() -> Self {
        Self::simple(Word::unit(), Word::unit(), ONE)
    }

    pub fn simple(left: Word, right: Word, coeff: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != Complex64::new(0.0, 0.0) {
            terms.insert((left, right), coeff);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Word, right: &Word) -> Complex64 {
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or_default()
    }

    pub fn add_assign(&mut self, other: &TensorPoly) {
        for (k, v) in &other.terms {
            insert_term(&mut self.terms, k.clone(), *v);
        }
        prune(&mut self.terms);
    }
}

impl<'a> Mul<&'a TensorPoly> for &'a TensorPoly {
    type Output = TensorPoly;
    fn mul(self, rhs: &TensorPoly) -> TensorPoly {
        let mut terms = BTreeMap::new();
        for ((a, b), v1) in &self.terms {
            for ((x, y), v2) in &rhs.terms {
                insert_term(&mut terms, (a.concat(x), b.concat(y)), v1 * v2);
            }
        }
        prune(&mut terms);
        TensorPoly { terms }
    }
}

/// Element of the threefold tensor product, used for coassociativity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriplePoly {
    terms: BTreeMap<(Word, Word, Word), Complex64>,
}

impl TriplePoly {
    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word, Word), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn coproduct_letter(g: Generator) -> TensorPoly {
    use Generator::*;
    let w = |g: Generator| Word(vec![g]);
    match g {
        Q => TensorPoly::simple(w(Q), w(Q), ONE),
        QInv => TensorPoly::simple(w(QInv), w(QInv), ONE),
        E | F => {
            let mut t = TensorPoly::simple(w(Q), w(g), ONE);
            t.add_assign(&TensorPoly::simple(w(g), w(QInv), ONE));
            t
        }
    }
}

fn coproduct_word(w: &Word) -> TensorPoly {
    w.0.iter().fold(TensorPoly::one(), |acc, &g| &acc * &coproduct_letter(g))
}

/// `Delta(q) = q (x) q`, `Delta(e) = q (x) e + e (x) q^-1`,
/// `Delta(f) = q (x) f + f (x) q^-1`, extended multiplicatively and linearly.
pub fn formal_coproduct(x: &AlgPoly) -> TensorPoly {
    let mut out = TensorPoly::default();
    for (w, v) in x.terms() {
        let mut part = coproduct_word(w);
        for coeff in part.terms.values_mut() {
            *coeff *= v;
        }
        out.add_assign(&part);
    }
    out
}

/// `(Delta (x) id) Delta(x)`.
pub fn coproduct_then_left(x: &AlgPoly) -> TriplePoly {
    let mut terms = BTreeMap::new();
    for ((a, b), v) in formal_coproduct(x).terms() {
        for ((a1, a2), v1) in coproduct_word(a).terms() {
            insert_term(&mut terms, (a1.clone(), a2.clone(), b.clone()), v * v1);
        }
    }
    prune(&mut terms);
    TriplePoly { terms }
}

/// `(id (x) Delta) Delta(x)`.
pub fn coproduct_then_right(x: &AlgPoly) -> TriplePoly {
    let mut terms = BTreeMap::new();
    for ((a, b), v) in formal_coproduct(x).terms() {
        for ((b1, b2), v1) in coproduct_word(b).terms() {
            insert_term(&mut terms, (a.clone(), b1.clone(), b2.clone()), v * v1);
        }
    }
    prune(&mut terms);
    TriplePoly { terms }
}

/// `epsilon(q) = epsilon(q^-1) = 1`, `epsilon(e) = epsilon(f) = 0`.
pub fn formal_counit(x: &AlgPoly) -> Complex64 {
    x.terms()
        .filter(|(w, _)| w.0.iter().all(|g| matches!(g, Generator::Q | Generator::QInv)))
        .map(|(_, v)| *v)
        .sum()
}

/// Anti-multiplicative `S` with `S(q) = q^-1`, `S(e) = -e/lambda`,
/// `S(f) = -lambda f`.
pub fn formal_antipode(x: &AlgPoly, lambda: f64) -> AlgPoly {
    let mut out = AlgPoly::zero();
    for (w, v) in x.terms() {
        let mut coeff = *v;
        let letters = w
            .0
            .iter()
            .rev()
            .map(|g| match g {
                Generator::Q => Generator::QInv,
                Generator::QInv => Generator::Q,
                Generator::E => {
                    coeff *= -1.0 / lambda;
                    Generator::E
                }
                Generator::F => {
                    coeff *= -lambda;
                    Generator::F
                }
            })
            .collect();
        out = &out + &AlgPoly::term(Word(letters), coeff);
    }
    out
}

/// Conjugate-linear, anti-multiplicative involution with `q* = q`, `e* = f`.
pub fn formal_star(x: &AlgPoly) -> AlgPoly {
    let mut out = AlgPoly::zero();
    for (w, v) in x.terms() {
        let letters = w
            .0
            .iter()
            .rev()
            .map(|g| match g {
                Generator::E => Generator::F,
                Generator::F => Generator::E,
                other => *other,
            })
            .collect();
        out = &out + &AlgPoly::term(Word(letters), v.conj());
    }
    out
}

/// The Casimir element `(l + 1/l)(q^2 + q^-2) + (l - 1/l)^2 (ef + fe)`.
pub fn casimir(lambda: f64) -> AlgPoly {
    let (q, qi, e, f) = (AlgPoly::q(), AlgPoly::q_inv(), AlgPoly::e(), AlgPoly::f());
    let quad = &(&q * &q) + &(&qi * &qi);
    let mixed = &(&e * &f) + &(&f * &e);
    &quad.scale(c(lambda + 1.0 / lambda)) + &mixed.scale(c((lambda - 1.0 / lambda).powi(2)))
}

/// `lambda q^2 + lambda^-1 q^-2 + (lambda - 1/lambda)^2 fe`, equal to `C/2`
/// modulo the relations.
pub fn half_casimir_fe(lambda: f64) -> AlgPoly {
    let (q, qi, e, f) = (AlgPoly::q(), AlgPoly::q_inv(), AlgPoly::e(), AlgPoly::f());
    let a = (&q * &q).scale(c(lambda));
    let b = (&qi * &qi).scale(c(1.0 / lambda));
    let d = (&f * &e).scale(c((lambda - 1.0 / lambda).powi(2)));
    &(&a + &b) + &d
}

/// `lambda^-1 q^2 + lambda q^-2 + (lambda - 1/lambda)^2 ef`.
pub fn half_casimir_ef(lambda: f64) -> AlgPoly {
    let (q, qi, e, f) = (AlgPoly::q(), AlgPoly::q_inv(), AlgPoly::e(), AlgPoly::f());
    let a = (&q * &q).scale(c(1.0 / lambda));
    let b = (&qi * &qi).scale(c(lambda));
    let d = (&e * &f).scale(c((lambda - 1.0 / lambda).powi(2)));
    &(&a + &b) + &d
}

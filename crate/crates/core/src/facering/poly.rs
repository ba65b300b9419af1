//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charmatrix::Ring;

/// Coefficient field of a presentation: `Q` for integral computations
/// (values are integral whenever they come from the face ring) or `GF(2)`.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(v: &BigInt) -> Self;
    /// Integral value, if the coefficient is one.
    fn to_int(&self) -> Option<BigInt>;
    /// Sign and magnitude for printing.
    fn sign_and_magnitude(&self) -> (bool, String);

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v))
    }
}

impl Coefficient for BigRational {
    const RING: Ring = Ring::Int;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn to_int(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
    fn sign_and_magnitude(&self) -> (bool, String) {
        let mag = self.abs();
        let text = if mag.is_integer() { mag.to_integer().to_string() } else { mag.to_string() };
        (self.is_negative(), text)
    }
}

/// The field with two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl Coefficient for Gf2 {
    const RING: Ring = Ring::Mod2;

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn from_int(v: &BigInt) -> Self {
        Gf2(v.is_odd())
    }
    fn to_int(&self) -> Option<BigInt> {
        Some(BigInt::from(self.0 as u8))
    }
    fn sign_and_magnitude(&self) -> (bool, String) {
        (false, if self.0 { "1" } else { "0" }.to_string())
    }
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of total degree `d` in `nvars` variables.
    pub fn all_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d as u32, &mut vec![0; nvars], &mut out);
        out
    }
}

/// Lexicographic order in which `priority[0]` is the most significant
/// variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexOrder {
    priority: Vec<usize>,
}

impl LexOrder {
    pub fn new(priority: Vec<usize>) -> Self {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(sorted.iter().enumerate().all(|(i, &v)| i == v), "priority must be a permutation");
        Self { priority }
    }

    /// Variable 0 most significant.
    pub fn natural(nvars: usize) -> Self {
        Self::new((0..nvars).collect())
    }

    /// Last variable most significant.
    pub fn reversed(nvars: usize) -> Self {
        Self::new((0..nvars).rev().collect())
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.priority {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i, 1), C::one())
    }

    /// `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[C]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i, 1), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate_above(&mut self, d: usize) {
        self.terms.retain(|m, _| m.degree() <= d);
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.mul(c));
        }
        p
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (n, a) in &self.terms {
            p.add_term(n.mul(m), a.mul(c));
        }
        p
    }

    /// Product with terms of degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            let dm = m.degree();
            for (n, b) in &other.terms {
                if dm + n.degree() <= max_degree {
                    p.add_term(m.mul(n), a.mul(b));
                }
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, order: &LexOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &LexOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, order: &LexOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero coefficient in a field");
                self.scale(&inv)
            }
        }
    }

    /// Maps every coefficient through `f`.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, names }
    }

    /// Terms in canonical print order: total degree descending, then
    /// exponent vectors descending.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        ts
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.neg());
        }
        p
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut p = Poly::zero(self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                p.add_term(m.mul(n), a.mul(b));
            }
        }
        p
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&C::one().neg())
    }
}

pub struct PolyDisplay<'a, C> {
    poly: &'a Poly<C>,
    names: &'a [String],
}

impl<C: Coefficient> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (negative, mag) = c.sign_and_magnitude();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.degree() == 0 {
                factors.push(mag);
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Default variable names: `x, y, z` for up to three variables, otherwise
/// `x1, x2, …`.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Poly<Q> {
        Poly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), q(*c))))
    }

    #[test]
    fn canonical_printing() {
        let names = default_names(2);
        let c6 = poly(2, &[(&[0, 6], -10), (&[1, 5], 12), (&[2, 4], -26), (&[3, 3], 16)]);
        assert_eq!(c6.display(&names).to_string(), "16*x^3*y^3 - 26*x^2*y^4 + 12*x*y^5 - 10*y^6");
        assert_eq!(Poly::<Q>::zero(2).display(&names).to_string(), "0");
        assert_eq!(poly(2, &[(&[0, 0], -1), (&[1, 0], 1)]).display(&names).to_string(), "x - 1");
        let g: Poly<Gf2> = Poly::from_terms(2, vec![(vec![1, 1], Gf2(true)), (vec![0, 0], Gf2(true))]);
        assert_eq!(g.display(&names).to_string(), "x*y + 1");
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut p = poly(1, &[(&[1], 2)]);
        p.add_term(Monomial(vec![1]), q(-2));
        assert!(p.is_zero());
        let g = &Poly::<Gf2>::var(1, 0) + &Poly::<Gf2>::var(1, 0);
        assert!(g.is_zero());
    }

    #[test]
    fn lex_order_respects_priority() {
        let a = Monomial(vec![1, 3]);
        let b = Monomial(vec![0, 4]);
        assert_eq!(LexOrder::natural(2).cmp(&a, &b), Ordering::Greater);
        assert_eq!(LexOrder::reversed(2).cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(2, 3).len(), 4);
        assert_eq!(Monomial::all_of_degree(3, 4).len(), 15);
        assert_eq!(Monomial::all_of_degree(1, 5), vec![Monomial(vec![5])]);
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Q>> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|ts| {
            Poly::from_terms(3, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], q(k))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn truncated_product_matches_full(a in arb_poly(), b in arb_poly(), d in 0usize..7) {
            let mut full = &a * &b;
            full.truncate_above(d);
            prop_assert_eq!(a.mul_truncated(&b, d), full);
        }
    }
}

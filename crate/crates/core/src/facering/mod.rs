//! Face-ring presentations of the cohomology of quasitoric manifolds and
//! small covers over products of simplices.
//!
//! The linear relations coming from the rows of `Λ` are solved for the facet
//! variables meeting at the last vertex, leaving one variable per simplex
//! factor (the class of that factor's last facet). The Stanley–Reisner ideal
//! of a product of simplices has one generator per factor, the product of all
//! its facet variables, which after substitution becomes the relation `r_i`.

pub mod groebner;
pub mod poly;

use num_bigint::BigInt;

use crate::charmatrix::{CharMatrix, Ring};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{FacetId, SimplexProduct, Vertex};
use groebner::GroebnerBasis;
use poly::{default_names, Coefficient, LexOrder, Monomial, Poly};

/// Global orientation bit: the vertex monomial at the first vertex pairs to
/// `ORIENTATION_SIGN · det(Λ_v)`.
pub const ORIENTATION_SIGN: i32 = -1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation<C> {
    polytope: SimplexProduct,
    /// Class of every facet as a linear form in the retained variables.
    facet_forms: Vec<Poly<C>>,
    relations: Vec<Poly<C>>,
    basis: GroebnerBasis<C>,
    coprime: bool,
    top: Monomial,
}

/// Solves the linear relations of `Λ` and builds the relations `r_i`.
pub fn eliminate<C: Coefficient>(lambda: &CharMatrix) -> Result<QuotientPresentation<C>> {
    if lambda.ring() != C::RING {
        return Err(Error::RingMismatch { expected: C::RING, found: lambda.ring() });
    }
    let polytope = lambda.polytope().clone();
    let r = polytope.num_factors();
    let retained = polytope.last_facets();
    let eliminated = polytope.vertex_facets(&polytope.last_vertex());
    let to_field = |m: Vec<Vec<BigInt>>| -> Vec<Vec<C>> {
        m.iter().map(|row| row.iter().map(C::from_int).collect()).collect()
    };
    let a = to_field(lambda.columns(&eliminated));
    let b = to_field(lambda.columns(&retained));
    let a_inv = linalg::inverse(&a).ok_or_else(|| {
        Error::InvalidMatrix("columns at the last vertex are not a basis; cannot eliminate".into())
    })?;

    let mut facet_forms = vec![Poly::zero(r); polytope.num_facets()];
    for (t, &col) in retained.iter().enumerate() {
        facet_forms[col] = Poly::var(r, t);
    }
    // F_elim = -A^{-1} B x
    for (row, &col) in eliminated.iter().enumerate() {
        let coeffs: Vec<C> = (0..r)
            .map(|t| {
                let s = (0..a_inv.len()).fold(C::zero(), |acc, k| acc.add(&a_inv[row][k].mul(&b[k][t])));
                s.neg()
            })
            .collect();
        if C::RING == Ring::Int && coeffs.iter().any(|c| c.to_int().is_none()) {
            return Err(Error::InvalidMatrix("elimination produced non-integral classes".into()));
        }
        facet_forms[col] = Poly::linear(&coeffs);
    }

    let mut relations = Vec::with_capacity(r);
    for i in 0..r {
        let rel = polytope.factor_facets(i).fold(Poly::one(r), |acc, col| &acc * &facet_forms[col]);
        let k = polytope.factor_dims()[i] as u32;
        let lead = rel.coeff(&Monomial::var(r, i, k + 1));
        let unit = lead.to_int().is_some_and(|v| v == BigInt::from(1) || v == BigInt::from(-1));
        if !unit {
            return Err(Error::DegeneratePresentation(format!(
                "relation {} has coefficient {lead:?} on its pure power",
                i + 1
            )));
        }
        relations.push(rel);
    }

    let (order, coprime) = match coprime_order(&relations, polytope.factor_dims()) {
        Some(order) => (order, true),
        None => (LexOrder::reversed(r), false),
    };
    let basis = GroebnerBasis::compute(&relations, order);
    let n = polytope.dim();
    let top = if coprime {
        Monomial(polytope.factor_dims().iter().map(|&k| k as u32).collect())
    } else {
        let standard: Vec<Monomial> =
            Monomial::all_of_degree(r, n).into_iter().filter(|m| basis.is_standard(m)).collect();
        match standard.as_slice() {
            [m] => m.clone(),
            _ => {
                return Err(Error::Internal(format!(
                    "expected one standard monomial of degree {n}, found {}",
                    standard.len()
                )))
            }
        }
    };
    Ok(QuotientPresentation { polytope, facet_forms, relations, basis, coprime, top })
}

/// A lex order in which every `r_i` leads with `x_i^{k_i+1}`, if one exists.
/// Orders with later factors more significant are tried first.
fn coprime_order<C: Coefficient>(relations: &[Poly<C>], dims: &[usize]) -> Option<LexOrder> {
    let r = relations.len();
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        let order = LexOrder::new(perm.iter().rev().copied().collect());
        let ok = relations.iter().enumerate().all(|(i, rel)| {
            rel.leading_monomial(&order) == Some(&Monomial::var(r, i, dims[i] as u32 + 1))
        });
        if ok {
            return Some(order);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl<C: Coefficient> QuotientPresentation<C> {
    pub fn polytope(&self) -> &SimplexProduct {
        &self.polytope
    }

    pub fn num_vars(&self) -> usize {
        self.polytope.num_factors()
    }

    pub fn var_names(&self) -> Vec<String> {
        default_names(self.num_vars())
    }

    pub fn relations(&self) -> &[Poly<C>] {
        &self.relations
    }

    pub fn basis(&self) -> &GroebnerBasis<C> {
        &self.basis
    }

    pub fn order(&self) -> &LexOrder {
        self.basis.order()
    }

    /// Whether the relations themselves have pairwise coprime leading terms.
    pub fn has_coprime_relations(&self) -> bool {
        self.coprime
    }

    /// Class of the facet in column `col`.
    pub fn facet_class(&self, col: usize) -> &Poly<C> {
        &self.facet_forms[col]
    }

    pub fn facet_classes(&self) -> &[Poly<C>] {
        &self.facet_forms
    }

    /// Linear forms of the eliminated facets.
    pub fn substitutions(&self) -> Vec<(FacetId, Poly<C>)> {
        let retained = self.polytope.last_facets();
        (0..self.polytope.num_facets())
            .filter(|c| !retained.contains(c))
            .map(|c| (self.polytope.facet_at(c), self.facet_forms[c].clone()))
            .collect()
    }

    pub fn normal_form(&self, p: &Poly<C>) -> Poly<C> {
        self.basis.reduce(p)
    }

    pub fn top_standard_monomial(&self) -> &Monomial {
        &self.top
    }

    /// Coefficient of the top standard monomial in the normal form of a
    /// class of top degree.
    pub fn top_coefficient(&self, p: &Poly<C>) -> Result<C> {
        let n = self.polytope.dim();
        if !p.is_zero() && !p.is_homogeneous_of_degree(n) {
            return Err(Error::NotTopDegree(n));
        }
        Ok(self.normal_form(p).coeff(&self.top))
    }

    /// Product of the classes of the `n` facets through `v`.
    pub fn vertex_monomial(&self, v: &Vertex) -> Poly<C> {
        let r = self.num_vars();
        self.polytope.vertex_facets(v).iter().fold(Poly::one(r), |acc, &c| &acc * &self.facet_forms[c])
    }
}

/// Calibrated fundamental class: a presentation together with the factor
/// `ε` relating top coefficients to the pairing with `[M]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyModel<C> {
    presentation: QuotientPresentation<C>,
    epsilon: C,
}

/// The value the vertex monomial at `v` must pair to.
fn expected_vertex_value(lambda: &CharMatrix, v: &Vertex) -> BigInt {
    let det = lambda.vertex_determinant(v);
    match lambda.ring() {
        Ring::Int => det * ORIENTATION_SIGN * lambda.polytope().relative_orientation(v),
        Ring::Mod2 => det,
    }
}

/// The ratio `expected / top coefficient` at every vertex; `None` where the
/// vertex monomial reduces to zero.
pub fn vertex_epsilons<C: Coefficient>(q: &QuotientPresentation<C>, lambda: &CharMatrix) -> Vec<(Vertex, Option<C>)> {
    q.polytope()
        .vertices()
        .into_iter()
        .map(|v| {
            let c = q.normal_form(&q.vertex_monomial(&v)).coeff(q.top_standard_monomial());
            let eps = c.inv().map(|inv| C::from_int(&expected_vertex_value(lambda, &v)).mul(&inv));
            (v, eps)
        })
        .collect()
}

impl<C: Coefficient> CohomologyModel<C> {
    /// Eliminates, then calibrates `ε` at the first vertex and checks every
    /// other vertex against it.
    pub fn new(lambda: &CharMatrix) -> Result<Self> {
        let presentation = eliminate::<C>(lambda)?;
        Self::calibrate(presentation, lambda)
    }

    pub fn calibrate(presentation: QuotientPresentation<C>, lambda: &CharMatrix) -> Result<Self> {
        if presentation.polytope() != lambda.polytope() {
            return Err(Error::DimensionMismatch("presentation and matrix live on different polytopes".into()));
        }
        let vertices = presentation.polytope().vertices();
        let first = &vertices[0];
        let c0 = presentation.normal_form(&presentation.vertex_monomial(first)).coeff(presentation.top_standard_monomial());
        let expected0 = C::from_int(&expected_vertex_value(lambda, first));
        let epsilon = c0
            .inv()
            .map(|inv| expected0.mul(&inv))
            .ok_or_else(|| Error::InconsistentCalibration { vertex: first.excluded.clone() })?;
        for v in &vertices[1..] {
            let c = presentation.normal_form(&presentation.vertex_monomial(v)).coeff(presentation.top_standard_monomial());
            if epsilon.mul(&c) != C::from_int(&expected_vertex_value(lambda, v)) {
                return Err(Error::InconsistentCalibration { vertex: v.excluded.clone() });
            }
        }
        Ok(Self { presentation, epsilon })
    }

    pub fn presentation(&self) -> &QuotientPresentation<C> {
        &self.presentation
    }

    /// `ε`: `±1` when the relations have coprime leading terms, otherwise
    /// the ratio between the standard top monomial and the integral
    /// generator of the top cohomology (always `1` over `Z_2`).
    pub fn epsilon(&self) -> &C {
        &self.epsilon
    }

    /// `⟨p, [M]⟩` for a class of top degree; a bit over `Z_2`.
    pub fn pairing(&self, p: &Poly<C>) -> Result<BigInt> {
        let c = self.presentation.top_coefficient(p)?;
        self.epsilon
            .mul(&c)
            .to_int()
            .ok_or_else(|| Error::Internal("pairing produced a non-integral value".into()))
    }
}

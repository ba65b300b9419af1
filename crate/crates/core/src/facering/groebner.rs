//! Division by a list of polynomials and reduced Gröbner bases over a field.
//!
//! Face-ring presentations over products of simplices almost always have
//! relations whose leading monomials are pairwise coprime, in which case the
//! relations already form a Gröbner basis and Buchberger's loop only runs the
//! coprimality check. The general loop covers the remaining presentations.

use std::collections::VecDeque;

use super::poly::{Coefficient, LexOrder, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<C> {
    order: LexOrder,
    polys: Vec<Poly<C>>,
}

/// Remainder of `p` on division by `divisors` under `order`.
///
/// At each step the leading term of the running polynomial is cancelled with
/// the first divisor (in list order) whose leading monomial divides it.
pub fn normal_form<C: Coefficient>(p: &Poly<C>, divisors: &[Poly<C>], order: &LexOrder) -> Poly<C> {
    let leads: Vec<_> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("divisors are nonzero");
            (m.clone(), c.inv().expect("field coefficient"))
        })
        .collect();
    let mut rest = p.clone();
    let mut rem = Poly::zero(p.nvars());
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, lc_inv) = &leads[i];
                let factor = c.mul(lc_inv).neg();
                let shifted = divisors[i].mul_term(&lm.quotient_of(&m), &factor);
                rest = &rest + &shifted;
            }
            None => {
                rest.add_term(m.clone(), c.neg());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial<C: Coefficient>(f: &Poly<C>, g: &Poly<C>, order: &LexOrder) -> Poly<C> {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.inv().unwrap());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.inv().unwrap());
    &a - &b
}

impl<C: Coefficient> GroebnerBasis<C> {
    /// Reduced Gröbner basis of the ideal generated by `generators`.
    pub fn compute(generators: &[Poly<C>], order: LexOrder) -> Self {
        let mut basis: Vec<Poly<C>> =
            generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic(&order)).collect();
        let mut pairs: VecDeque<(usize, usize)> =
            (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop_front() {
            let (mi, mj) = (basis[i].leading_monomial(&order).unwrap(), basis[j].leading_monomial(&order).unwrap());
            if mi.is_coprime(mj) {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], &order);
            let r = normal_form(&s, &basis, &order);
            if !r.is_zero() {
                let k = basis.len();
                basis.push(r.monic(&order));
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }

        // minimal basis, then interreduce
        let mut keep: Vec<Poly<C>> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lm = g.leading_monomial(&order).unwrap();
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let hm = h.leading_monomial(&order).unwrap();
                j != i && hm.divides(lm) && (hm != lm || j < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let reduced: Vec<Poly<C>> = (0..keep.len())
            .map(|i| {
                let others: Vec<Poly<C>> =
                    keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
                let lead = Poly::monomial(keep[i].leading_monomial(&order).unwrap().clone(), C::one());
                let tail = &keep[i] - &lead;
                &lead + &normal_form(&tail, &others, &order)
            })
            .collect();
        let mut polys = reduced;
        polys.sort_by(|a, b| order.cmp(a.leading_monomial(&order).unwrap(), b.leading_monomial(&order).unwrap()));
        Self { order, polys }
    }

    pub fn order(&self) -> &LexOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Poly<C>] {
        &self.polys
    }

    pub fn reduce(&self, p: &Poly<C>) -> Poly<C> {
        normal_form(p, &self.polys, &self.order)
    }

    pub fn contains(&self, p: &Poly<C>) -> bool {
        self.reduce(p).is_zero()
    }

    /// A monomial is standard when no leading monomial of the basis divides it.
    pub fn is_standard(&self, m: &super::poly::Monomial) -> bool {
        self.polys.iter().all(|g| !g.leading_monomial(&self.order).unwrap().divides(m))
    }
}

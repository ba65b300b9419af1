//! Total Chern and Stiefel–Whitney classes and the tables of characteristic
//! numbers indexed by partitions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::charmatrix::{CharMatrix, Ring};
use crate::error::{Error, Result};
use crate::facering::poly::{Coefficient, Gf2, Poly};
use crate::facering::CohomologyModel;

/// Graded pieces `0..=n` of a reduced class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass<C> {
    components: Vec<Poly<C>>,
}

impl<C: Coefficient> GradedClass<C> {
    pub fn from_components(components: Vec<Poly<C>>) -> Self {
        assert!(!components.is_empty(), "a graded class has a degree-0 piece");
        Self { components }
    }

    pub fn component(&self, i: usize) -> &Poly<C> {
        &self.components[i]
    }

    pub fn components(&self) -> &[Poly<C>] {
        &self.components
    }

    pub fn top_degree(&self) -> usize {
        self.components.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Checks that `parts` is a partition of `n`.
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1])
            && parts.iter().sum::<usize>() == n;
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidPartition { parts, expected: n })
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses `4,3` (brackets optional); the weight is not checked here.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let n = parts.iter().sum();
        Partition::new(parts, n)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `[n]`, `[n-1,1]`, …, `[1,…,1]`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Reduced graded pieces of `Π_F (1 + class(F))`.
pub fn total_class<C: Coefficient>(model: &CohomologyModel<C>) -> GradedClass<C> {
    let q = model.presentation();
    let (n, r) = (q.polytope().dim(), q.num_vars());
    let one = Poly::one(r);
    let mut total = one.clone();
    for f in q.facet_classes() {
        total = total.mul_truncated(&(&one + f), n);
    }
    let components = (0..=n).map(|d| q.normal_form(&total.homogeneous_part(d))).collect();
    GradedClass { components }
}

/// Characteristic classes of one manifold, ready for evaluating numbers.
#[derive(Debug, Clone)]
pub struct Characteristic<C> {
    lambda: CharMatrix,
    model: CohomologyModel<C>,
    classes: GradedClass<C>,
}

pub type ChernData = Characteristic<BigRational>;
pub type SwData = Characteristic<Gf2>;

impl<C: Coefficient> Characteristic<C> {
    pub fn new(lambda: &CharMatrix) -> Result<Self> {
        let model = CohomologyModel::new(lambda)?;
        let classes = total_class(&model);
        Ok(Self { lambda: lambda.clone(), model, classes })
    }

    pub fn model(&self) -> &CohomologyModel<C> {
        &self.model
    }

    pub fn classes(&self) -> &GradedClass<C> {
        &self.classes
    }

    pub fn dim(&self) -> usize {
        self.classes.top_degree()
    }

    /// The product of the classes indexed by the parts of `pi`, reduced.
    pub fn monomial_class(&self, pi: &Partition) -> Result<Poly<C>> {
        let n = self.dim();
        if pi.weight() != n {
            return Err(Error::InvalidPartition { parts: pi.parts().to_vec(), expected: n });
        }
        let q = self.model.presentation();
        let mut p = Poly::one(q.num_vars());
        for &i in pi.parts() {
            p = q.normal_form(&(&p * self.classes.component(i)));
            if p.is_zero() {
                break;
            }
        }
        Ok(p)
    }

    pub fn number(&self, pi: &Partition) -> Result<BigInt> {
        self.model.pairing(&self.monomial_class(pi)?)
    }

    /// Numbers for every partition of `n`, in canonical order.
    pub fn table(&self) -> Result<InvariantTable> {
        let entries = partitions(self.dim())
            .into_par_iter()
            .map(|pi| self.number(&pi).map(|value| TableEntry { partition: pi, value }))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantTable { ring: C::RING, lambda: self.lambda.clone(), entries })
    }
}

fn require_ring(lambda: &CharMatrix, ring: Ring) -> Result<()> {
    if lambda.ring() != ring {
        return Err(Error::RingMismatch { expected: ring, found: lambda.ring() });
    }
    Ok(())
}

pub fn total_chern_class(lambda: &CharMatrix) -> Result<GradedClass<BigRational>> {
    require_ring(lambda, Ring::Int)?;
    Ok(ChernData::new(lambda)?.classes)
}

pub fn total_sw_class(lambda: &CharMatrix) -> Result<GradedClass<Gf2>> {
    require_ring(lambda, Ring::Mod2)?;
    Ok(SwData::new(lambda)?.classes)
}

pub fn chern_number(lambda: &CharMatrix, pi: &Partition) -> Result<BigInt> {
    require_ring(lambda, Ring::Int)?;
    ChernData::new(lambda)?.number(pi)
}

pub fn sw_number(lambda: &CharMatrix, pi: &Partition) -> Result<bool> {
    require_ring(lambda, Ring::Mod2)?;
    Ok(!SwData::new(lambda)?.number(pi)?.is_zero())
}

/// Chern numbers over `INT`, Stiefel–Whitney numbers over `MOD2`.
pub fn all_numbers(lambda: &CharMatrix) -> Result<InvariantTable> {
    match lambda.ring() {
        Ring::Int => ChernData::new(lambda)?.table(),
        Ring::Mod2 => SwData::new(lambda)?.table(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub partition: Partition,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTable {
    pub ring: Ring,
    #[serde(rename = "matrix")]
    pub lambda: CharMatrix,
    pub entries: Vec<TableEntry>,
}

impl InvariantTable {
    pub fn dim(&self) -> usize {
        self.lambda.polytope().dim()
    }

    pub fn get(&self, pi: &Partition) -> Option<&BigInt> {
        self.entries.iter().find(|e| &e.partition == pi).map(|e| &e.value)
    }

    /// Covers every partition of `n` exactly once, in canonical order.
    pub fn is_complete(&self) -> bool {
        let want = partitions(self.dim());
        want.len() == self.entries.len() && want.iter().zip(&self.entries).all(|(p, e)| *p == e.partition)
    }

    /// The first partition with a nonzero (over `MOD2`: odd) value.
    pub fn first_nonzero(&self) -> Option<&Partition> {
        self.entries.iter().find(|e| !e.value.is_zero()).map(|e| &e.partition)
    }
}

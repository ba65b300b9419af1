//! Stong manifolds `RP(n_1, …, n_k)`: projectivized sums of line bundles over
//! products of real projective spaces, and their small-cover matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::charmatrix::{block_matrix, CharMatrix, FiberLink, Ring};
use crate::error::{Error, Result};
use crate::facering::groebner::GroebnerBasis;
use crate::facering::poly::{Coefficient, Gf2, LexOrder, Monomial, Poly};
use crate::invariants::{all_numbers, partitions, GradedClass, Partition};
use crate::polytope::SimplexProduct;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StongParams(Vec<usize>);

impl StongParams {
    pub fn new(params: Vec<usize>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidStongParams("at least one parameter is required".into()));
        }
        if params.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidStongParams(format!("{params:?} is not weakly decreasing")));
        }
        Ok(Self(params))
    }

    /// `(n_1, …, n_i, 0, …, 0)` with `zeros` trailing zeros.
    pub fn with_zeros(head: &[usize], zeros: usize) -> Result<Self> {
        let mut v = head.to_vec();
        v.extend(std::iter::repeat(0).take(zeros));
        Self::new(v)
    }

    pub fn params(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `ℓ = Σ n_i`.
    pub fn ell(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dimension(&self) -> usize {
        self.ell() + self.k() - 1
    }

    /// Indecomposability in unoriented bordism: `Σ_i C(ℓ+k-2, n_i)` is odd.
    pub fn is_indecomposable(&self) -> Result<bool> {
        if self.k() < 2 {
            return Err(Error::InvalidStongParams("the indecomposability criterion needs k > 1".into()));
        }
        let a = (self.ell() + self.k() - 2) as u64;
        let odd = self.0.iter().filter(|&&n| binomial_parity(a, n as u64)).count();
        Ok(odd % 2 == 1)
    }

    pub fn is_orientable(&self) -> bool {
        self.k() % 2 == 0 && self.0.iter().all(|n| n % 2 == 0)
    }
}

impl fmt::Display for StongParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "RP({})", parts.join(","))
    }
}

impl FromStr for StongParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let params = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad Stong parameter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params)
    }
}

/// `C(a, b) mod 2` by Lucas' theorem.
pub fn binomial_parity(a: u64, b: u64) -> bool {
    b <= a && a & b == b
}

/// `Z_2[a_1, …, a_k, e]` modulo `a_i^{n_i+1}` and `Π(a_i + e)`; the variable
/// `e` has index `k`.
#[derive(Debug, Clone)]
pub struct StongPresentation {
    params: StongParams,
    relations: Vec<Poly<Gf2>>,
    basis: GroebnerBasis<Gf2>,
    top: Monomial,
}

impl StongPresentation {
    pub fn new(params: &StongParams) -> Self {
        let k = params.k();
        let nvars = k + 1;
        let e = Poly::<Gf2>::var(nvars, k);
        let mut relations: Vec<Poly<Gf2>> =
            params.params().iter().enumerate().map(|(i, &n)| Poly::var(nvars, i).pow(n as u32 + 1)).collect();
        relations.push((0..k).fold(Poly::one(nvars), |acc, i| &acc * &(&Poly::var(nvars, i) + &e)));
        // e first, then a_1, a_2, …
        let order = LexOrder::new(std::iter::once(k).chain(0..k).collect());
        let basis = GroebnerBasis::compute(&relations, order);
        let mut top: Vec<u32> = params.params().iter().map(|&n| n as u32).collect();
        top.push(k as u32 - 1);
        Self { params: params.clone(), relations, basis, top: Monomial(top) }
    }

    pub fn num_vars(&self) -> usize {
        self.params.k() + 1
    }

    pub fn relations(&self) -> &[Poly<Gf2>] {
        &self.relations
    }

    pub fn normal_form(&self, p: &Poly<Gf2>) -> Poly<Gf2> {
        self.basis.reduce(p)
    }

    pub fn top_monomial(&self) -> &Monomial {
        &self.top
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.params.k()).map(|i| format!("a{i}")).collect();
        names.push("e".into());
        names
    }

    /// `Π_i (1 + a_i)^{n_i+1} (1 + a_i + e)`, reduced degree by degree.
    pub fn sw_class(&self) -> GradedClass<Gf2> {
        let (k, nvars, dim) = (self.params.k(), self.num_vars(), self.params.dimension());
        let one = Poly::<Gf2>::one(nvars);
        let e = Poly::var(nvars, k);
        let mut w = one.clone();
        for (i, &n) in self.params.params().iter().enumerate() {
            let a = Poly::var(nvars, i);
            let base = &one + &a;
            for _ in 0..=n {
                w = self.normal_form(&w.mul_truncated(&base, dim));
            }
            w = self.normal_form(&w.mul_truncated(&(&base + &e), dim));
        }
        GradedClass::from_components((0..=dim).map(|d| self.normal_form(&w.homogeneous_part(d))).collect())
    }

    /// Stiefel–Whitney numbers for every partition of the dimension.
    pub fn sw_numbers(&self) -> Vec<(Partition, bool)> {
        let w = self.sw_class();
        partitions(self.params.dimension())
            .into_iter()
            .map(|pi| {
                let mut p = Poly::one(self.num_vars());
                for &i in pi.parts() {
                    p = self.normal_form(&(&p * w.component(i)));
                }
                let bit = !p.coeff(&self.top).is_zero();
                (pi, bit)
            })
            .collect()
    }
}

pub fn sw_class_formula(params: &StongParams) -> GradedClass<Gf2> {
    StongPresentation::new(params).sw_class()
}

/// The small-cover matrix over `Δ^{n_1} × … × Δ^{n_i} × Δ^{k-1}` (positive
/// parts only). For `k = 1` this is `RP^n` over `Δ^n` with `[I_n | 1]`.
pub fn char_matrix(params: &StongParams) -> Result<CharMatrix> {
    let positive: Vec<usize> = params.params().iter().copied().filter(|&n| n > 0).collect();
    let k = params.k();
    if k == 1 {
        let n = params.params()[0];
        let polytope = SimplexProduct::new(&[n])?;
        let rows: Vec<Vec<i64>> =
            (0..n).map(|i| (0..=n).map(|j| i64::from(j == i || j == n)).collect()).collect();
        return CharMatrix::from_i64(polytope, Ring::Mod2, &rows);
    }
    let links: Vec<FiberLink> = if positive.len() == k {
        (0..k).map(|j| if j + 1 < k { FiberLink::Row(j) } else { FiberLink::AllOnes }).collect()
    } else {
        (0..positive.len()).map(FiberLink::Row).collect()
    };
    block_matrix(&positive, k - 1, &links, false)
}

/// Whether the SW numbers from the bundle formula agree with those computed
/// from the small-cover matrix. Fails above `cap`.
pub fn sw_numbers_cross_check(params: &StongParams, cap: usize) -> Result<bool> {
    let dim = params.dimension();
    if dim > cap {
        return Err(Error::CapExceeded { dimension: dim, cap });
    }
    let formula = StongPresentation::new(params).sw_numbers();
    let table = all_numbers(&char_matrix(params)?)?;
    Ok(formula.len() == table.entries.len()
        && formula.iter().zip(&table.entries).all(|((pi, bit), e)| *pi == e.partition && *bit == !e.value.is_zero()))
}

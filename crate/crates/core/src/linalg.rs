//! Exact dense linear algebra on small matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::facering::poly::Coefficient;

/// Fraction-free Gaussian elimination.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn to_gf2(a: &[Vec<BigInt>]) -> Vec<Vec<bool>> {
    a.iter().map(|r| r.iter().map(Integer::is_odd).collect()).collect()
}

pub fn select_columns(a: &[Vec<bool>], cols: &[usize]) -> Vec<Vec<bool>> {
    a.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect()
}

pub fn det_gf2(a: &[Vec<bool>]) -> bool {
    let mut a = a.to_vec();
    let n = a.len();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k]) else {
            return false;
        };
        a.swap(k, p);
        for i in k + 1..n {
            if a[i][k] {
                for j in k..n {
                    a[i][j] ^= a[k][j];
                }
            }
        }
    }
    true
}

pub fn inverse_gf2(a: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = a.len();
    let mut aug: Vec<Vec<bool>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| i == j));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| aug[i][k])?;
        aug.swap(k, p);
        for i in 0..n {
            if i != k && aug[i][k] {
                for j in 0..2 * n {
                    let v = aug[k][j];
                    aug[i][j] ^= v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mul_gf2(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).fold(false, |acc, t| acc ^ (r[t] & b[t][j]))).collect())
        .collect()
}

/// Inverse over a field by Gauss–Jordan elimination.
pub fn inverse<C: Coefficient>(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(k, p);
        let inv = aug[k][k].inv()?;
        for j in 0..2 * n {
            aug[k][j] = aug[k][j].mul(&inv);
        }
        for i in 0..n {
            if i != k && !aug[i][k].is_zero() {
                let f = aug[i][k].clone();
                for j in 0..2 * n {
                    let v = aug[i][j].sub(&f.mul(&aug[k][j]));
                    aug[i][j] = v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn big(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    // Leibniz expansion, independent of elimination.
    fn det_leibniz(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det_leibniz(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(n in 1usize..5, seed in prop::collection::vec(-3i64..=3, 16)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            prop_assert_eq!(det_bareiss(big(&a)), BigInt::from(det_leibniz(&a)));
            let parity = det_leibniz(&a).rem_euclid(2) == 1;
            prop_assert_eq!(det_gf2(&to_gf2(&big(&a))), parity);
        }

        #[test]
        fn gf2_inverse_is_inverse(n in 1usize..5, bits in prop::collection::vec(any::<bool>(), 16)) {
            let a: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| bits[i * 4 + j]).collect()).collect();
            match inverse_gf2(&a) {
                Some(inv) => {
                    let id: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
                    prop_assert_eq!(mul_gf2(&a, &inv), id);
                }
                None => prop_assert!(!det_gf2(&a)),
            }
        }
    }

    #[test]
    fn rational_inverse() {
        let a: Vec<Vec<BigRational>> =
            [[2, 1], [1, 1]].iter().map(|r| r.iter().map(|&v| BigRational::from_i64(v)).collect()).collect();
        let inv = inverse(&a).unwrap();
        let want: Vec<Vec<BigRational>> =
            [[1, -1], [-1, 2]].iter().map(|r| r.iter().map(|&v| BigRational::from_i64(v)).collect()).collect();
        assert_eq!(inv, want);
        let sing: Vec<Vec<BigRational>> =
            [[1, 2], [2, 4]].iter().map(|r| r.iter().map(|&v| BigRational::from_i64(v)).collect()).collect();
        assert!(inverse(&sing).is_none());
    }
}

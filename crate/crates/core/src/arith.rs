//! Exact integers, rationals and the combinatorial primitives every formula uses.
//!
//! [`ArbInt`] and [`Rat`] are thin aliases over `num-bigint` / `num-rational`;
//! `BigRational` keeps values reduced with a positive denominator, which is the
//! canonical form the rest of the crate relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

/// Unbounded signed integer.
pub type ArbInt = BigInt;

/// Exact rational in canonical form.
pub type Rat = BigRational;

/// Builds the canonical rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: impl Into<ArbInt>, den: impl Into<ArbInt>) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn rat_int(value: impl Into<ArbInt>) -> Rat {
    Rat::from_integer(value.into())
}

/// Generalized binomial coefficient `m (m-1) ... (m-k+1) / k!`.
///
/// Total in `m`: for `0 <= m < k` the product contains a zero factor, and a
/// negative `m` yields `(-1)^k binom(k-m-1, k)`.
pub fn binom(m: i64, k: i64) -> Result<ArbInt> {
    if k < 0 {
        return Err(domain(format!(
            "binom({m}, {k}): lower argument is negative"
        )));
    }
    let mut acc = ArbInt::one();
    for i in 0..k {
        // binom(m, i+1) = binom(m, i) * (m - i) / (i + 1), exact at every step.
        acc *= m - i;
        acc /= i + 1;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `n!` for `n >= 0`.
pub fn factorial(n: u64) -> ArbInt {
    (1..=n).fold(ArbInt::one(), |acc, i| acc * i)
}

/// Multinomial coefficient `n! / (k_1! ... k_r!)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<ArbInt> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(domain(format!(
            "multinomial: parts sum to {total}, expected {n}"
        )));
    }
    // Product of successive binomials; avoids the large n! intermediate.
    let mut remaining = n as i64;
    let mut acc = ArbInt::one();
    for &k in parts {
        acc *= binom(remaining, k as i64)?;
        remaining -= k as i64;
    }
    Ok(acc)
}

/// `base^e` with `0^0 = 1`.
pub fn int_pow(base: &ArbInt, e: u64) -> ArbInt {
    let e = u32::try_from(e).expect("exponent exceeds u32 range");
    num_traits::pow::Pow::pow(base, e)
}

/// `(-1)^k` as a small integer.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Converts a rational that is expected to be integral.
///
/// `what` names the computation so a violation can be traced.
pub fn expect_integral(value: Rat, what: impl FnOnce() -> String) -> Result<ArbInt> {
    if value.denom().is_one() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{} = {}", what(), value)))
    }
}

/// Exact division of integers, failing if a remainder is left.
pub fn exact_div(num: &ArbInt, den: &ArbInt, what: impl FnOnce() -> String) -> Result<ArbInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegral(format!("{} = {}/{}", what(), num, den)))
    }
}

/// Pascal rows `binom(n, k)` for `0 <= k <= n <= n_max`, built once and then
/// shared read-only.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<ArbInt>>,
}

impl BinomialTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<ArbInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![ArbInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(ArbInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(ArbInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Row `n`, i.e. `binom(n, 0..=n)`.
    pub fn row(&self, n: usize) -> &[ArbInt] {
        &self.rows[n]
    }

    /// `binom(n, k)`, zero outside `0 <= k <= n`.
    pub fn get(&self, n: usize, k: usize) -> ArbInt {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }
}

/// `binom(n, k)` for `k = 0..=n` computed by the multiplicative recurrence.
pub fn binomial_row(n: u64) -> Vec<ArbInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = ArbInt::one();
    row.push(acc.clone());
    for k in 0..n {
        acc = acc * (n - k) / (k + 1);
        row.push(acc.clone());
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> ArbInt {
        ArbInt::from(x)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(3, 5).unwrap(), big(0));
        assert_eq!(binom(0, 0).unwrap(), big(1));
        assert_eq!(binom(5, 2).unwrap(), big(10));
        assert_eq!(binom(-1, 3).unwrap(), big(-1));
        assert_eq!(binom(-3, 2).unwrap(), big(6));
        assert!(matches!(binom(4, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), big(6));
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), big(2));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), big(12));
        assert_eq!(multinomial(0, &[]).unwrap(), big(1));
        assert!(matches!(multinomial(4, &[2, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn int_pow_examples() {
        assert_eq!(int_pow(&big(0), 0), big(1));
        assert_eq!(int_pow(&big(6), 3), big(216));
        assert_eq!(int_pow(&big(-1), 5), big(-1));
        assert_eq!(int_pow(&big(0), 3), big(0));
    }

    #[test]
    fn table_matches_direct() {
        let table = BinomialTable::new(40);
        for n in 0..=40u64 {
            assert_eq!(table.row(n as usize), binomial_row(n).as_slice());
            for k in 0..=n {
                assert_eq!(
                    table.get(n as usize, k as usize),
                    binom(n as i64, k as i64).unwrap()
                );
            }
        }
        assert_eq!(table.get(3, 7), big(0));
    }

    #[test]
    fn integrality_check() {
        assert_eq!(expect_integral(rat(10, 5), || "x".into()).unwrap(), big(2));
        assert!(matches!(
            expect_integral(rat(1, 2), || "x".into()),
            Err(Error::NonIntegral(_))
        ));
        assert!(exact_div(&big(7), &big(2), || "y".into()).is_err());
    }

    proptest! {
        #[test]
        fn pascal_recurrence(m in -60i64..60, k in 1i64..30) {
            let lhs = binom(m, k).unwrap();
            let rhs = binom(m - 1, k - 1).unwrap() + binom(m - 1, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symmetry(n in 0i64..80, k in 0i64..80) {
            prop_assume!(k <= n);
            prop_assert_eq!(binom(n, k).unwrap(), binom(n, n - k).unwrap());
        }

        #[test]
        fn multinomial_is_factorial_quotient(parts in proptest::collection::vec(0u64..8, 0..5)) {
            let n: u64 = parts.iter().sum();
            let denom = parts.iter().fold(ArbInt::one(), |acc, &k| acc * factorial(k));
            prop_assert_eq!(multinomial(n, &parts).unwrap(), factorial(n) / denom);
        }

        #[test]
        fn rat_is_canonical(p in -1000i64..1000, q in 1i64..1000, s in prop::bool::ANY) {
            let q = if s { -q } else { q };
            let x = rat(p, q);
            prop_assert!(x.denom() > &ArbInt::zero());
            prop_assert!(x.numer().gcd(x.denom()).is_one() || x.numer().is_zero());
            prop_assert_eq!(rat(x.numer().clone(), x.denom().clone()), x);
        }
    }
}

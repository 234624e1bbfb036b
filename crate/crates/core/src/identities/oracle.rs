//! Brute-force left-hand sides.
//!
//! Nothing here uses a closed form: plain convolutions come from powers of the
//! ordinary generating function (or, for cross-checking, from enumerating
//! compositions), and multinomial-weighted sums come from iterated binomial
//! convolutions.

use num_traits::Zero;

use crate::arith::{binom, ArbInt, BinomialTable};
use crate::error::{domain, Result};
use crate::sequences::{SeqCache, SeqParams};
use crate::series::ogf;

/// Table of the plain `r`-fold convolution `S_r(n)` for `0 <= n <= n_max`.
///
/// `S_r(n)` sums `u_{j_1} ... u_{j_r}` over compositions of `n` into `r`
/// positive parts; it is coefficient `n` of `ogf^r`, where `u_0 = 0` takes
/// care of the positivity constraint.
#[derive(Debug, Clone)]
pub struct ConvPowers {
    params: SeqParams,
    r: u32,
    values: Vec<ArbInt>,
}

impl ConvPowers {
    pub fn new(params: SeqParams, r: i64, n_max: usize) -> Result<Self> {
        if r < 1 {
            return Err(domain(format!("convolution power needs r >= 1, got {r}")));
        }
        let r = r as u32;
        let values = ogf(params, n_max)
            .pow(r)
            .to_integers()
            .expect("powers of an integral series are integral");
        Ok(ConvPowers { params, r, values })
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `S_r(n)`, zero for negative `n` (empty set of compositions).
    ///
    /// Panics if `n` exceeds the table.
    pub fn get(&self, n: i64) -> ArbInt {
        if n < 0 {
            return ArbInt::zero();
        }
        self.values[n as usize].clone()
    }

    /// `sum_{l=0}^{2r-3} (-1)^l binom(2r-3, l) S_r(n - 2l)`.
    pub fn alternating(&self, n: i64) -> ArbInt {
        let r = self.r as i64;
        let width = 2 * r - 3;
        let mut acc = ArbInt::zero();
        for l in 0..=width {
            let term = binom(width, l).expect("nonnegative l") * self.get(n - 2 * l);
            if l % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// Plain `r`-fold convolution `S_r(n)`.
pub fn conv_power(params: SeqParams, r: i64, n: i64) -> Result<ArbInt> {
    if n < 0 {
        return Ok(ArbInt::zero());
    }
    Ok(ConvPowers::new(params, r, n as usize)?.get(n))
}

/// `S_r(n)` by enumerating every composition of `n` into `r` positive parts.
///
/// Exponential in `r`; only meant for cross-checking small cases.
pub fn conv_power_by_compositions(cache: &SeqCache, r: usize, n: i64) -> ArbInt {
    fn go(cache: &SeqCache, parts_left: usize, remaining: i64) -> ArbInt {
        if parts_left == 0 {
            return if remaining == 0 {
                ArbInt::from(1)
            } else {
                ArbInt::zero()
            };
        }
        let mut acc = ArbInt::zero();
        // leave at least one unit for each later part
        for first in 1..=remaining - (parts_left as i64 - 1) {
            let tail = go(cache, parts_left - 1, remaining - first);
            if !tail.is_zero() {
                acc += cache.u(first).unwrap() * tail;
            }
        }
        acc
    }
    if n < 0 {
        return ArbInt::zero();
    }
    go(cache, r, n)
}

/// Alternating weighted convolution of balancing numbers.
pub fn alt_weighted_conv(r: i64, n: i64) -> Result<ArbInt> {
    if r < 2 {
        return Err(domain(format!(
            "alternating convolution needs r >= 2, got {r}"
        )));
    }
    if n < 0 {
        return Ok(ArbInt::zero());
    }
    Ok(ConvPowers::new(SeqParams::BALANCING, r, n as usize)?.alternating(n))
}

/// `sum_{j=1}^{n} (B_j B_{n-j+1} - B_{j-1} B_{n-j})`, the telescoped pair sum.
pub fn telescoping_pair_sum(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    let mut acc = ArbInt::zero();
    for j in 1..=n {
        acc += cache.u(j)? * cache.u(n - j + 1)?;
        acc -= cache.u(j - 1)? * cache.u(n - j)?;
    }
    Ok(acc)
}

/// Binomial (exponential) convolution `(f * g)_n = sum_k binom(n, k) f_k g_{n-k}`.
pub fn binomial_convolve(f: &[ArbInt], g: &[ArbInt], binoms: &BinomialTable) -> Vec<ArbInt> {
    let len = f.len().min(g.len());
    assert!(
        len == 0 || binoms.n_max() + 1 >= len,
        "binomial table too small"
    );
    (0..len)
        .map(|n| {
            let row = binoms.row(n);
            (0..=n).fold(ArbInt::zero(), |acc, k| {
                if f[k].is_zero() || g[n - k].is_zero() {
                    acc
                } else {
                    acc + &row[k] * &f[k] * &g[n - k]
                }
            })
        })
        .collect()
}

/// Iterated binomial convolution powers of one sequence.
///
/// `powers[r - 1][n]` is `sum binom(n; k_1..k_r) s_{k_1} ... s_{k_r}` over all
/// `k_i >= 0` summing to `n`, for `1 <= r <= r_max`.
#[derive(Debug, Clone)]
pub struct BinomialPowers {
    powers: Vec<Vec<ArbInt>>,
}

impl BinomialPowers {
    pub fn new(seq: &[ArbInt], r_max: usize) -> Self {
        assert!(!seq.is_empty());
        let binoms = BinomialTable::new(seq.len() - 1);
        let mut powers = Vec::with_capacity(r_max);
        if r_max >= 1 {
            powers.push(seq.to_vec());
        }
        for r in 1..r_max {
            let next = binomial_convolve(&powers[r - 1], seq, &binoms);
            powers.push(next);
        }
        BinomialPowers { powers }
    }

    pub fn r_max(&self) -> usize {
        self.powers.len()
    }

    pub fn n_max(&self) -> usize {
        self.powers.first().map_or(0, |p| p.len() - 1)
    }

    pub fn get(&self, r: usize, n: usize) -> &ArbInt {
        &self.powers[r - 1][n]
    }
}

fn binomial_power_checked(seq: Vec<ArbInt>, r: i64, n: i64) -> Result<ArbInt> {
    if r < 1 {
        return Err(domain(format!(
            "binomial convolution needs r >= 1, got {r}"
        )));
    }
    let powers = BinomialPowers::new(&seq, r as usize);
    Ok(powers.get(r as usize, n as usize).clone())
}

/// `sum binom(n; k_1..k_r) u_{k_1} ... u_{k_r}` over `k_i >= 1`.
pub fn binom_conv_u(params: SeqParams, r: i64, n: i64) -> Result<ArbInt> {
    if n < 0 {
        return Err(domain(format!("negative index {n}")));
    }
    let cache = SeqCache::with_capacity(params, n as usize);
    binomial_power_checked(cache.u_prefix(n as usize), r, n)
}

/// `sum binom(n; k_1..k_r) v_{k_1} ... v_{k_r}` over `k_i >= 0`.
pub fn binom_conv_v(params: SeqParams, r: i64, n: i64) -> Result<ArbInt> {
    if n < 0 {
        return Err(domain(format!("negative index {n}")));
    }
    let cache = SeqCache::with_capacity(params, n as usize);
    binomial_power_checked(cache.v_prefix(n as usize), r, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multinomial;

    fn big(x: i64) -> ArbInt {
        ArbInt::from(x)
    }

    #[test]
    fn conv_power_examples() {
        let bal = SeqParams::BALANCING;
        assert_eq!(conv_power(bal, 2, 4).unwrap(), big(106));
        assert_eq!(conv_power(bal, 3, 3).unwrap(), big(1));
        assert_eq!(conv_power(bal, 3, 4).unwrap(), big(18));
        assert_eq!(conv_power(bal, 4, 6).unwrap(), big(356));
        assert_eq!(conv_power(bal, 5, 4).unwrap(), big(0));
        assert_eq!(conv_power(bal, 2, -3).unwrap(), big(0));
        assert!(conv_power(bal, 0, 3).is_err());
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alt_weighted_conv(2, 4).unwrap(), big(105));
        assert_eq!(alt_weighted_conv(3, 4).unwrap(), big(18));
        assert_eq!(alt_weighted_conv(3, 3).unwrap(), big(1));
        // frozen from an independent brute-force enumeration
        assert_eq!(alt_weighted_conv(4, 7).unwrap(), big(4080));
        assert_eq!(alt_weighted_conv(4, 8).unwrap(), big(41440));
        assert_eq!(alt_weighted_conv(5, 10).unwrap(), big(868896));
        assert_eq!(alt_weighted_conv(6, 13).unwrap(), big(184453632));
        assert!(alt_weighted_conv(1, 4).is_err());
    }

    #[test]
    fn composition_enumeration_matches_series_power() {
        for (a, b) in [(6, -1), (1, 1), (3, 2)] {
            let p = SeqParams::new(a, b).unwrap();
            let cache = SeqCache::new(p);
            for r in 1..=4 {
                let table = ConvPowers::new(p, r, 12).unwrap();
                for n in 0..=12 {
                    assert_eq!(
                        table.get(n),
                        conv_power_by_compositions(&cache, r as usize, n)
                    );
                }
            }
        }
    }

    #[test]
    fn small_plain_values() {
        // S_2, S_3, S_4 for n = 0..=8, frozen from direct enumeration
        let expected: [&[i64]; 3] = [
            &[0, 0, 1, 12, 106, 828, 6051, 42408, 288788],
            &[0, 0, 0, 1, 18, 213, 2088, 18366, 150516],
            &[0, 0, 0, 0, 1, 24, 356, 4200, 43210],
        ];
        for (r, row) in (2..=4).zip(expected) {
            let t = ConvPowers::new(SeqParams::BALANCING, r, 8).unwrap();
            for (n, &x) in row.iter().enumerate() {
                assert_eq!(t.get(n as i64), big(x));
            }
        }
    }

    #[test]
    fn binomial_conv_examples() {
        assert_eq!(binom_conv_u(SeqParams::BALANCING, 2, 2).unwrap(), big(2));
        assert_eq!(binom_conv_u(SeqParams::FIBONACCI, 3, 3).unwrap(), big(6));
        assert_eq!(binom_conv_v(SeqParams::FIBONACCI, 2, 1).unwrap(), big(4));
        assert_eq!(binom_conv_v(SeqParams::FIBONACCI, 2, 3).unwrap(), big(34));
        assert_eq!(binom_conv_u(SeqParams::BALANCING, 1, 5).unwrap(), big(1189));
        assert!(binom_conv_u(SeqParams::BALANCING, 0, 5).is_err());
    }

    #[test]
    fn binomial_conv_matches_multinomial_enumeration() {
        // enumerate (k_1, k_2, k_3) with k_i >= 1 directly
        let cache = SeqCache::new(SeqParams::BALANCING);
        let powers = BinomialPowers::new(&cache.u_prefix(9), 3);
        for n in 0..=9u64 {
            let mut acc = ArbInt::zero();
            for k1 in 1..=n {
                for k2 in 1..=n {
                    if k1 + k2 >= n {
                        continue;
                    }
                    let k3 = n - k1 - k2;
                    acc += multinomial(n, &[k1, k2, k3]).unwrap()
                        * cache.u(k1 as i64).unwrap()
                        * cache.u(k2 as i64).unwrap()
                        * cache.u(k3 as i64).unwrap();
                }
            }
            assert_eq!(powers.get(3, n as usize), &acc);
        }
    }

    #[test]
    fn telescoping_examples() {
        let cache = SeqCache::new(SeqParams::BALANCING);
        assert_eq!(telescoping_pair_sum(&cache, 1).unwrap(), big(1));
        assert_eq!(telescoping_pair_sum(&cache, 3).unwrap(), big(105));
    }
}

//! Truncated formal power series over exact rationals.
//!
//! A [`Series`] stores coefficients `c_0..=c_N` and is trusted exactly up to
//! `x^N` (its *order*). Every operation propagates the order it can vouch for:
//! products and sums take the minimum, a `k`-th derivative loses `k`, and
//! multiplying by `x^s` gains `s`. Comparisons only look at the common trusted
//! prefix.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{binom, factorial, rat, rat_int, ArbInt, Rat};
use crate::error::{domain, Result};
use crate::sequences::{SeqCache, SeqParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// Builds a series trusted to `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least `c_0`.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = ArbInt>>(coeffs: I) -> Self {
        Series::new(coeffs.into_iter().map(Rat::from_integer).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![Rat::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// Largest exponent whose coefficient is trusted.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&Rat> {
        self.coeffs.get(n)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<ArbInt>> {
        self.coeffs
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series::new(self.coeffs[..=order].to_vec())
    }

    /// Multiplication by `x^s`.
    pub fn shift(&self, s: usize) -> Series {
        let mut coeffs = vec![Rat::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(coeffs)
    }

    pub fn scale(&self, factor: &Rat) -> Series {
        Series::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        if let (Some(p), Some(q)) = (self.to_integers(), other.to_integers()) {
            return Series::from_integers(cauchy_int(&p, &q, order));
        }
        let mut out = vec![Rat::zero(); order + 1];
        for (i, x) in self.coeffs[..=order].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Series::new(out)
    }

    /// `self^r`, with `self^0 = 1` at the same order.
    pub fn pow(&self, r: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// `k`-th termwise derivative; the order drops by `k`.
    pub fn derivative(&self, k: usize) -> Result<Series> {
        if k > self.order() {
            return Err(domain(format!(
                "derivative of order {k} exceeds truncation order {}",
                self.order()
            )));
        }
        let coeffs = (k..=self.order())
            .map(|n| {
                // n (n-1) ... (n-k+1) c_n
                let falling = ((n - k + 1)..=n).fold(ArbInt::one(), |acc, i| acc * i);
                &self.coeffs[n] * Rat::from_integer(falling)
            })
            .collect();
        Ok(Series::new(coeffs))
    }

    /// True iff both series agree on their common trusted prefix.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let order = self.order().min(other.order());
        self.coeffs[..=order] == other.coeffs[..=order]
    }
}

fn cauchy_int(p: &[ArbInt], q: &[ArbInt], order: usize) -> Vec<ArbInt> {
    let mut out = vec![ArbInt::zero(); order + 1];
    for (i, x) in p[..=order].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q[..=order - i].iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zip_with(lhs: &Series, rhs: &Series, f: impl Fn(&Rat, &Rat) -> Rat) -> Series {
    let order = lhs.order().min(rhs.order());
    Series::new(
        (0..=order)
            .map(|n| f(&lhs.coeffs[n], &rhs.coeffs[n]))
            .collect(),
    )
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

/// `x / (1 - a x - b x^2)` truncated at `order`; coefficient `n` is `u_n`.
pub fn ogf(params: SeqParams, order: usize) -> Series {
    let cache = SeqCache::with_capacity(params, order);
    Series::from_integers(cache.u_prefix(order))
}

/// `(1 - x^2)^m` to the given order.
///
/// For `m >= 0` this is the finite binomial expansion; for `m < 0` it is the
/// series `sum_i binom(i + p - 1, p - 1) x^{2i}` with `p = -m`.
pub fn geom_even_pow(m: i64, order: usize) -> Series {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for (i, slot) in coeffs.iter_mut().step_by(2).enumerate() {
        let i = i as i64;
        let c = if m >= 0 {
            if i > m {
                break;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            binom(m, i).expect("nonnegative lower index") * sign
        } else {
            let p = -m;
            binom(i + p - 1, p - 1).expect("nonnegative lower index")
        };
        *slot = Rat::from_integer(c);
    }
    Series::new(coeffs)
}

/// Checks `(1 - x^2) f(x)^2 = x^2 f'(x)` for the balancing generating function.
pub fn verify_f2_relation(order: usize) -> Result<bool> {
    if order < 2 {
        return Err(domain(format!(
            "f^2 relation needs order >= 2, got {order}"
        )));
    }
    let f = ogf(SeqParams::BALANCING, order);
    let lhs = geom_even_pow(1, order).mul(&f.pow(2));
    let rhs = f.derivative(1)?.shift(2);
    Ok(lhs.agrees_with(&rhs) && lhs.order() == order)
}

/// Right-hand side of the expansion of `f(x)^r` in terms of derivatives of `f`:
///
/// ```text
/// x^{2r-2} f^{(r-1)} / ((r-1)! (1-x^2)^{r-1})
///   + sum_{k=1}^{r-2} [sum_{j=0}^{k-1} binom(k,j) binom(r-2,k-j-1) x^{2r-k+2j-2}]
///                      / (k (r-k-2)! (1-x^2)^{r+k-1}) f^{(r-k-1)}
/// ```
///
/// Each term is built over integers and scaled by its own rational prefactor.
pub fn lemma_expansion_rhs(f: &Series, r: usize) -> Result<Series> {
    if r < 2 {
        return Err(domain(format!("expansion needs r >= 2, got {r}")));
    }
    let order = f.order();
    let leading = f
        .derivative(r - 1)?
        .shift(2 * r - 2)
        .mul(&geom_even_pow(-(r as i64 - 1), order))
        .scale(&rat(1, factorial(r as u64 - 1)));
    let mut acc = leading;
    for k in 1..=r.saturating_sub(2) {
        let deriv = f.derivative(r - k - 1)?;
        let mut numerator: Option<Series> = None;
        for j in 0..k {
            let c = binom(k as i64, j as i64)? * binom(r as i64 - 2, (k - j - 1) as i64)?;
            if c.is_zero() {
                continue;
            }
            let term = deriv.shift(2 * r - k + 2 * j - 2).scale(&rat_int(c));
            numerator = Some(match numerator {
                Some(s) => &s + &term,
                None => term,
            });
        }
        let Some(numerator) = numerator else { continue };
        let term = numerator
            .mul(&geom_even_pow(-((r + k - 1) as i64), order))
            .scale(&rat(1, ArbInt::from(k) * factorial((r - k - 2) as u64)));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Checks the expansion of `f(x)^r` coefficientwise up to `order`.
pub fn verify_lemma_expansion(r: usize, order: usize) -> Result<bool> {
    if r < 2 {
        return Err(domain(format!("expansion needs r >= 2, got {r}")));
    }
    if order < 2 * r {
        return Err(domain(format!("order {order} is below 2r = {}", 2 * r)));
    }
    let f = ogf(SeqParams::BALANCING, order);
    let lhs = f.pow(r as u32);
    let rhs = lemma_expansion_rhs(&f, r)?;
    Ok(lhs.agrees_with(&rhs) && lhs.order().min(rhs.order()) == order)
}

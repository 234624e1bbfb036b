//! Closed-form right-hand sides.
//!
//! Every evaluator accumulates in [`Rat`] and converts to an integer once at
//! the end; a fractional result is reported as [`Error::NonIntegral`]. Inputs
//! below a formula's validity domain are rejected rather than extrapolated.
//!
//! Balancing-only formulas take a cache built for `(6, -1)` and read `B_n` as
//! `u_n`, `C_n` as `v_n / 2`. Fibonacci/Lucas formulas take a `(1, 1)` cache.

use num_traits::Zero;

use crate::arith::{
    binom, binomial_row, expect_integral, int_pow, rat, rat_int, sign_pow, ArbInt, Rat,
};
use crate::error::{domain, usage, Result};
use crate::sequences::{SeqCache, SeqParams};

pub(crate) fn require_params(cache: &SeqCache, expected: SeqParams, what: &str) -> Result<()> {
    if cache.params() != expected {
        return Err(usage(format!(
            "{what} is stated for {expected}, got {}",
            cache.params()
        )));
    }
    Ok(())
}

pub(crate) fn require_at_least(what: &str, name: &str, value: i64, bound: i64) -> Result<()> {
    if value < bound {
        return Err(domain(format!(
            "{what}: needs {name} >= {bound}, got {value}"
        )));
    }
    Ok(())
}

fn integral(value: Rat, what: &str, r: i64, n: i64) -> Result<ArbInt> {
    expect_integral(value, || format!("{what} at r={r}, n={n}"))
}

/// `n B_n`, the closed side of the telescoping pair identity (`n >= 1`).
pub fn rhs_pair_telescope(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "pair telescope")?;
    require_at_least("pair telescope", "n", n, 1)?;
    Ok(n * cache.u(n)?)
}

/// `binom(n-1, 2) B_{n-2} - binom(n-4, 2) B_{n-4}` for `n >= 4`.
pub fn rhs_triple_alt(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "triple alternating")?;
    require_at_least("triple alternating", "n", n, 4)?;
    Ok(binom(n - 1, 2)? * cache.u(n - 2)? - binom(n - 4, 2)? * cache.u(n - 4)?)
}

/// Closed form of the alternating weighted `r`-fold convolution, `n >= 3r - 5`:
///
/// `sum_{k=1}^{r-1} (-1)^{k-1} (n-2k-r+3)/(r-1) binom(n-2k+1, r-k-1) binom(n-k-2r+3, k-1) B_{n-2k-r+3}`
pub fn rhs_general_alt(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "general alternating")?;
    require_at_least("general alternating", "r", r, 2)?;
    require_at_least("general alternating", "n", n, 3 * r - 5)?;
    let mut acc = Rat::zero();
    for k in 1..r {
        let weight = rat(n - 2 * k - r + 3, r - 1);
        if weight.is_zero() {
            // B index is 0 here as well; the binomials may sit at negative arguments
            continue;
        }
        let c = binom(n - 2 * k + 1, r - k - 1)? * binom(n - k - 2 * r + 3, k - 1)?;
        acc += weight * rat_int(c * cache.u(n - 2 * k - r + 3)? * sign_pow(k - 1));
    }
    integral(acc, "general alternating", r, n)
}

/// `sum_{m=0}^{floor((n-1)/2)} (n-2m-1) B_{n-2m-1}` for `n >= 2`.
pub fn rhs_pair_plain(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "pair plain")?;
    require_at_least("pair plain", "n", n, 2)?;
    let mut acc = ArbInt::zero();
    for m in 0..=(n - 1) / 2 {
        acc += (n - 2 * m - 1) * cache.u(n - 2 * m - 1)?;
    }
    Ok(acc)
}

/// Closed form of the plain `r`-fold convolution for `n >= r >= 2`:
///
/// `sum_{m=0}^{floor((n-r+1)/2)} binom(n-m-1, r-2) binom(m+r-2, r-2) (n-2m-r+1)/(r-1) B_{n-2m-r+1}`
pub fn rhs_general_plain(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "general plain")?;
    require_at_least("general plain", "r", r, 2)?;
    require_at_least("general plain", "n", n, r)?;
    let mut acc = Rat::zero();
    for m in 0..=(n - r + 1) / 2 {
        let idx = n - 2 * m - r + 1;
        let c = binom(n - m - 1, r - 2)? * binom(m + r - 2, r - 2)? * cache.u(idx)?;
        acc += rat(idx, r - 1) * rat_int(c);
    }
    integral(acc, "general plain", r, n)
}

/// `sum_{k=0}^{n} binom(n, k) shift^{n-k} scale^k w_k` with `0^0 = 1`.
fn shifted_binomial_sum(row: &[ArbInt], shift: i64, scale: i64, w: &[ArbInt]) -> ArbInt {
    let n = row.len() - 1;
    let (shift, scale) = (ArbInt::from(shift), ArbInt::from(scale));
    let mut acc = ArbInt::zero();
    for k in 0..=n {
        if w[k].is_zero() {
            continue;
        }
        let p = int_pow(&shift, (n - k) as u64) * int_pow(&scale, k as u64);
        acc += &row[k] * p * &w[k];
    }
    acc
}

fn check_uv_args(r: i64, n: i64) -> Result<()> {
    require_at_least("multinomial convolution", "r", r, 1)?;
    require_at_least("multinomial convolution", "n", n, 0)
}

/// Closed form of `sum binom(n; k_1..k_r) u_{k_1} ... u_{k_r}` (parts `>= 1`),
/// dispatched on the parity of `r`.
///
/// odd `r`:  `D^{-(r-1)/2} sum_j (-1)^j binom(r,j) sum_k binom(n,k) (aj)^{n-k} (r-2j)^k u_k`
/// even `r`: `D^{-r/2} (sum_{j<r/2} (-1)^j binom(r,j) sum_k binom(n,k) (aj)^{n-k} (r-2j)^k v_k
///            + (-1)^{r/2} binom(r, r/2) (ar/2)^n)`
pub fn rhs_multinom_u(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    check_uv_args(r, n)?;
    let p = cache.params();
    let d = ArbInt::from(p.discriminant());
    let row = binomial_row(n as u64);
    let mut acc = Rat::zero();
    let denom = if r % 2 == 1 {
        let w = cache.u_prefix(n as usize);
        for j in 0..=(r - 1) / 2 {
            let inner = shifted_binomial_sum(&row, p.a() * j, r - 2 * j, &w);
            acc += rat_int(binom(r, j)? * inner * sign_pow(j));
        }
        int_pow(&d, ((r - 1) / 2) as u64)
    } else {
        let w = cache.v_prefix(n as usize);
        for j in 0..r / 2 {
            let inner = shifted_binomial_sum(&row, p.a() * j, r - 2 * j, &w);
            acc += rat_int(binom(r, j)? * inner * sign_pow(j));
        }
        let middle = binom(r, r / 2)? * int_pow(&ArbInt::from(p.a() * r / 2), n as u64);
        acc += rat_int(middle * sign_pow(r / 2));
        int_pow(&d, (r / 2) as u64)
    };
    integral(acc / rat_int(denom), "multinomial u", r, n)
}

/// Closed form of `sum binom(n; k_1..k_r) v_{k_1} ... v_{k_r}` (parts `>= 0`).
///
/// odd `r`:  `sum_j binom(r,j) sum_k binom(n,k) (aj)^{n-k} (r-2j)^k v_k`
/// even `r`: `sum_{j<r/2} (same) + binom(r, r/2) (ar/2)^n`
pub fn rhs_multinom_v(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    check_uv_args(r, n)?;
    let p = cache.params();
    let row = binomial_row(n as u64);
    let w = cache.v_prefix(n as usize);
    let mut acc = Rat::zero();
    let j_end = if r % 2 == 1 { (r - 1) / 2 } else { r / 2 - 1 };
    for j in 0..=j_end {
        let inner = shifted_binomial_sum(&row, p.a() * j, r - 2 * j, &w);
        acc += rat_int(binom(r, j)? * inner);
    }
    if r % 2 == 0 {
        acc += rat_int(binom(r, r / 2)? * int_pow(&ArbInt::from(p.a() * r / 2), n as u64));
    }
    integral(acc, "multinomial v", r, n)
}

fn two_pow_c(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    Ok(int_pow(&ArbInt::from(2), n as u64) * cache.lucas_balancing(n)?)
}

/// `(2^n C_n - 6^n) / 16`.
pub fn rhs_binom_pair_b(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "binomial pair B")?;
    require_at_least("binomial pair B", "n", n, 0)?;
    let value = rat_int(two_pow_c(cache, n)? - int_pow(&ArbInt::from(6), n as u64)) / rat_int(16);
    integral(value, "binomial pair B", 2, n)
}

/// `(2^n C_n + 6^n) / 2`.
pub fn rhs_binom_pair_c(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "binomial pair C")?;
    require_at_least("binomial pair C", "n", n, 0)?;
    let value = rat_int(two_pow_c(cache, n)? + int_pow(&ArbInt::from(6), n as u64)) / rat_int(2);
    integral(value, "binomial pair C", 2, n)
}

fn c_prefix(cache: &SeqCache, n: usize) -> Vec<ArbInt> {
    cache.v_prefix(n).into_iter().map(|v| v / 2).collect()
}

/// `(3^n B_n - 3 sum_k binom(n,k) 6^{n-k} B_k) / 32`.
pub fn rhs_multinom_triple_b(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "triple product B")?;
    require_at_least("triple product B", "n", n, 0)?;
    let row = binomial_row(n as u64);
    let lead = int_pow(&ArbInt::from(3), n as u64) * cache.u(n)?;
    let tail = shifted_binomial_sum(&row, 6, 1, &cache.u_prefix(n as usize));
    integral(
        rat_int(lead - 3 * tail) / rat_int(32),
        "triple product B",
        3,
        n,
    )
}

/// `(3^n C_n + 3 sum_k binom(n,k) 6^{n-k} C_k) / 4`.
pub fn rhs_multinom_triple_c(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "triple product C")?;
    require_at_least("triple product C", "n", n, 0)?;
    let row = binomial_row(n as u64);
    let lead = int_pow(&ArbInt::from(3), n as u64) * cache.lucas_balancing(n)?;
    let tail = shifted_binomial_sum(&row, 6, 1, &c_prefix(cache, n as usize));
    integral(
        rat_int(lead + 3 * tail) / rat_int(4),
        "triple product C",
        3,
        n,
    )
}

/// The balancing instance of the `u` multinomial identity written with `B` and
/// `C` and the prefactor `1/(4 sqrt 2)` rationalized through `32`.
pub fn rhs_balancing_multinom_b(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "balancing multinomial B")?;
    check_uv_args(r, n)?;
    let row = binomial_row(n as u64);
    let mut acc = Rat::zero();
    let denom = if r % 2 == 1 {
        let b = cache.u_prefix(n as usize);
        for j in 0..=(r - 1) / 2 {
            let inner = shifted_binomial_sum(&row, 6 * j, r - 2 * j, &b);
            acc += rat_int(binom(r, j)? * inner * sign_pow(j));
        }
        int_pow(&ArbInt::from(32), ((r - 1) / 2) as u64)
    } else {
        let c = c_prefix(cache, n as usize);
        for j in 0..r / 2 {
            let inner = shifted_binomial_sum(&row, 6 * j, r - 2 * j, &c);
            acc += rat_int(2 * binom(r, j)? * inner * sign_pow(j));
        }
        let middle = binom(r, r / 2)? * int_pow(&ArbInt::from(3 * r), n as u64);
        acc += rat_int(middle * sign_pow(r / 2));
        int_pow(&ArbInt::from(32), (r / 2) as u64)
    };
    integral(acc / rat_int(denom), "balancing multinomial B", r, n)
}

/// Lucas-balancing counterpart of [`rhs_balancing_multinom_b`], parts `>= 0`.
pub fn rhs_balancing_multinom_c(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "balancing multinomial C")?;
    check_uv_args(r, n)?;
    let row = binomial_row(n as u64);
    let c = c_prefix(cache, n as usize);
    let mut acc = Rat::zero();
    let denom = if r % 2 == 1 {
        for j in 0..=(r - 1) / 2 {
            acc += rat_int(binom(r, j)? * shifted_binomial_sum(&row, 6 * j, r - 2 * j, &c));
        }
        int_pow(&ArbInt::from(2), (r - 1) as u64)
    } else {
        for j in 0..r / 2 {
            acc += rat_int(2 * binom(r, j)? * shifted_binomial_sum(&row, 6 * j, r - 2 * j, &c));
        }
        acc += rat_int(binom(r, r / 2)? * int_pow(&ArbInt::from(3 * r), n as u64));
        int_pow(&ArbInt::from(2), r as u64)
    };
    integral(acc / rat_int(denom), "balancing multinomial C", r, n)
}

/// `(2^n L_n - 2) / 5`, the Fibonacci pair binomial convolution.
pub fn rhs_fib_pair_f(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::FIBONACCI, "Fibonacci pair")?;
    require_at_least("Fibonacci pair", "n", n, 0)?;
    let lead = int_pow(&ArbInt::from(2), n as u64) * cache.v(n)?;
    integral(rat_int(lead - 2) / rat_int(5), "Fibonacci pair", 2, n)
}

/// `2^n L_n + 2`, the Lucas pair binomial convolution.
pub fn rhs_fib_pair_l(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::FIBONACCI, "Lucas pair")?;
    require_at_least("Lucas pair", "n", n, 0)?;
    Ok(int_pow(&ArbInt::from(2), n as u64) * cache.v(n)? + 2)
}

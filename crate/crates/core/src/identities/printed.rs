//! Corollaries transcribed verbatim, typos included.
//!
//! These evaluators exist only to be cross-checked against the general
//! formulas in [`super::closed_form`]; nothing else in the crate trusts them.
//! Two transcriptions are known to disagree with the general theorem:
//!
//! * the rank-5 alternating corollary indexes its third term with `B_{n-6}`
//!   where the general formula has `B_{n-8}`;
//! * the balancing instance of the even-`r` multinomial identity carries
//!   `(r/2)^n` where `a = 6` gives `(3r)^n`.

use num_traits::Zero;

use crate::arith::{
    binom, binomial_row, expect_integral, int_pow, rat, rat_int, sign_pow, ArbInt, Rat,
};
use crate::error::{domain, Result};
use crate::sequences::{SeqCache, SeqParams};

use super::closed_form::{require_at_least, require_params};

/// Lower bound of the printed rank-`r` alternating corollary.
pub fn printed_corollary_min_n(r: i64) -> Result<i64> {
    match r {
        4 => Ok(7),
        5 => Ok(10),
        6 => Ok(13),
        _ => Err(domain(format!("no printed corollary for r = {r}"))),
    }
}

fn b(cache: &SeqCache, n: i64) -> Result<Rat> {
    Ok(rat_int(cache.u(n)?))
}

/// Evaluates the printed corollary for `r` in `{4, 5, 6}` exactly as written.
pub fn rhs_printed_corollary(cache: &SeqCache, r: i64, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "printed corollary")?;
    let n_min = printed_corollary_min_n(r)?;
    require_at_least("printed corollary", "n", n, n_min)?;
    let bi = |m: i64, k: i64| -> Result<Rat> { Ok(rat_int(binom(m, k)?)) };
    let value = match r {
        4 => {
            bi(n - 1, 3)? * b(cache, n - 3)?
                - rat((n - 3) * (n - 5) * (n - 7), 3) * b(cache, n - 5)?
                + bi(n - 7, 3)? * b(cache, n - 7)?
        }
        5 => printed_r5(cache, n, n - 6)?,
        6 => {
            bi(n - 1, 5)? * b(cache, n - 5)?
                - rat((n - 3) * (n - 4) * (n - 5) * (n - 7) * (n - 11), 30) * b(cache, n - 7)?
                + rat((n - 5) * (n - 6) * (n - 9) * (n - 12) * (n - 13), 20) * b(cache, n - 9)?
                - rat((n - 7) * (n - 11) * (n - 13) * (n - 14) * (n - 15), 30) * b(cache, n - 11)?
                + bi(n - 13, 5)? * b(cache, n - 13)?
        }
        _ => unreachable!("checked by printed_corollary_min_n"),
    };
    expect_integral(value, || format!("printed corollary r={r}, n={n}"))
}

/// Rank-5 corollary with the third term's index supplied by the caller.
fn printed_r5(cache: &SeqCache, n: i64, third_index: i64) -> Result<Rat> {
    Ok(rat_int(binom(n - 1, 4)?) * b(cache, n - 4)?
        - rat((n - 3) * (n - 4) * (n - 6) * (n - 9), 8) * b(cache, n - 6)?
        + rat((n - 5) * (n - 8) * (n - 10) * (n - 11), 8) * b(cache, third_index)?
        - rat_int(binom(n - 10, 4)?) * b(cache, n - 10)?)
}

/// Rank-5 corollary with the third term indexed `B_{n-8}`, as the general
/// alternating formula's `k = 3` term prescribes.
pub fn rhs_printed_r5_repaired(cache: &SeqCache, n: i64) -> Result<ArbInt> {
    require_params(cache, SeqParams::BALANCING, "printed corollary")?;
    require_at_least("printed corollary", "n", n, 10)?;
    expect_integral(printed_r5(cache, n, n - 8)?, || {
        format!("repaired r=5 corollary, n={n}")
    })
}

/// Coefficient of the suspect third term of the rank-5 corollary.
pub fn printed_r5_third_coefficient(n: i64) -> Rat {
    rat((n - 5) * (n - 8) * (n - 10) * (n - 11), 8)
}

/// Printed balancing instance of the multinomial `B`-product identity.
///
/// Odd `r` matches the general theorem; even `r` uses `(r/2)^n` for the
/// middle term. The misprinted form need not be integral, so the exact
/// rational value is returned.
pub fn rhs_printed_balancing_multinom_b(cache: &SeqCache, r: i64, n: i64) -> Result<Rat> {
    require_params(cache, SeqParams::BALANCING, "printed balancing multinomial")?;
    require_at_least("printed balancing multinomial", "r", r, 1)?;
    require_at_least("printed balancing multinomial", "n", n, 0)?;
    let row = binomial_row(n as u64);
    let inner = |j: i64, w: &[ArbInt]| -> ArbInt {
        let (shift, scale) = (ArbInt::from(6 * j), ArbInt::from(r - 2 * j));
        (0..=n as usize).fold(ArbInt::zero(), |acc, k| {
            acc + &row[k]
                * int_pow(&shift, (n as usize - k) as u64)
                * int_pow(&scale, k as u64)
                * &w[k]
        })
    };
    let mut acc = Rat::zero();
    let denom = if r % 2 == 1 {
        let bs = cache.u_prefix(n as usize);
        for j in 0..=(r - 1) / 2 {
            acc += rat_int(binom(r, j)? * inner(j, &bs) * sign_pow(j));
        }
        int_pow(&ArbInt::from(32), ((r - 1) / 2) as u64)
    } else {
        let cs: Vec<ArbInt> = cache
            .v_prefix(n as usize)
            .into_iter()
            .map(|v| v / 2)
            .collect();
        for j in 0..r / 2 {
            acc += rat_int(2 * binom(r, j)? * inner(j, &cs) * sign_pow(j));
        }
        // as printed: (r/2)^n
        let middle = binom(r, r / 2)? * int_pow(&ArbInt::from(r / 2), n as u64);
        acc += rat_int(middle * sign_pow(r / 2));
        int_pow(&ArbInt::from(32), (r / 2) as u64)
    };
    Ok(acc / rat_int(denom))
}

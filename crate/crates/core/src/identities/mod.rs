//! Catalog of convolution identities: a brute-force side, a closed-form side,
//! and the validity domain on which the two are claimed to agree.

pub mod closed_form;
pub mod oracle;
pub mod printed;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::arith::ArbInt;
use crate::error::{domain, usage, Error, Result};
use crate::sequences::{SeqCache, SeqParams};

use oracle::{BinomialPowers, ConvPowers};

pub use verify::{verify_identity, Failure, VerificationReport};

/// Which parameter pairs an identity is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsRequirement {
    Balancing,
    Fibonacci,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `n B_n` equals the telescoped pair sum, `n >= 1`.
    PairTelescope,
    /// Alternating weighted triple convolution, `n >= 4`.
    TripleAlt,
    /// Alternating weighted `r`-fold convolution, `n >= 3r - 5`.
    GeneralAlt,
    CorPrintedR4,
    CorPrintedR5,
    CorPrintedR6,
    /// Plain pair convolution, `n >= 2`.
    PairPlain,
    /// Plain `r`-fold convolution, `n >= r >= 2`.
    GeneralPlain,
    BinomPairB,
    BinomPairC,
    MultinomTripleB,
    MultinomTripleC,
    GeneralU,
    GeneralV,
    FibPairF,
    FibPairL,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::PairTelescope,
        IdentityId::TripleAlt,
        IdentityId::GeneralAlt,
        IdentityId::CorPrintedR4,
        IdentityId::CorPrintedR5,
        IdentityId::CorPrintedR6,
        IdentityId::PairPlain,
        IdentityId::GeneralPlain,
        IdentityId::BinomPairB,
        IdentityId::BinomPairC,
        IdentityId::MultinomTripleB,
        IdentityId::MultinomTripleC,
        IdentityId::GeneralU,
        IdentityId::GeneralV,
        IdentityId::FibPairF,
        IdentityId::FibPairL,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::PairTelescope => "pair-telescope",
            IdentityId::TripleAlt => "triple-alt",
            IdentityId::GeneralAlt => "general-alt",
            IdentityId::CorPrintedR4 => "cor-printed-r4",
            IdentityId::CorPrintedR5 => "cor-printed-r5",
            IdentityId::CorPrintedR6 => "cor-printed-r6",
            IdentityId::PairPlain => "pair-plain",
            IdentityId::GeneralPlain => "general-plain",
            IdentityId::BinomPairB => "binom-pair-b",
            IdentityId::BinomPairC => "binom-pair-c",
            IdentityId::MultinomTripleB => "multinom-triple-b",
            IdentityId::MultinomTripleC => "multinom-triple-c",
            IdentityId::GeneralU => "general-u",
            IdentityId::GeneralV => "general-v",
            IdentityId::FibPairF => "fib-pair-f",
            IdentityId::FibPairL => "fib-pair-l",
        }
    }

    pub fn params_requirement(&self) -> ParamsRequirement {
        match self {
            IdentityId::GeneralU | IdentityId::GeneralV => ParamsRequirement::Any,
            IdentityId::FibPairF | IdentityId::FibPairL => ParamsRequirement::Fibonacci,
            _ => ParamsRequirement::Balancing,
        }
    }

    /// Parameters used when the caller does not choose any.
    pub fn default_params(&self) -> SeqParams {
        match self.params_requirement() {
            ParamsRequirement::Fibonacci => SeqParams::FIBONACCI,
            _ => SeqParams::BALANCING,
        }
    }

    /// Rank of identities that are stated for a single `r`.
    pub fn fixed_r(&self) -> Option<i64> {
        match self {
            IdentityId::PairTelescope
            | IdentityId::PairPlain
            | IdentityId::BinomPairB
            | IdentityId::BinomPairC
            | IdentityId::FibPairF
            | IdentityId::FibPairL => Some(2),
            IdentityId::TripleAlt | IdentityId::MultinomTripleB | IdentityId::MultinomTripleC => {
                Some(3)
            }
            IdentityId::CorPrintedR4 => Some(4),
            IdentityId::CorPrintedR5 => Some(5),
            IdentityId::CorPrintedR6 => Some(6),
            IdentityId::GeneralAlt
            | IdentityId::GeneralPlain
            | IdentityId::GeneralU
            | IdentityId::GeneralV => None,
        }
    }

    /// Smallest admissible `r`.
    pub fn min_r(&self) -> i64 {
        match self {
            IdentityId::GeneralU | IdentityId::GeneralV => 1,
            IdentityId::GeneralAlt | IdentityId::GeneralPlain => 2,
            other => other.fixed_r().expect("fixed-rank identity"),
        }
    }

    /// Smallest `n` on which the identity is stated, for the given `r`.
    pub fn min_n(&self, r: i64) -> i64 {
        match self {
            IdentityId::PairTelescope => 1,
            IdentityId::TripleAlt => 4,
            IdentityId::GeneralAlt => 3 * r - 5,
            IdentityId::CorPrintedR4 => 7,
            IdentityId::CorPrintedR5 => 10,
            IdentityId::CorPrintedR6 => 13,
            IdentityId::PairPlain => 2,
            IdentityId::GeneralPlain => r,
            _ => 0,
        }
    }

    /// Validates `(params, r)` for this identity, resolving a missing `r`.
    pub fn resolve(&self, params: SeqParams, r: Option<i64>) -> Result<i64> {
        match self.params_requirement() {
            ParamsRequirement::Balancing if params != SeqParams::BALANCING => {
                return Err(usage(format!(
                    "{self} is stated for balancing numbers only, got {params}"
                )))
            }
            ParamsRequirement::Fibonacci if params != SeqParams::FIBONACCI => {
                return Err(usage(format!(
                    "{self} is stated for Fibonacci/Lucas numbers only, got {params}"
                )))
            }
            _ => {}
        }
        match (self.fixed_r(), r) {
            (Some(fixed), None) => Ok(fixed),
            (Some(fixed), Some(r)) if r == fixed => Ok(r),
            (Some(fixed), Some(r)) => {
                Err(usage(format!("{self} has fixed r = {fixed}, got r = {r}")))
            }
            (None, None) => Err(usage(format!("{self} needs an explicit r"))),
            (None, Some(r)) if r < self.min_r() => Err(domain(format!(
                "{self} needs r >= {}, got {r}",
                self.min_r()
            ))),
            (None, Some(r)) => Ok(r),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| usage(format!("unknown identity '{s}'")))
    }
}

enum Oracle {
    Telescope,
    Alternating(ConvPowers),
    Plain(ConvPowers),
    Binomial(BinomialPowers),
}

/// Both sides of one identity at fixed `(params, r)`, with the oracle tables
/// precomputed through `n_max`.
///
/// Shared read-only across threads once built.
pub struct Evaluator {
    id: IdentityId,
    r: i64,
    n_max: i64,
    cache: SeqCache,
    oracle: Oracle,
}

impl Evaluator {
    pub fn new(id: IdentityId, params: SeqParams, r: Option<i64>, n_max: i64) -> Result<Self> {
        let r = id.resolve(params, r)?;
        if n_max < 0 {
            return Err(domain(format!("negative upper bound {n_max}")));
        }
        let len = n_max as usize;
        let cache = SeqCache::with_capacity(params, len + 2);
        let oracle = match id {
            IdentityId::PairTelescope => Oracle::Telescope,
            IdentityId::TripleAlt
            | IdentityId::GeneralAlt
            | IdentityId::CorPrintedR4
            | IdentityId::CorPrintedR5
            | IdentityId::CorPrintedR6 => Oracle::Alternating(ConvPowers::new(params, r, len)?),
            IdentityId::PairPlain | IdentityId::GeneralPlain => {
                Oracle::Plain(ConvPowers::new(params, r, len)?)
            }
            IdentityId::BinomPairB
            | IdentityId::MultinomTripleB
            | IdentityId::GeneralU
            | IdentityId::FibPairF => {
                Oracle::Binomial(BinomialPowers::new(&cache.u_prefix(len), r as usize))
            }
            IdentityId::GeneralV | IdentityId::FibPairL => {
                Oracle::Binomial(BinomialPowers::new(&cache.v_prefix(len), r as usize))
            }
            IdentityId::BinomPairC | IdentityId::MultinomTripleC => {
                let c: Vec<ArbInt> = cache.v_prefix(len).into_iter().map(|v| v / 2).collect();
                Oracle::Binomial(BinomialPowers::new(&c, r as usize))
            }
        };
        Ok(Evaluator {
            id,
            r,
            n_max,
            cache,
            oracle,
        })
    }

    pub fn id(&self) -> IdentityId {
        self.id
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn params(&self) -> SeqParams {
        self.cache.params()
    }

    pub fn min_n(&self) -> i64 {
        self.id.min_n(self.r)
    }

    fn check_n(&self, n: i64) -> Result<()> {
        if n < self.min_n() {
            return Err(domain(format!(
                "{}: needs n >= {}, got {n}",
                self.id,
                self.min_n()
            )));
        }
        if n > self.n_max {
            return Err(usage(format!(
                "n = {n} exceeds the prepared range (max {})",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Brute-force side at `n`.
    pub fn lhs(&self, n: i64) -> Result<ArbInt> {
        self.check_n(n)?;
        Ok(match &self.oracle {
            Oracle::Telescope => oracle::telescoping_pair_sum(&self.cache, n)?,
            Oracle::Alternating(t) => t.alternating(n),
            Oracle::Plain(t) => t.get(n),
            Oracle::Binomial(t) => t.get(self.r as usize, n as usize).clone(),
        })
    }

    /// Closed-form side at `n`.
    pub fn rhs(&self, n: i64) -> Result<ArbInt> {
        use closed_form::*;
        self.check_n(n)?;
        let c = &self.cache;
        match self.id {
            IdentityId::PairTelescope => rhs_pair_telescope(c, n),
            IdentityId::TripleAlt => rhs_triple_alt(c, n),
            IdentityId::GeneralAlt => rhs_general_alt(c, self.r, n),
            IdentityId::CorPrintedR4 | IdentityId::CorPrintedR5 | IdentityId::CorPrintedR6 => {
                printed::rhs_printed_corollary(c, self.r, n)
            }
            IdentityId::PairPlain => rhs_pair_plain(c, n),
            IdentityId::GeneralPlain => rhs_general_plain(c, self.r, n),
            IdentityId::BinomPairB => rhs_binom_pair_b(c, n),
            IdentityId::BinomPairC => rhs_binom_pair_c(c, n),
            IdentityId::MultinomTripleB => rhs_multinom_triple_b(c, n),
            IdentityId::MultinomTripleC => rhs_multinom_triple_c(c, n),
            IdentityId::GeneralU => rhs_multinom_u(c, self.r, n),
            IdentityId::GeneralV => rhs_multinom_v(c, self.r, n),
            IdentityId::FibPairF => rhs_fib_pair_f(c, n),
            IdentityId::FibPairL => rhs_fib_pair_l(c, n),
        }
    }
}

/// Closed-form side of `id` at a single point.
pub fn evaluate_closed_form(
    id: IdentityId,
    params: SeqParams,
    r: Option<i64>,
    n: i64,
) -> Result<ArbInt> {
    let r = id.resolve(params, r)?;
    if n < id.min_n(r) {
        return Err(domain(format!("{id}: needs n >= {}, got {n}", id.min_n(r))));
    }
    Evaluator::new(id, params, Some(r), n)?.rhs(n)
}

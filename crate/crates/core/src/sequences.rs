//! Second-order recurrences `x_n = a x_{n-1} + b x_{n-2}`.
//!
//! For a parameter pair `(a, b)` there are two companion sequences:
//! `u` with `u_0 = 0, u_1 = 1` and `v` with `v_0 = 2, v_1 = a`. The named
//! families are specializations: balancing numbers are `u` at `(6, -1)`,
//! Lucas-balancing numbers are `v / 2` at `(6, -1)`, Fibonacci and Lucas
//! numbers are `u` and `v` at `(1, 1)`.

use std::fmt;
use std::sync::RwLock;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::ArbInt;
use crate::error::{domain, Result};

/// Recurrence coefficients with a nonzero discriminant `a^2 + 4b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SeqParams {
    a: i64,
    b: i64,
}

#[derive(Deserialize)]
struct RawParams {
    a: i64,
    b: i64,
}

impl TryFrom<RawParams> for SeqParams {
    type Error = crate::Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        SeqParams::new(raw.a, raw.b)
    }
}

impl SeqParams {
    pub const BALANCING: SeqParams = SeqParams { a: 6, b: -1 };
    pub const FIBONACCI: SeqParams = SeqParams { a: 1, b: 1 };

    /// Rejects a zero discriminant, where the two characteristic roots coincide.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let params = SeqParams { a, b };
        if params.discriminant() == 0 {
            return Err(domain(format!(
                "parameters ({a}, {b}) have zero discriminant a^2 + 4b"
            )));
        }
        Ok(params)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `a^2 + 4b`.
    pub fn discriminant(&self) -> i64 {
        self.a * self.a + 4 * self.b
    }
}

impl fmt::Display for SeqParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

/// Named sequence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Balancing,
    LucasBalancing,
    Fibonacci,
    Lucas,
    U(SeqParams),
    V(SeqParams),
}

impl Kind {
    pub fn params(&self) -> SeqParams {
        match *self {
            Kind::Balancing | Kind::LucasBalancing => SeqParams::BALANCING,
            Kind::Fibonacci | Kind::Lucas => SeqParams::FIBONACCI,
            Kind::U(p) | Kind::V(p) => p,
        }
    }

    /// Short symbol used in table headers.
    pub fn symbol(&self) -> &'static str {
        match self {
            Kind::Balancing => "B",
            Kind::LucasBalancing => "C",
            Kind::Fibonacci => "F",
            Kind::Lucas => "L",
            Kind::U(_) => "u",
            Kind::V(_) => "v",
        }
    }

    pub fn term(&self, cache: &SeqCache, n: i64) -> Result<ArbInt> {
        match self {
            Kind::Balancing | Kind::Fibonacci | Kind::U(_) => cache.u(n),
            Kind::Lucas | Kind::V(_) => cache.v(n),
            Kind::LucasBalancing => cache.lucas_balancing(n),
        }
    }
}

fn check_index(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| domain(format!("negative sequence index {n}")))
}

fn iterate(params: SeqParams, first: ArbInt, second: ArbInt, n: usize) -> ArbInt {
    let (a, b) = (ArbInt::from(params.a), ArbInt::from(params.b));
    let (mut prev, mut cur) = (first, second);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &a * &cur + &b * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `u_n` by plain iteration.
pub fn u(params: SeqParams, n: i64) -> Result<ArbInt> {
    let n = check_index(n)?;
    Ok(iterate(params, ArbInt::zero(), ArbInt::one(), n))
}

/// `v_n` by plain iteration.
pub fn v(params: SeqParams, n: i64) -> Result<ArbInt> {
    let n = check_index(n)?;
    Ok(iterate(params, ArbInt::from(2), ArbInt::from(params.a), n))
}

/// Lucas-balancing number `C_n = v_n / 2` at `(6, -1)`.
pub fn lucas_balancing(n: i64) -> Result<ArbInt> {
    Ok(v(SeqParams::BALANCING, n)? / 2)
}

/// Growable memo of `u` and `v` for one parameter pair.
///
/// Reads of an already computed prefix take a shared lock; extension takes the
/// write lock, so concurrent readers never observe a partially grown table.
#[derive(Debug)]
pub struct SeqCache {
    params: SeqParams,
    terms: RwLock<Terms>,
}

#[derive(Debug, Clone)]
struct Terms {
    u: Vec<ArbInt>,
    v: Vec<ArbInt>,
}

impl Terms {
    fn extend_to(&mut self, params: SeqParams, n: usize) {
        let (a, b) = (ArbInt::from(params.a), ArbInt::from(params.b));
        while self.u.len() <= n {
            let k = self.u.len();
            let next_u = &a * &self.u[k - 1] + &b * &self.u[k - 2];
            let next_v = &a * &self.v[k - 1] + &b * &self.v[k - 2];
            self.u.push(next_u);
            self.v.push(next_v);
        }
    }
}

impl SeqCache {
    pub fn new(params: SeqParams) -> Self {
        let terms = Terms {
            u: vec![ArbInt::zero(), ArbInt::one()],
            v: vec![ArbInt::from(2), ArbInt::from(params.a)],
        };
        SeqCache {
            params,
            terms: RwLock::new(terms),
        }
    }

    /// A cache already filled through index `n_max`.
    pub fn with_capacity(params: SeqParams, n_max: usize) -> Self {
        let cache = SeqCache::new(params);
        cache.ensure(n_max);
        cache
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    /// Makes sure indices `0..=n` are stored.
    pub fn ensure(&self, n: usize) {
        if self.terms.read().unwrap().u.len() > n {
            return;
        }
        self.terms.write().unwrap().extend_to(self.params, n);
    }

    fn get(&self, n: i64, pick: impl Fn(&Terms) -> &Vec<ArbInt>) -> Result<ArbInt> {
        let idx = check_index(n)?;
        {
            let terms = self.terms.read().unwrap();
            if let Some(x) = pick(&terms).get(idx) {
                return Ok(x.clone());
            }
        }
        let mut terms = self.terms.write().unwrap();
        terms.extend_to(self.params, idx);
        Ok(pick(&terms)[idx].clone())
    }

    pub fn u(&self, n: i64) -> Result<ArbInt> {
        self.get(n, |t| &t.u)
    }

    pub fn v(&self, n: i64) -> Result<ArbInt> {
        self.get(n, |t| &t.v)
    }

    /// `v_n / 2`; exact whenever `a` is even, which holds for balancing.
    pub fn lucas_balancing(&self, n: i64) -> Result<ArbInt> {
        let v = self.v(n)?;
        debug_assert!(v.is_even());
        Ok(v / 2)
    }

    /// `u_0..=u_n` cloned out of the cache.
    pub fn u_prefix(&self, n: usize) -> Vec<ArbInt> {
        self.ensure(n);
        self.terms.read().unwrap().u[..=n].to_vec()
    }

    pub fn v_prefix(&self, n: usize) -> Vec<ArbInt> {
        self.ensure(n);
        self.terms.read().unwrap().v[..=n].to_vec()
    }
}

/// Checks `B_{n+1} = 3B_n + C_n` and `C_{n+1} = 8B_n + 3C_n` for `0 <= n <= n_max`.
pub fn check_cross_recurrence(n_max: u64) -> bool {
    let cache = SeqCache::with_capacity(SeqParams::BALANCING, n_max as usize + 1);
    (0..=n_max as i64).all(|n| {
        let b = cache.u(n).unwrap();
        let c = cache.lucas_balancing(n).unwrap();
        let b1 = cache.u(n + 1).unwrap();
        let c1 = cache.lucas_balancing(n + 1).unwrap();
        b1 == 3 * &b + &c && c1 == 8 * &b + 3 * &c
    })
}

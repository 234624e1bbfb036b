use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Evaluator, IdentityId};
use crate::arith::ArbInt;
use crate::error::{usage, Error, Result};
use crate::sequences::SeqParams;

/// One point where the brute-force and closed-form sides differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub n: i64,
    pub lhs: ArbInt,
    pub rhs: ArbInt,
}

/// Outcome of an exact sweep over `n_range` (inclusive, already clipped to
/// the identity's domain).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Wire", try_from = "Wire")]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: SeqParams,
    pub r: i64,
    pub n_range: (i64, i64),
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self) -> u64 {
        self.checked - self.failures.len() as u64
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| usage(format!("malformed report: {e}")))
    }
}

/// Checks `id` at every `n` in `n_range ∩ domain`.
///
/// Points are evaluated in parallel; failures come back ordered by `n`.
pub fn verify_identity(
    id: IdentityId,
    params: SeqParams,
    r: Option<i64>,
    n_range: (i64, i64),
) -> Result<VerificationReport> {
    let r = id.resolve(params, r)?;
    let (lo, hi) = n_range;
    if lo > hi {
        return Err(usage(format!("empty range [{lo}, {hi}]")));
    }
    let lo = lo.max(id.min_n(r));
    if lo > hi {
        return Err(usage(format!(
            "range [{}, {hi}] misses the domain n >= {} of {id}",
            n_range.0,
            id.min_n(r)
        )));
    }
    let ev = Evaluator::new(id, params, Some(r), hi)?;
    let outcomes: Vec<Option<Failure>> = (lo..=hi)
        .into_par_iter()
        .map(|n| -> Result<Option<Failure>> {
            let lhs = ev.lhs(n)?;
            let rhs = ev.rhs(n)?;
            Ok((lhs != rhs).then_some(Failure { n, lhs, rhs }))
        })
        .collect::<Result<_>>()?;
    Ok(VerificationReport {
        identity: id,
        params,
        r,
        n_range: (lo, hi),
        checked: (hi - lo + 1) as u64,
        failures: outcomes.into_iter().flatten().collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct WireParams {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct WireFailure {
    n: String,
    lhs: String,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    identity: String,
    params: WireParams,
    r: String,
    range: [String; 2],
    checked: String,
    failures: Vec<WireFailure>,
}

impl From<VerificationReport> for Wire {
    fn from(rep: VerificationReport) -> Self {
        Wire {
            identity: rep.identity.name().to_string(),
            params: WireParams {
                a: rep.params.a().to_string(),
                b: rep.params.b().to_string(),
            },
            r: rep.r.to_string(),
            range: [rep.n_range.0.to_string(), rep.n_range.1.to_string()],
            checked: rep.checked.to_string(),
            failures: rep
                .failures
                .into_iter()
                .map(|f| WireFailure {
                    n: f.n.to_string(),
                    lhs: f.lhs.to_string(),
                    rhs: f.rhs.to_string(),
                })
                .collect(),
        }
    }
}

fn parse<T: std::str::FromStr>(field: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| usage(format!("field '{field}': not an integer: '{s}'")))
}

impl TryFrom<Wire> for VerificationReport {
    type Error = Error;

    fn try_from(w: Wire) -> Result<Self> {
        let failures = w
            .failures
            .iter()
            .map(|f| {
                Ok(Failure {
                    n: parse("n", &f.n)?,
                    lhs: parse("lhs", &f.lhs)?,
                    rhs: parse("rhs", &f.rhs)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(VerificationReport {
            identity: w.identity.parse()?,
            params: SeqParams::new(parse("a", &w.params.a)?, parse("b", &w.params.b)?)?,
            r: parse("r", &w.r)?,
            n_range: (parse("range", &w.range[0])?, parse("range", &w.range[1])?),
            checked: parse("checked", &w.checked)?,
            failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BAL: SeqParams = SeqParams::BALANCING;

    #[test]
    fn telescope_sweep() {
        let rep = verify_identity(IdentityId::PairTelescope, BAL, None, (1, 100)).unwrap();
        assert!(rep.is_pass());
        assert_eq!(rep.checked, 100);
        assert_eq!(rep.passed(), 100);
    }

    #[test]
    fn general_alt_sweep() {
        let rep = verify_identity(IdentityId::GeneralAlt, BAL, Some(4), (7, 100)).unwrap();
        assert!(rep.is_pass());
        assert_eq!(rep.n_range, (7, 100));
    }

    #[test]
    fn printed_r5_failures_have_witnesses() {
        let rep = verify_identity(IdentityId::CorPrintedR5, BAL, Some(5), (10, 50)).unwrap();
        assert!(!rep.is_pass());
        assert_eq!(rep.first_failure().unwrap().n, 12);
        assert_eq!(rep.failures.len(), 39);
        let ev = Evaluator::new(IdentityId::CorPrintedR5, BAL, None, 50).unwrap();
        for f in &rep.failures {
            assert_eq!(ev.lhs(f.n).unwrap(), f.lhs);
            assert_eq!(ev.rhs(f.n).unwrap(), f.rhs);
        }
        let ns: Vec<i64> = rep.failures.iter().map(|f| f.n).collect();
        assert!(ns.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn range_is_clipped_to_domain() {
        let rep = verify_identity(IdentityId::GeneralAlt, BAL, Some(4), (0, 20)).unwrap();
        assert_eq!(rep.n_range, (7, 20));
        assert_eq!(rep.checked, 14);
        assert!(matches!(
            verify_identity(IdentityId::GeneralAlt, BAL, Some(4), (0, 6)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            verify_identity(IdentityId::PairPlain, BAL, None, (5, 4)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn params_mismatch_is_usage_error() {
        assert!(matches!(
            verify_identity(
                IdentityId::GeneralAlt,
                SeqParams::FIBONACCI,
                Some(4),
                (7, 20)
            ),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let rep = verify_identity(IdentityId::CorPrintedR5, BAL, None, (10, 20)).unwrap();
        let text = rep.to_json();
        assert_eq!(VerificationReport::from_json(&text).unwrap(), rep);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["identity"], "cor-printed-r5");
        assert_eq!(v["params"]["b"], "-1");
        assert_eq!(v["range"][0], "10");
        assert!(v["failures"][0]["lhs"].is_string());
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(VerificationReport::from_json("{}").is_err());
        let bad = r#"{"identity":"pair-plain","params":{"a":"6","b":"-1"},"r":"2","range":["2","x"],"checked":"1","failures":[]}"#;
        assert!(matches!(
            VerificationReport::from_json(bad),
            Err(Error::Usage(_))
        ));
    }
}

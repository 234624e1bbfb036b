use balancing_core::arith::ArbInt;
use balancing_core::identities::closed_form::{
    rhs_general_alt, rhs_general_plain, rhs_multinom_u, rhs_multinom_v,
};
use balancing_core::identities::oracle::{
    alt_weighted_conv, binom_conv_u, binom_conv_v, conv_power,
};
use balancing_core::identities::{evaluate_closed_form, verify_identity, Evaluator, IdentityId};
use balancing_core::sequences::{SeqCache, SeqParams};
use balancing_core::Error;
use proptest::prelude::*;

const BAL: SeqParams = SeqParams::BALANCING;

fn grid_params() -> impl Strategy<Value = SeqParams> {
    prop::sample::select(vec![
        (6, -1),
        (1, 1),
        (2, 1),
        (1, 2),
        (3, 2),
        (-2, 3),
        (4, -3),
    ])
    .prop_map(|(a, b)| SeqParams::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alternating_identity(r in 2i64..=7, extra in 0i64..60) {
        let n = 3 * r - 5 + extra;
        let cache = SeqCache::new(BAL);
        prop_assert_eq!(alt_weighted_conv(r, n).unwrap(), rhs_general_alt(&cache, r, n).unwrap());
    }

    #[test]
    fn plain_identity(r in 2i64..=7, extra in 0i64..60) {
        let n = r + extra;
        let cache = SeqCache::new(BAL);
        prop_assert_eq!(conv_power(BAL, r, n).unwrap(), rhs_general_plain(&cache, r, n).unwrap());
    }

    #[test]
    fn multinomial_identities(p in grid_params(), r in 1i64..=6, n in 0i64..40) {
        let cache = SeqCache::new(p);
        prop_assert_eq!(binom_conv_u(p, r, n).unwrap(), rhs_multinom_u(&cache, r, n).unwrap());
        prop_assert_eq!(binom_conv_v(p, r, n).unwrap(), rhs_multinom_v(&cache, r, n).unwrap());
    }

    #[test]
    fn below_domain_is_rejected(r in 2i64..=8, gap in 1i64..5) {
        let n = 3 * r - 5 - gap;
        let res = evaluate_closed_form(IdentityId::GeneralAlt, BAL, Some(r), n);
        prop_assert!(matches!(res, Err(Error::Domain(_))));
    }

    #[test]
    fn failure_witnesses_reevaluate(hi in 12i64..60) {
        let rep = verify_identity(IdentityId::CorPrintedR5, BAL, None, (10, hi)).unwrap();
        prop_assert_eq!(rep.failures.len() as i64, hi - 11);
        let ev = Evaluator::new(IdentityId::CorPrintedR5, BAL, None, hi).unwrap();
        for f in &rep.failures {
            prop_assert_eq!(&ev.lhs(f.n).unwrap(), &f.lhs);
            prop_assert_eq!(&ev.rhs(f.n).unwrap(), &f.rhs);
        }
    }
}

#[test]
fn every_identity_has_a_passing_sweep_except_r5() {
    for id in IdentityId::ALL {
        let r = id.fixed_r().or(Some(3));
        let rep = verify_identity(id, id.default_params(), r, (0, 30)).unwrap();
        assert_eq!(rep.is_pass(), id != IdentityId::CorPrintedR5, "{id}");
    }
}

#[test]
fn closed_form_values() {
    assert_eq!(
        evaluate_closed_form(IdentityId::PairPlain, BAL, None, 4).unwrap(),
        ArbInt::from(106)
    );
    assert_eq!(
        evaluate_closed_form(IdentityId::BinomPairB, BAL, None, 2).unwrap(),
        ArbInt::from(2)
    );
    assert_eq!(
        evaluate_closed_form(IdentityId::BinomPairC, BAL, None, 1).unwrap(),
        ArbInt::from(6)
    );
    assert_eq!(
        evaluate_closed_form(IdentityId::MultinomTripleB, BAL, None, 3).unwrap(),
        ArbInt::from(6)
    );
    assert_eq!(
        evaluate_closed_form(IdentityId::FibPairL, SeqParams::FIBONACCI, None, 3).unwrap(),
        ArbInt::from(34)
    );
    assert_eq!(
        evaluate_closed_form(IdentityId::GeneralAlt, BAL, Some(6), 13).unwrap(),
        ArbInt::from(184453632)
    );
}

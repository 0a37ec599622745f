//! Property suites: sequence/value invariants, bisection laws, field and
//! chain-order axioms for the hyperreal scalar, and measure laws.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use gnum::bisection::{
    affine_from_unit, affine_to_unit, dedekind_value, encode, interval_chain, nesting_holds,
    width_law_holds,
};
use gnum::hyperreal::{Class, ClosenessMode, Hyperreal, Poly};
use gnum::randomness::{cylinder_measure, StringSet};
use gnum::sequences::{expand, DigitString, Rational, SequenceSpec};

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=60).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (0i64..=600, 1i64..=600).prop_map(|(n, d)| {
        let d = d.max(1);
        Rational::new(BigInt::from(n.min(d)), BigInt::from(d))
    })
}

fn digits(base: u32, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..base as u8, 0..=max_len)
}

fn spec(base: u32) -> impl Strategy<Value = SequenceSpec> {
    (digits(base, 5), digits(base, 5)).prop_map(move |(pre, mut per)| {
        if per.is_empty() {
            per.push(0);
        }
        SequenceSpec::new(base, pre, per).expect("valid spec")
    })
}

fn poly_from(coeffs: Vec<i32>, shift: u32) -> Poly {
    coeffs.into_iter().enumerate().fold(Poly::zero(), |acc, (i, c)| {
        acc.add(&Poly::monomial(i as u32 + shift, Rational::from_integer(c.into())))
    })
}

fn hyper() -> impl Strategy<Value = Hyperreal> {
    (
        prop::collection::vec(-5i32..=5, 1..=4),
        prop::collection::vec(-5i32..=5, 0..=3),
        1i32..=5,
        0u32..=2,
        0u32..=2,
    )
        .prop_map(|(num, den_hi, den_lo, num_shift, den_shift)| {
            let num = poly_from(num, num_shift);
            let mut den = poly_from(den_hi, den_shift + 1);
            den = den.add(&Poly::monomial(den_shift, Rational::from_integer(den_lo.into())));
            Hyperreal::new(num, den).expect("den nonzero")
        })
}

fn nonzero_hyper() -> impl Strategy<Value = Hyperreal> {
    hyper().prop_filter("nonzero", |x| !x.is_zero())
}

/// True iff the canonical stream does not end in all zeros (zero itself is
/// the one value whose nonterminating form is the all-zero stream).
fn is_nonterminating(spec: &SequenceSpec) -> bool {
    let c = spec.canonicalize();
    c.period() != [0] || (c.preamble().is_empty() && c.value_exact().is_zero())
}

proptest! {
    #[test]
    fn partial_sums_bracket_the_value(s in spec(2), k in 0usize..80) {
        let v = s.value_exact();
        let partial = s.prefix(k).finite_value();
        let bound = Rational::new(BigInt::one(), BigInt::from(s.base()).pow(k as u32));
        prop_assert!((v - partial).abs() <= bound);
    }

    #[test]
    fn expand_round_trips_values(q in unit_rational(), base in 2u32..=10) {
        let s = expand(&q, base).unwrap();
        prop_assert_eq!(s.value_exact(), q);
        prop_assert!(is_nonterminating(&s));
        prop_assert!(s.is_canonical());
    }

    #[test]
    fn expand_of_value_reproduces_nonterminating_streams(s in spec(2)) {
        let v = s.value_exact();
        let round = expand(&v, 2).unwrap();
        prop_assert_eq!(round.value_exact(), v);
        if is_nonterminating(&s) {
            prop_assert_eq!(round, s.canonicalize());
        }
    }

    #[test]
    fn change_basis_preserves_value(s in spec(2), target in 2u32..=10) {
        let converted = gnum::sequences::change_basis(&s, target).unwrap();
        prop_assert_eq!(converted.value_exact(), s.value_exact());
        prop_assert_eq!(converted.base(), target);
    }

    #[test]
    fn canonicalize_is_idempotent_and_stream_preserving(s in spec(3)) {
        let c = s.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        let n = 3 * (s.preamble().len() + s.period().len());
        prop_assert_eq!(s.prefix(n), c.prefix(n));
    }

    #[test]
    fn chains_obey_width_and_nesting_laws(
        lo in rational(),
        width_num in 1i64..=50,
        bits in digits(2, 24),
    ) {
        let hi = &lo + Rational::new(width_num.into(), 7.into());
        let bits = DigitString::new(2, bits).unwrap();
        let chain = interval_chain(lo, hi, &bits).unwrap();
        prop_assert!(width_law_holds(&chain));
        prop_assert!(nesting_holds(&chain));
    }

    #[test]
    fn dedekind_value_is_the_unit_interval_value(s in spec(2)) {
        let v = dedekind_value(&Rational::zero(), &Rational::one(), &s).unwrap();
        prop_assert_eq!(v, s.value_exact());
    }

    #[test]
    fn affine_transport_identity(s in spec(2), a in rational(), w in 1i64..=40) {
        let b = &a + Rational::new(w.into(), 3.into());
        let d = dedekind_value(&a, &b, &s).unwrap();
        prop_assert_eq!(affine_to_unit(&d, &a, &b).unwrap(), s.value_exact());
    }

    #[test]
    fn encode_decode_coherence(c01 in unit_rational(), a in rational(), w in 1i64..=40, depth in 0usize..40) {
        let b = &a + Rational::new(w.into(), 5.into());
        let c = affine_from_unit(&c01, &a, &b).unwrap();
        let bits = encode(&c, &a, &b, depth).unwrap();
        let chain = interval_chain(a, b, &bits).unwrap();
        prop_assert!(chain.contains_throughout(&c));
    }

    #[test]
    fn dedekind_value_injective_on_canonical_nonterminating_specs(
        q1 in unit_rational(),
        q2 in unit_rational(),
    ) {
        let s1 = expand(&q1, 2).unwrap();
        let s2 = expand(&q2, 2).unwrap();
        let d1 = dedekind_value(&Rational::zero(), &Rational::one(), &s1).unwrap();
        let d2 = dedekind_value(&Rational::zero(), &Rational::one(), &s2).unwrap();
        prop_assert_eq!(s1 == s2, d1 == d2);
    }
}

proptest! {
    #[test]
    fn field_axioms(x in hyper(), y in hyper(), z in hyper()) {
        // commutativity
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        // associativity
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        // identities
        prop_assert_eq!(x.add(&Hyperreal::zero()), x.clone());
        prop_assert_eq!(x.mul(&Hyperreal::one()), x.clone());
        // inverses
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.recip().unwrap()), Hyperreal::one());
        }
        // distributivity
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn chain_order_axioms(x in hyper(), y in hyper(), z in hyper()) {
        use std::cmp::Ordering;
        // totality + antisymmetry
        match x.compare(&y) {
            Ordering::Less => prop_assert_eq!(y.compare(&x), Ordering::Greater),
            Ordering::Greater => prop_assert_eq!(y.compare(&x), Ordering::Less),
            Ordering::Equal => prop_assert_eq!(&x, &y),
        }
        // transitivity
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        // translation invariance
        prop_assert_eq!(x.add(&z).compare(&y.add(&z)), x.compare(&y));
        // positive elements closed under product
        if x.sign() > 0 && y.sign() > 0 {
            prop_assert!(x.mul(&y).sign() > 0);
        }
    }

    #[test]
    fn compare_matches_small_t_evaluation(x in hyper(), y in hyper()) {
        let diff = x.sub(&y);
        let expected = match x.compare(&y) {
            std::cmp::Ordering::Less => -1i8,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        // signs of a rational function stabilize past its smallest root
        let mut t = Rational::new(BigInt::one(), BigInt::from(1024));
        let mut signs = Vec::new();
        for _ in 0..40 {
            if let Some(v) = diff.eval(&t) {
                signs.push(if v.is_positive() { 1i8 } else if v.is_negative() { -1 } else { 0 });
            }
            t = t / Rational::from_integer(BigInt::from(2));
        }
        let last = *signs.last().expect("denominator has finitely many roots");
        prop_assert_eq!(last, expected);
        let tail_stable = signs.iter().rev().take(8).all(|&s| s == last);
        prop_assert!(tail_stable);
    }

    #[test]
    fn infinitesimal_iff_inverse_unbounded(x in nonzero_hyper()) {
        let inv = x.recip().unwrap();
        prop_assert_eq!(
            x.classify() == Class::Infinitesimal,
            inv.classify() == Class::Unbounded
        );
        prop_assert_eq!(
            x.classify() == Class::Unbounded,
            inv.classify() == Class::Infinitesimal
        );
    }

    #[test]
    fn closeness_relations_are_equivalences(x in hyper(), y in hyper(), z in hyper()) {
        for mode in [ClosenessMode::InfinitesimallyClose, ClosenessMode::FinitelyDistant] {
            prop_assert!(x.close(mode, &x));
            prop_assert_eq!(x.close(mode, &y), y.close(mode, &x));
            if x.close(mode, &y) && y.close(mode, &z) {
                prop_assert!(x.close(mode, &z));
            }
        }
    }

    #[test]
    fn std_is_the_unique_infinitesimally_close_rational(x in hyper(), k in 1i64..=50) {
        if x.is_finite() {
            let std = x.std_part().unwrap();
            prop_assert!(x.close(ClosenessMode::InfinitesimallyClose, &Hyperreal::from_rational(&std)));
            // any rational offset breaks closeness
            let off = Rational::new(BigInt::one(), BigInt::from(k));
            let perturbed = Hyperreal::from_rational(&(std + off));
            prop_assert!(!x.close(ClosenessMode::InfinitesimallyClose, &perturbed));
        } else {
            prop_assert!(x.std_part().is_err());
        }
    }
}

proptest! {
    #[test]
    fn measure_laws(texts in prop::collection::vec(digits(2, 6), 0..=12)) {
        let strings: Vec<DigitString> =
            texts.into_iter().map(|d| DigitString::new(2, d).unwrap()).collect();
        let set = StringSet::new(2, strings.clone()).unwrap();
        let mu = cylinder_measure(&set);
        prop_assert!(mu <= Rational::one());
        prop_assert!(mu >= Rational::zero());

        // invariance under adding an extension of an existing member
        if let Some(first) = strings.first() {
            let mut longer = first.digits().to_vec();
            longer.push(0);
            let mut extended = strings.clone();
            extended.push(DigitString::new(2, longer).unwrap());
            let set2 = StringSet::new(2, extended).unwrap();
            prop_assert_eq!(cylinder_measure(&set2), mu.clone());
        }

        // monotone under union
        let mut unioned = strings.clone();
        unioned.push(DigitString::parse(2, "111111").unwrap());
        let set3 = StringSet::new(2, unioned).unwrap();
        prop_assert!(cylinder_measure(&set3) >= mu);

        // exact additivity on the pruned antichain
        let pruned = set.prune();
        let singleton_sum: Rational = pruned
            .strings()
            .map(|s| cylinder_measure(&StringSet::new(2, [s.clone()]).unwrap()))
            .sum();
        prop_assert_eq!(singleton_sum, mu);
    }
}

//! Bisection-limit ("Dedekind") sets over the hyperreal field: symbolic
//! cardinality classification of the chain intersection, finite-depth
//! membership evidence, and the random-hyperreal decomposition.
//!
//! The implemented field is countable, so uncountable cardinalities are never
//! materialized; the classifier reports symbolic verdicts while
//! `membership_at_depth` supplies the in-model evidence.

use std::fmt;

use serde_json::json;

use crate::bisection::{dedekind_value, interval_chain};
use crate::hyperreal::{Class, ClosenessMode, Hyperreal};
use crate::sequences::{format_rational, Rational, SequenceSpec};
use crate::{Error, Result};

/// Symbolic cardinality verdict. `Aleph(1)` denotes |ℝ| under the GCH
/// convention; `SameAsInfinitesimals` means "as many points as there are
/// infinitesimals", whatever that cardinal is in the ambient system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CardinalClass {
    Finite(u64),
    Aleph(u64),
    SameAsInfinitesimals,
}

impl fmt::Display for CardinalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalClass::Finite(k) => write!(f, "Finite({k})"),
            CardinalClass::Aleph(k) => write!(f, "Aleph({k})"),
            CardinalClass::SameAsInfinitesimals => f.write_str("SameAsInfinitesimals"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Both endpoints are plain rationals: the intersection is a singleton.
    RealCase,
    /// Endpoints finitely distant with distinct standard parts.
    DistinctStdCase,
    /// Endpoints finitely distant with equal standard parts.
    EqualStdCase,
    /// Endpoints not finitely distant: the set swallows every real.
    InfinitelySeparatedCase,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CaseTag::RealCase => "RealCase",
            CaseTag::DistinctStdCase => "DistinctStdCase",
            CaseTag::EqualStdCase => "EqualStdCase",
            CaseTag::InfinitelySeparatedCase => "InfinitelySeparatedCase",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindSetDescriptor {
    pub endpoints: (Hyperreal, Hyperreal),
    pub spec: SequenceSpec,
    pub cardinality: CardinalClass,
    pub std_limit: Option<Rational>,
    pub contains_all_reals: bool,
    pub case_tag: CaseTag,
}

impl DedekindSetDescriptor {
    /// The documented JSON form (four fields).
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "case": self.case_tag.to_string(),
            "cardinality": self.cardinality.to_string(),
            "std_limit": self.std_limit.as_ref().map(format_rational),
            "contains_all_reals": self.contains_all_reals,
        })
    }
}

/// Classifies the chain intersection for endpoints (a0, b0) driven by `spec`.
pub fn classify_dedekind_set(
    a0: &Hyperreal,
    b0: &Hyperreal,
    spec: &SequenceSpec,
) -> Result<DedekindSetDescriptor> {
    if a0 >= b0 {
        return Err(Error::domain("interval endpoints must satisfy lo < hi"));
    }
    if spec.base() != 2 {
        return Err(Error::domain("sequence spec must be base 2"));
    }
    let (case_tag, cardinality, std_limit, contains_all_reals) =
        if a0.is_rational() && b0.is_rational() {
            let limit = dedekind_value(
                &a0.to_rational().expect("rational endpoint"),
                &b0.to_rational().expect("rational endpoint"),
                spec,
            )?;
            (CaseTag::RealCase, CardinalClass::Finite(1), Some(limit), false)
        } else if a0.close(ClosenessMode::FinitelyDistant, b0) {
            let sa = a0.std_part().expect("finitely distant endpoints are finite");
            let sb = b0.std_part().expect("finitely distant endpoints are finite");
            if sa != sb {
                // the unique real finitely inside: the rational-chain limit
                let limit = dedekind_value(&sa, &sb, spec)?;
                (
                    CaseTag::DistinctStdCase,
                    CardinalClass::SameAsInfinitesimals,
                    Some(limit),
                    false,
                )
            } else {
                (CaseTag::EqualStdCase, CardinalClass::SameAsInfinitesimals, Some(sa), false)
            }
        } else {
            (CaseTag::InfinitelySeparatedCase, CardinalClass::SameAsInfinitesimals, None, true)
        };
    Ok(DedekindSetDescriptor {
        endpoints: (a0.clone(), b0.clone()),
        spec: spec.clone(),
        cardinality,
        std_limit,
        contains_all_reals,
        case_tag,
    })
}

/// True iff aₙ ≤ d ≤ bₙ for every n ≤ depth in the chain driven by the first
/// `depth` digits of `spec`, with exact hyperreal comparisons.
pub fn membership_at_depth(
    d: &Hyperreal,
    a0: &Hyperreal,
    b0: &Hyperreal,
    spec: &SequenceSpec,
    depth: usize,
) -> Result<bool> {
    if spec.base() != 2 {
        return Err(Error::domain("sequence spec must be base 2"));
    }
    let chain = interval_chain(a0.clone(), b0.clone(), &spec.prefix(depth))?;
    Ok(chain.contains_throughout(d))
}

/// v₂(spec) + eps, for eps infinitesimal or zero.
pub fn random_hyperreal(spec: &SequenceSpec, eps: &Hyperreal) -> Result<Hyperreal> {
    if spec.base() != 2 {
        return Err(Error::domain("sequence spec must be base 2"));
    }
    if !matches!(eps.classify(), Class::Zero | Class::Infinitesimal) {
        return Err(Error::domain("perturbation must be infinitesimal or zero"));
    }
    Ok(Hyperreal::from_rational(&spec.value_exact()).add(eps))
}

/// Splits a finite element into its standard part and the infinitesimal rest.
pub fn decompose(h: &Hyperreal) -> Result<(Rational, Hyperreal)> {
    let std = h.std_part()?;
    let rest = h.sub(&Hyperreal::from_rational(&std));
    Ok((std, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperreal::parse_hyperreal;
    use crate::sequences::parse_rational;

    fn h(text: &str) -> Hyperreal {
        parse_hyperreal(text).unwrap()
    }

    fn spec01() -> SequenceSpec {
        SequenceSpec::parse(2, "", "01").unwrap()
    }

    #[test]
    fn rational_endpoints_are_the_real_case() {
        let d = classify_dedekind_set(&h("0"), &h("1"), &spec01()).unwrap();
        assert_eq!(d.case_tag, CaseTag::RealCase);
        assert_eq!(d.cardinality, CardinalClass::Finite(1));
        assert_eq!(d.std_limit, Some(parse_rational("1/3").unwrap()));
        assert!(!d.contains_all_reals);
    }

    #[test]
    fn distinct_std_case() {
        let d = classify_dedekind_set(&h("e"), &h("1+e^2"), &spec01()).unwrap();
        assert_eq!(d.case_tag, CaseTag::DistinctStdCase);
        assert_eq!(d.cardinality, CardinalClass::SameAsInfinitesimals);
        assert_eq!(d.std_limit, Some(parse_rational("1/3").unwrap()));
    }

    #[test]
    fn equal_std_case() {
        let d = classify_dedekind_set(&h("e"), &h("3*e"), &spec01()).unwrap();
        assert_eq!(d.case_tag, CaseTag::EqualStdCase);
        assert_eq!(d.std_limit, Some(parse_rational("0").unwrap()));
        assert!(!d.contains_all_reals);
    }

    #[test]
    fn infinitely_separated_case() {
        let d = classify_dedekind_set(&h("0"), &h("1/e"), &spec01()).unwrap();
        assert_eq!(d.case_tag, CaseTag::InfinitelySeparatedCase);
        assert_eq!(d.std_limit, None);
        assert!(d.contains_all_reals);
    }

    #[test]
    fn rejects_disordered_endpoints() {
        assert!(classify_dedekind_set(&h("1"), &h("0"), &spec01()).is_err());
        assert!(classify_dedekind_set(&h("e"), &h("e"), &spec01()).is_err());
    }

    #[test]
    fn membership_evidence() {
        // 1/3 + ε² survives a depth-64 chain over [0, 1]
        let d = h("1/3 + e^2");
        assert!(membership_at_depth(&d, &h("0"), &h("1"), &spec01(), 64).unwrap());
        // the left endpoint is fixed by the all-zeros spec
        let zeros = SequenceSpec::parse(2, "", "0").unwrap();
        assert!(membership_at_depth(&h("0"), &h("0"), &h("1"), &zeros, 40).unwrap());
        // chain for "010" ends at [1/4, 3/8], expelling 1/2
        assert!(!membership_at_depth(&h("1/2"), &h("0"), &h("1"), &spec01(), 3).unwrap());
    }

    #[test]
    fn random_hyperreal_roundtrip() {
        let x = random_hyperreal(&spec01(), &h("e^2")).unwrap();
        assert_eq!(x, h("1/3 + e^2"));
        let (std, rest) = decompose(&x).unwrap();
        assert_eq!(std, parse_rational("1/3").unwrap());
        assert_eq!(rest, h("e^2"));

        let ones = SequenceSpec::parse(2, "", "1").unwrap();
        let y = random_hyperreal(&ones, &Hyperreal::zero()).unwrap();
        assert_eq!(decompose(&y).unwrap(), (parse_rational("1").unwrap(), Hyperreal::zero()));

        assert!(random_hyperreal(&spec01(), &h("1/2")).is_err());
        assert!(decompose(&h("1/e")).is_err());
    }

    #[test]
    fn descriptor_json_form() {
        let d = classify_dedekind_set(&h("e"), &h("1+e^2"), &spec01()).unwrap();
        assert_eq!(
            d.to_json(),
            serde_json::json!({
                "case": "DistinctStdCase",
                "cardinality": "SameAsInfinitesimals",
                "std_limit": "1/3",
                "contains_all_reals": false,
            })
        );
    }
}

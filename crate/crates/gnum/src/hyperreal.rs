//! A constructive chain-ordered non-Archimedean field: reduced ratios of
//! polynomials in an infinitesimal ε ("e" in text form) with exact rational
//! coefficients, ordered by sign as ε → 0⁺.
//!
//! Normal form: numerator and denominator are coprime polynomials and the
//! denominator's lowest-degree coefficient is 1, so equality is plain
//! representational equality.

mod parser;
mod poly;

pub use parser::parse_hyperreal;
pub use poly::Poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bisection::Scalar;
use crate::sequences::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperreal {
    num: Poly,
    den: Poly,
}

/// Magnitude taxonomy relative to the real (rational) line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Zero,
    Infinitesimal,
    Appreciable,
    Unbounded,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Class::Zero => "Zero",
            Class::Infinitesimal => "Infinitesimal",
            Class::Appreciable => "Appreciable",
            Class::Unbounded => "Unbounded",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosenessMode {
    InfinitesimallyClose,
    FinitelyDistant,
}

/// Outcome of probing the Archimedean property for a pair (a, b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchimedeanReport {
    /// Smallest n ≤ n_max with n·a > b, when one exists in range.
    pub exceeded_at: Option<u64>,
    pub verdict: ArchimedeanVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchimedeanVerdict {
    /// n·a ≤ b for every integer n: a witnesses non-Archimedean order.
    BoundedForever,
    EventuallyExceeds,
    Inconclusive,
}

impl fmt::Display for ArchimedeanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ArchimedeanVerdict::BoundedForever => "bounded_forever",
            ArchimedeanVerdict::EventuallyExceeds => "eventually_exceeds",
            ArchimedeanVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(name)
    }
}

impl Hyperreal {
    /// Builds num/den and reduces to normal form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::arithmetic("zero denominator"));
        }
        if num.is_zero() {
            return Ok(Hyperreal { num: Poly::zero(), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        // scale so the denominator's lowest-degree coefficient is 1
        let scale = den.low_coeff().expect("den nonzero");
        den = den.scale(&scale.recip());
        num = num.scale(&scale.recip());
        Ok(Hyperreal { num, den })
    }

    pub fn zero() -> Self {
        Hyperreal { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Hyperreal { num: Poly::one(), den: Poly::one() }
    }

    /// The infinitesimal generator ε.
    pub fn epsilon() -> Self {
        Hyperreal { num: Poly::monomial(1, Rational::one()), den: Poly::one() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Hyperreal { num: Poly::constant(q.clone()), den: Poly::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the element is a plain rational (no ε anywhere).
    pub fn is_rational(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.num.coeff(0) / self.den.coeff(0))
    }

    /// lowdeg(num) − lowdeg(den); undefined (None) for zero.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.low_deg()?;
        let d = self.den.low_deg().expect("den nonzero");
        Some(n as i64 - d as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Hyperreal::new(num, den).expect("den product nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Hyperreal { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Hyperreal::new(num, den).expect("den product nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::arithmetic("division by zero"));
        }
        Hyperreal::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Hyperreal::one().div(self)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Ok(Hyperreal::one());
        }
        if self.is_zero() && exp < 0 {
            return Err(Error::arithmetic("zero to a negative power"));
        }
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Hyperreal::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Sign as ε → 0⁺: the sign of the numerator's lowest-degree coefficient
    /// (the denominator's is normalized to 1).
    pub fn sign(&self) -> i8 {
        match self.num.low_coeff() {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn classify(&self) -> Class {
        match self.valuation() {
            None => Class::Zero,
            Some(v) if v > 0 => Class::Infinitesimal,
            Some(v) if v < 0 => Class::Unbounded,
            Some(_) => Class::Appreciable,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.classify(), Class::Unbounded)
    }

    /// The unique rational infinitesimally close to a finite element.
    pub fn std_part(&self) -> Result<Rational> {
        if !self.is_finite() {
            return Err(Error::domain("unbounded element has no standard part"));
        }
        // finite + reduced ⇒ den has a constant term (normalized to 1)
        Ok(self.num.coeff(0) / self.den.coeff(0))
    }

    pub fn close(&self, mode: ClosenessMode, other: &Self) -> bool {
        let diff = self.sub(other).classify();
        match mode {
            ClosenessMode::InfinitesimallyClose => {
                matches!(diff, Class::Zero | Class::Infinitesimal)
            }
            ClosenessMode::FinitelyDistant => !matches!(diff, Class::Unbounded),
        }
    }

    /// Evaluates the rational function at a rational t (for the order oracle);
    /// None when the denominator vanishes at t.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let den = self.den.eval(t);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / den)
    }
}

/// Probes n·a ≼ b for n = 1..=n_max, with a symbolic verdict from valuations.
pub fn archimedean_check(a: &Hyperreal, b: &Hyperreal, n_max: u64) -> Result<ArchimedeanReport> {
    if n_max < 1 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let verdict = symbolic_verdict(a, b);
    let exceeded_at = match verdict {
        // val(a) > val(b) with a, b > 0: n·a keeps valuation val(a), so
        // n·a − b stays negative for every integer n.
        ArchimedeanVerdict::BoundedForever => None,
        ArchimedeanVerdict::EventuallyExceeds => first_exceed_same_valuation(a, b, n_max),
        ArchimedeanVerdict::Inconclusive => first_exceed_scan(a, b, n_max),
    };
    Ok(ArchimedeanReport { exceeded_at, verdict })
}

fn symbolic_verdict(a: &Hyperreal, b: &Hyperreal) -> ArchimedeanVerdict {
    if a.sign() > 0 && b.sign() > 0 {
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        if va > vb {
            return ArchimedeanVerdict::BoundedForever;
        }
        if va == vb {
            return ArchimedeanVerdict::EventuallyExceeds;
        }
    }
    ArchimedeanVerdict::Inconclusive
}

/// Leading coefficients decide: n·a − b first turns positive near n = β/α.
fn first_exceed_same_valuation(a: &Hyperreal, b: &Hyperreal, n_max: u64) -> Option<u64> {
    let ratio = b.div(a).expect("a nonzero");
    let lead = ratio.std_part().expect("same valuation ratio is finite");
    let floor = lead.floor().to_integer();
    let mut n = if floor.is_negative() { BigInt::one() } else { floor.max(BigInt::one()) };
    loop {
        let scaled = a.mul(&Hyperreal::from_rational(&Rational::from_integer(n.clone())));
        if scaled.compare(b) == Ordering::Greater {
            break;
        }
        n += 1;
    }
    let n: u64 = n.try_into().ok()?;
    (n <= n_max).then_some(n)
}

fn first_exceed_scan(a: &Hyperreal, b: &Hyperreal, n_max: u64) -> Option<u64> {
    let mut acc = Hyperreal::zero();
    for n in 1..=n_max {
        acc = acc.add(a);
        if acc.compare(b) == Ordering::Greater {
            return Some(n);
        }
        // a ≤ 0 never accumulates past anything above it
        if a.sign() <= 0 && n > 1 {
            return None;
        }
    }
    None
}

impl PartialOrd for Hyperreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for Hyperreal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Scalar for Hyperreal {
    fn from_rational(q: &Rational) -> Self {
        Hyperreal::from_rational(q)
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }

    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn divide(&self, other: &Self) -> Result<Self> {
        self.div(other)
    }

    fn halve(&self) -> Self {
        self.mul(&Hyperreal::from_rational(&Rational::new(BigInt::one(), BigInt::from(2))))
    }
}

// Canonical form: "num / den" terms in ascending exponent, e.g.
// "(1 + 2*e) / (e^2)"; pure rationals print as "p/q".
impl fmt::Display for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::parse_rational;

    fn h(text: &str) -> Hyperreal {
        parse_hyperreal(text).unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        let x = h("(1+2*e)/(e^2)");
        assert_eq!(x.numerator().to_string(), "1 + 2*e");
        assert_eq!(x.denominator().to_string(), "e^2");
        assert_eq!(h("e/e"), Hyperreal::one());
        // hand common denominator: 1/(1+e) + 1/(1−e) = 2/(1−e²)
        assert_eq!(h("1/(1+e) + 1/(1-e)"), h("2/(1-e^2)"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_hyperreal("1 + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_hyperreal("1/(e-e)").is_err());
        assert!(parse_hyperreal("").is_err());
        assert!(parse_hyperreal("1 + ").is_err());
        assert!(parse_hyperreal("(1").is_err());
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(h("1+e").add(&h("2-e")), h("3"));
        assert_eq!(h("e").mul(&h("1/e")), Hyperreal::one());
        let inv = Hyperreal::one().div(&h("1+e")).unwrap();
        assert_eq!(inv, h("1/(1+e)"));
        assert_eq!(h("1+e").mul(&inv), Hyperreal::one());
        assert!(h("1").div(&Hyperreal::zero()).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(h("e^2").compare(&h("e")), Ordering::Less);
        assert_eq!(h("1/e").compare(&h("1000000")), Ordering::Greater);
        assert_eq!(h("3").compare(&h("3+e")), Ordering::Less);
    }

    #[test]
    fn order_agrees_with_small_t_evaluation() {
        // rational functions have finitely many roots, so signs stabilize
        let pairs = [("e^2", "e"), ("1/e", "1000000"), ("3", "3+e"), ("(1+e)/e", "5/e")];
        for (xs, ys) in pairs {
            let (x, y) = (h(xs), h(ys));
            let diff = x.sub(&y);
            let expected = diff.sign();
            let mut t = Rational::new(BigInt::one(), BigInt::from(2));
            let mut last = None;
            for _ in 0..24 {
                if let Some(v) = diff.eval(&t) {
                    last = Some(if v.is_positive() {
                        1i8
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    });
                }
                t = t.halve();
            }
            assert_eq!(last, Some(expected), "{xs} vs {ys}");
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(h("e^2 + 2*e^3").classify(), Class::Infinitesimal);
        assert_eq!(h("e^2 + 2*e^3").valuation(), Some(2));
        assert_eq!(h("(1+e)/e").classify(), Class::Unbounded);
        assert_eq!(Hyperreal::zero().classify(), Class::Zero);
        assert_eq!(h("7/2 + e").classify(), Class::Appreciable);
    }

    #[test]
    fn std_part_examples() {
        assert_eq!(h("3 + 5*e + e^2").std_part().unwrap(), parse_rational("3").unwrap());
        let x = h("(2+e)/(1+e)");
        assert_eq!(x.std_part().unwrap(), parse_rational("2").unwrap());
        let drift = x.sub(&Hyperreal::from_integer(2));
        assert_eq!(drift.classify(), Class::Infinitesimal);
        assert!(h("1/e").std_part().is_err());
    }

    #[test]
    fn closeness_examples() {
        let a = h("1/3");
        let b = h("1/3 + e^2");
        assert!(a.close(ClosenessMode::InfinitesimallyClose, &b));
        assert!(!h("0").close(ClosenessMode::InfinitesimallyClose, &h("1/1000")));
        assert!(h("1/e").close(ClosenessMode::FinitelyDistant, &h("1/e + 7 + e")));
        assert!(!h("1/e").close(ClosenessMode::FinitelyDistant, &h("2/e")));
    }

    #[test]
    fn archimedean_examples() {
        let r = archimedean_check(&Hyperreal::epsilon(), &Hyperreal::one(), 1_000_000).unwrap();
        assert_eq!(r.exceeded_at, None);
        assert_eq!(r.verdict, ArchimedeanVerdict::BoundedForever);

        let r = archimedean_check(&Hyperreal::from_integer(1), &Hyperreal::from_integer(1000), 2000)
            .unwrap();
        assert_eq!(r.exceeded_at, Some(1001));
        assert_eq!(r.verdict, ArchimedeanVerdict::EventuallyExceeds);

        let r = archimedean_check(&h("e^2"), &h("e"), 1_000_000).unwrap();
        assert_eq!(r.exceeded_at, None);
        assert_eq!(r.verdict, ArchimedeanVerdict::BoundedForever);

        // negative a never exceeds a positive b
        let r = archimedean_check(&h("-1"), &h("5"), 100).unwrap();
        assert_eq!(r.exceeded_at, None);
        assert_eq!(r.verdict, ArchimedeanVerdict::Inconclusive);
    }

    #[test]
    fn display_canonical_forms() {
        assert_eq!(h("(1+2*e)/(e^2)").to_string(), "(1 + 2*e) / (e^2)");
        assert_eq!(h("3/4").to_string(), "3/4");
        assert_eq!(h("-2").to_string(), "-2");
        assert_eq!(h("1+e").to_string(), "1 + e");
        // display output re-parses to the same element
        for s in ["(1+2*e)/(e^2)", "1 - e + e^3", "(1-e)/(2+e^2)", "-5/3*e"] {
            let x = h(s);
            assert_eq!(h(&x.to_string()), x, "round-trip {s}");
        }
    }

    #[test]
    fn inverse_swaps_infinitesimal_and_unbounded() {
        for s in ["e", "e^2 + e^5", "3*e/(1+e)"] {
            let x = h(s);
            assert_eq!(x.classify(), Class::Infinitesimal);
            assert_eq!(x.recip().unwrap().classify(), Class::Unbounded);
        }
    }
}

//! Finite n-ary digit strings, eventually periodic sequence specifications,
//! exact positional values, nonterminating representations, and base change.
//!
//! Digit strings are over bases 2..=10 (one ASCII glyph per digit). The only
//! infinite sequences representable as first-class objects are the eventually
//! periodic ones; everything else enters the crate as a finite sample.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact scalar for all positional values: reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses "p/q" or "p", optional leading '-'. The text form used everywhere
/// rationals cross a process boundary.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let parse_int = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::syntax(0, format!("invalid rational literal {text:?}")));
        }
        Ok(t.parse().expect("digits parse as BigInt"))
    };
    let num = parse_int(num_str)?;
    let den = parse_int(den_str)?;
    if den.is_zero() {
        return Err(Error::arithmetic(format!("zero denominator in {text:?}")));
    }
    let q = Rational::new(num, den);
    Ok(if neg { -q } else { q })
}

/// Renders a rational as "p/q", or "p" when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A finite string over the alphabet {0, …, base−1}. The empty string is valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString {
    base: u32,
    digits: Vec<u8>,
}

impl DigitString {
    pub fn new(base: u32, digits: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| u32::from(d) >= base) {
            return Err(Error::domain(format!("digit {d} out of range for base {base}")));
        }
        Ok(DigitString { base, digits })
    }

    /// The empty string λ.
    pub fn empty(base: u32) -> Result<Self> {
        Self::new(base, Vec::new())
    }

    /// Parses ASCII digits '0'..='9'.
    pub fn parse(base: u32, text: &str) -> Result<Self> {
        check_base(base)?;
        let digits = text
            .bytes()
            .map(|b| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(Error::domain(format!("invalid digit character {:?}", b as char)))
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(base, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Σ_{i=1}^{|s|} xᵢ / baseⁱ, exactly.
    pub fn finite_value(&self) -> Rational {
        let base = BigInt::from(self.base);
        let mut num = BigInt::zero();
        for &d in &self.digits {
            num = num * &base + BigInt::from(d);
        }
        let den = base.pow(self.digits.len() as u32);
        Rational::new(num, den)
    }

    /// True iff `self` is a proper or improper prefix of `other`.
    pub fn is_prefix_of(&self, other: &DigitString) -> bool {
        self.base == other.base
            && self.digits.len() <= other.digits.len()
            && other.digits[..self.digits.len()] == self.digits[..]
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", char::from(b'0' + d))?;
        }
        Ok(())
    }
}

fn check_base(base: u32) -> Result<()> {
    if !(2..=10).contains(&base) {
        return Err(Error::domain(format!("base {base} not in 2..=10")));
    }
    Ok(())
}

/// An eventually periodic infinite digit sequence: a finite preamble followed
/// by a nonempty period repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    base: u32,
    preamble: Vec<u8>,
    period: Vec<u8>,
}

impl SequenceSpec {
    pub fn new(base: u32, preamble: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        if period.is_empty() {
            return Err(Error::domain("period must be nonempty"));
        }
        for &d in preamble.iter().chain(period.iter()) {
            if u32::from(d) >= base {
                return Err(Error::domain(format!("digit {d} out of range for base {base}")));
            }
        }
        Ok(SequenceSpec { base, preamble, period })
    }

    pub fn parse(base: u32, preamble: &str, period: &str) -> Result<Self> {
        let pre = DigitString::parse(base, preamble)?;
        let per = DigitString::parse(base, period)?;
        Self::new(base, pre.digits, per.digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn preamble(&self) -> &[u8] {
        &self.preamble
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// i-th digit of the infinite stream, 1-indexed.
    pub fn digit_at(&self, i: usize) -> u8 {
        assert!(i >= 1, "digits are 1-indexed");
        let idx = i - 1;
        if idx < self.preamble.len() {
            self.preamble[idx]
        } else {
            self.period[(idx - self.preamble.len()) % self.period.len()]
        }
    }

    /// First n digits of the stream: preamble, then the period cycled.
    pub fn prefix(&self, n: usize) -> DigitString {
        let digits = (1..=n).map(|i| self.digit_at(i)).collect();
        DigitString { base: self.base, digits }
    }

    /// v_base(x̄), exactly, via the geometric series for the repeating tail.
    pub fn value_exact(&self) -> Rational {
        let base = BigInt::from(self.base);
        let pre = DigitString { base: self.base, digits: self.preamble.clone() };
        let pre_value = pre.finite_value();
        // period as integer N over base^p − 1, scaled past the preamble
        let mut period_num = BigInt::zero();
        for &d in &self.period {
            period_num = period_num * &base + BigInt::from(d);
        }
        let period_den = base.pow(self.period.len() as u32) - BigInt::one();
        let tail = Rational::new(period_num, period_den);
        let shift = Rational::new(BigInt::one(), base.pow(self.preamble.len() as u32));
        pre_value + shift * tail
    }

    /// Unique minimal-period, minimal-preamble spec with the identical
    /// digit stream. Idempotent.
    pub fn canonicalize(&self) -> SequenceSpec {
        let mut period = minimal_period(&self.period);
        let mut preamble = self.preamble.clone();
        // absorb preamble digits that already agree with the cycle
        while let Some(&last) = preamble.last() {
            if last == *period.last().expect("period nonempty") {
                preamble.pop();
                let tail = period.pop().expect("period nonempty");
                period.insert(0, tail);
            } else {
                break;
            }
        }
        SequenceSpec { base: self.base, preamble, period }
    }

    pub fn is_canonical(&self) -> bool {
        self == &self.canonicalize()
    }

    /// Streams are equal iff the canonical forms are equal.
    pub fn same_stream(&self, other: &SequenceSpec) -> bool {
        self.base == other.base && self.canonicalize() == other.canonicalize()
    }
}

fn minimal_period(period: &[u8]) -> Vec<u8> {
    let n = period.len();
    for p in 1..n {
        if n % p == 0 && period.iter().zip(period.iter().cycle().skip(p).take(n)).all(|(a, b)| a == b) {
            return period[..p].to_vec();
        }
    }
    period.to_vec()
}

/// The nonterminating natural positional representation r_base(q).
///
/// Any value with a terminating expansion comes back in the form ending in
/// the repeated digit base−1; zero comes back as period "0".
pub fn expand(q: &Rational, base: u32) -> Result<SequenceSpec> {
    check_base(base)?;
    if q.is_negative() || *q > Rational::one() {
        return Err(Error::domain(format!("value {} outside [0, 1]", format_rational(q))));
    }
    if q.is_zero() {
        return Ok(SequenceSpec { base, preamble: vec![], period: vec![0] });
    }
    if q.is_one() {
        return Ok(SequenceSpec { base, preamble: vec![], period: vec![(base - 1) as u8] });
    }
    // long division with remainder-cycle detection
    let base_q = Rational::from_integer(BigInt::from(base));
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut digits: Vec<u8> = Vec::new();
    let mut r = q.clone();
    let (pre_len, cycle_start) = loop {
        if let Some(&at) = seen.get(&r) {
            break (at, at);
        }
        seen.insert(r.clone(), digits.len());
        let scaled = &r * &base_q;
        let d = scaled.floor().to_integer().to_u8().expect("digit fits in u8");
        digits.push(d);
        r = scaled - Rational::from_integer(BigInt::from(d));
    };
    let _ = cycle_start;
    let mut preamble = digits[..pre_len].to_vec();
    let mut period = digits[pre_len..].to_vec();
    // rewrite terminating forms 0.x₁…xᵢ1 0̄ into 0.x₁…(xᵢ−1) (base−1)̄
    if period.iter().all(|&d| d == 0) {
        period = vec![(base - 1) as u8];
        let last_nonzero = preamble
            .iter()
            .rposition(|&d| d != 0)
            .expect("nonzero value has a nonzero digit");
        preamble.truncate(last_nonzero + 1);
        preamble[last_nonzero] -= 1;
    }
    Ok(SequenceSpec { base, preamble, period }.canonicalize())
}

/// cb_{n₁,n₂} = r_{n₂} ∘ v_{n₁}: re-expands the exact value in the target base.
pub fn change_basis(spec: &SequenceSpec, target_base: u32) -> Result<SequenceSpec> {
    expand(&spec.value_exact(), target_base)
}

// JSON form: {"base": 2, "preamble": "10", "period": "01"}
impl Serialize for SequenceSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SequenceSpec", 3)?;
        st.serialize_field("base", &self.base)?;
        let pre = DigitString { base: self.base, digits: self.preamble.clone() };
        let per = DigitString { base: self.base, digits: self.period.clone() };
        st.serialize_field("preamble", &pre.to_string())?;
        st.serialize_field("period", &per.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SequenceSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            base: u32,
            #[serde(default)]
            preamble: String,
            period: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        SequenceSpec::parse(raw.base, &raw.preamble, &raw.period).map_err(D::Error::custom)
    }
}

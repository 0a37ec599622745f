//! The nested halving-interval recursion, its limit value, the inverse
//! bit encoding, and affine interval transport — generic over any exact
//! chain-ordered scalar (instantiated by `Rational` and `Hyperreal`).

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::sequences::{DigitString, Rational, SequenceSpec};
use crate::{Error, Result};

/// Exact chain-ordered scalar: addition, subtraction, multiplication,
/// division, halving, all exact; total order.
pub trait Scalar: Clone + Ord {
    fn from_rational(q: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Exact division; errors on a zero divisor.
    fn divide(&self, other: &Self) -> Result<Self>;
    fn halve(&self) -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn divide(&self, other: &Self) -> Result<Self> {
        if other.numer().sign() == num_bigint::Sign::NoSign {
            return Err(Error::arithmetic("division by zero"));
        }
        Ok(self / other)
    }

    fn halve(&self) -> Self {
        self / Rational::from_integer(BigInt::from(2))
    }
}

/// A nondegenerate interval: lo < hi strictly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval<S: Scalar> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Result<Self> {
        if lo >= hi {
            return Err(Error::domain("interval endpoints must satisfy lo < hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn midpoint(&self) -> S {
        self.lo.plus(&self.hi).halve()
    }

    pub fn width(&self) -> S {
        self.hi.minus(&self.lo)
    }

    pub fn contains(&self, x: &S) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    /// True iff self ⊆ other.
    pub fn is_subset_of(&self, other: &Interval<S>) -> bool {
        self.lo >= other.lo && self.hi <= other.hi
    }
}

/// One bisection step: bit 0 keeps the lower half, bit 1 the upper half.
pub fn bisect_step<S: Scalar>(iv: &Interval<S>, bit: u8) -> Interval<S> {
    let mid = iv.midpoint();
    match bit {
        0 => Interval { lo: iv.lo.clone(), hi: mid },
        1 => Interval { lo: mid, hi: iv.hi.clone() },
        _ => panic!("bit must be 0 or 1"),
    }
}

/// The full halving chain for a bit string, with every intermediate interval
/// kept for auditing.
#[derive(Debug, Clone)]
pub struct IntervalChain<S: Scalar> {
    start: Interval<S>,
    bits: DigitString,
    steps: Vec<Interval<S>>,
}

impl<S: Scalar> IntervalChain<S> {
    pub fn start(&self) -> &Interval<S> {
        &self.start
    }

    pub fn bits(&self) -> &DigitString {
        &self.bits
    }

    pub fn steps(&self) -> &[Interval<S>] {
        &self.steps
    }

    /// The interval after the last step (the start interval when empty).
    pub fn last(&self) -> &Interval<S> {
        self.steps.last().unwrap_or(&self.start)
    }

    /// True iff x lies in the start interval and in every step.
    pub fn contains_throughout(&self, x: &S) -> bool {
        self.start.contains(x) && self.steps.iter().all(|iv| iv.contains(x))
    }
}

/// Folds `bisect_step` over a binary string starting from [a0, b0].
pub fn interval_chain<S: Scalar>(a0: S, b0: S, bits: &DigitString) -> Result<IntervalChain<S>> {
    if bits.base() != 2 {
        return Err(Error::domain("bit string must be base 2"));
    }
    let start = Interval::new(a0, b0)?;
    let mut steps = Vec::with_capacity(bits.len());
    let mut current = start.clone();
    for &bit in bits.digits() {
        current = bisect_step(&current, bit);
        steps.push(current.clone());
    }
    Ok(IntervalChain { start, bits: bits.clone(), steps })
}

/// The unique point in the intersection of the chain driven by `spec`:
/// a0 + (b0 − a0) · v₂(spec), exactly.
pub fn dedekind_value(a0: &Rational, b0: &Rational, spec: &SequenceSpec) -> Result<Rational> {
    if spec.base() != 2 {
        return Err(Error::domain("sequence spec must be base 2"));
    }
    if a0 >= b0 {
        return Err(Error::domain("interval endpoints must satisfy lo < hi"));
    }
    Ok(a0 + (b0 - a0) * spec.value_exact())
}

/// Chooses bits so that c survives every bisection; at a midpoint tie the
/// lower half (bit 0) is taken, which makes the output agree digit-for-digit
/// with the nonterminating expansion of the affine-normalized value.
pub fn encode(c: &Rational, a0: &Rational, b0: &Rational, depth: usize) -> Result<DigitString> {
    if a0 >= b0 {
        return Err(Error::domain("interval endpoints must satisfy lo < hi"));
    }
    if c < a0 || c > b0 {
        return Err(Error::domain("value outside the interval"));
    }
    let mut lo = a0.clone();
    let mut hi = b0.clone();
    let mut bits = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mid = (&lo + &hi).halve();
        if *c <= mid {
            bits.push(0u8);
            hi = mid;
        } else {
            bits.push(1u8);
            lo = mid;
        }
    }
    DigitString::new(2, bits)
}

/// T_{a0,b0}(x) = (x − a0) / (b0 − a0).
pub fn affine_to_unit<S: Scalar>(x: &S, a0: &S, b0: &S) -> Result<S> {
    check_affine(a0, b0)?;
    x.minus(a0).divide(&b0.minus(a0))
}

/// T⁻¹_{a0,b0}(x) = (b0 − a0) · x + a0.
pub fn affine_from_unit<S: Scalar>(x: &S, a0: &S, b0: &S) -> Result<S> {
    check_affine(a0, b0)?;
    Ok(b0.minus(a0).times(x).plus(a0))
}

fn check_affine<S: Scalar>(a0: &S, b0: &S) -> Result<()> {
    if a0.cmp(b0) != Ordering::Less {
        return Err(Error::domain("interval endpoints must satisfy lo < hi"));
    }
    Ok(())
}

/// Width after n steps equals (b0 − a0) / 2ⁿ, exactly.
pub fn width_law_holds<S: Scalar>(chain: &IntervalChain<S>) -> bool {
    let two = S::from_rational(&Rational::from_integer(BigInt::from(2)));
    let mut expected = chain.start.width();
    for step in &chain.steps {
        expected = expected.divide(&two).expect("2 is nonzero");
        if step.width() != expected {
            return false;
        }
    }
    true
}

/// Every step is nested in its predecessor.
pub fn nesting_holds<S: Scalar>(chain: &IntervalChain<S>) -> bool {
    let mut prev = &chain.start;
    for step in &chain.steps {
        if !step.is_subset_of(prev) {
            return false;
        }
        prev = step;
    }
    true
}

//! Sparse polynomials in ε over the rationals: exponent → nonzero coefficient.
//! The zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::sequences::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_deg(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn low_coeff(&self) -> Option<Rational> {
        self.coeffs.values().next().cloned()
    }

    pub fn lead_coeff(&self) -> Option<Rational> {
        self.coeffs.values().next_back().cloned()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        for (&exp, c) in &other.coeffs {
            let entry = coeffs.entry(exp).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&exp);
            }
        }
        Poly { coeffs }
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                let entry = coeffs.entry(e1 + e2).or_insert_with(Rational::zero);
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Poly { coeffs }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// Euclidean division: (quotient, remainder) with deg(r) < deg(divisor).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let dlead = divisor.lead_coeff().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = Poly::monomial(rdeg - ddeg, rem.lead_coeff().unwrap() / &dlead);
            quot = quot.add(&factor);
            rem = rem.sub(&factor.mul(divisor));
        }
        (quot, rem)
    }

    /// Exact division; panics if the divisor does not divide self.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd via the Euclidean algorithm. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.lead_coeff() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        // Horner over the sparse exponents, highest first
        let mut acc = Rational::zero();
        let mut prev_exp: Option<u32> = None;
        for (&exp, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev_exp {
                acc *= pow_rational(t, p - exp);
            }
            acc += c;
            prev_exp = Some(exp);
        }
        if let Some(p) = prev_exp {
            acc *= pow_rational(t, p);
        }
        acc
    }
}

fn pow_rational(t: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= t;
    }
    acc
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (e, c) in &self.coeffs {
            e.hash(state);
            c.hash(state);
        }
    }
}

// Ascending-exponent term list: "1 + 2*e - e^2", "-5/3*e", "0".
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&exp, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match exp {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if exp == 1 {
                        f.write_str("e")?;
                    } else {
                        write!(f, "e^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::parse_rational;

    fn c(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn poly(terms: &[(u32, &str)]) -> Poly {
        terms
            .iter()
            .fold(Poly::zero(), |acc, &(e, s)| acc.add(&Poly::monomial(e, c(s))))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = poly(&[(0, "1"), (1, "2")]);
        let b = poly(&[(0, "-1"), (1, "1")]);
        assert_eq!(a.add(&b), poly(&[(1, "3")]));
        assert_eq!(a.mul(&b), poly(&[(0, "-1"), (1, "-1"), (2, "2")]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (1 − e²) = (1 − e)(1 + e)
        let prod = poly(&[(0, "1"), (2, "-1")]);
        let left = poly(&[(0, "1"), (1, "-1")]);
        assert_eq!(prod.div_exact(&left), poly(&[(0, "1"), (1, "1")]));
        let g = prod.gcd(&left);
        // monic gcd: e − 1
        assert_eq!(g, poly(&[(0, "-1"), (1, "1")]));
        assert!(poly(&[]).gcd(&poly(&[])).is_zero());
    }

    #[test]
    fn eval_matches_horner() {
        let p = poly(&[(0, "1"), (2, "3"), (5, "-1/2")]);
        let t = c("1/4");
        let direct = c("1") + c("3") * &t * &t - c("1/2") * &t * &t * &t * &t * &t;
        assert_eq!(p.eval(&t), direct);
    }

    #[test]
    fn display_terms() {
        assert_eq!(poly(&[]).to_string(), "0");
        assert_eq!(poly(&[(0, "1"), (1, "2")]).to_string(), "1 + 2*e");
        assert_eq!(poly(&[(1, "-5/3")]).to_string(), "-5/3*e");
        assert_eq!(poly(&[(2, "1")]).to_string(), "e^2");
        assert_eq!(poly(&[(0, "1"), (2, "-1")]).to_string(), "1 - e^2");
    }
}

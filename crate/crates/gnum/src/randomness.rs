//! Desk-scale Martin-Löf apparatus: exact cylinder measures over n-ary
//! sequence space, finite-level null-cover verification, rationality
//! verdicts, a statistical proxy battery, and the relativity-of-randomness
//! witness.
//!
//! The battery is an explicitly labeled proxy: a passing report means "no
//! test in this battery rejects", never a randomness claim.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bisection::{affine_from_unit, affine_to_unit};
use crate::sequences::{expand, format_rational, DigitString, Rational, SequenceSpec};
use crate::{Error, Result};

/// A finite set of same-base digit strings (one truncation level of a
/// constructively open set). Duplicates are removed on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringSet {
    base: u32,
    strings: BTreeSet<DigitString>,
}

impl StringSet {
    pub fn new(base: u32, strings: impl IntoIterator<Item = DigitString>) -> Result<Self> {
        let strings: BTreeSet<DigitString> = strings.into_iter().collect();
        if let Some(s) = strings.iter().find(|s| s.base() != base) {
            return Err(Error::domain(format!(
                "string {s} has base {}, set has base {base}",
                s.base()
            )));
        }
        Ok(StringSet { base, strings })
    }

    pub fn parse(base: u32, texts: &[&str]) -> Result<Self> {
        let strings = texts
            .iter()
            .map(|t| DigitString::parse(base, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, strings)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn strings(&self) -> impl Iterator<Item = &DigitString> {
        self.strings.iter()
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// The prefix-free antichain with the same cylinder union: drops every
    /// string that has a proper prefix in the set.
    pub fn prune(&self) -> StringSet {
        let strings = self
            .strings
            .iter()
            .filter(|s| {
                !self
                    .strings
                    .iter()
                    .any(|p| p != *s && p.is_prefix_of(s))
            })
            .cloned()
            .collect();
        StringSet { base: self.base, strings }
    }
}

/// μ(XΣ∞) = Σ base^{−|x|} over the pruned antichain, exactly. Always ≤ 1.
pub fn cylinder_measure(xs: &StringSet) -> Rational {
    let base = BigInt::from(xs.base);
    xs.prune()
        .strings
        .iter()
        .map(|s| Rational::new(BigInt::one(), base.pow(s.len() as u32)))
        .sum()
}

/// True iff some string in `xs` is a prefix of the spec's digit stream.
pub fn covers(spec: &SequenceSpec, xs: &StringSet) -> Result<bool> {
    if spec.base() != xs.base {
        return Err(Error::domain("base mismatch between spec and string set"));
    }
    let max_len = xs.strings.iter().map(DigitString::len).max().unwrap_or(0);
    let stream = spec.prefix(max_len);
    Ok(xs.strings.iter().any(|s| s.digits() == &stream.digits()[..s.len()]))
}

/// Finite truncation of a Martin-Löf test: level sets G_k with measure
/// bounds, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullCoverSpec {
    base: u32,
    levels: Vec<StringSet>,
    bounds: Vec<Rational>,
}

impl NullCoverSpec {
    pub fn new(base: u32, levels: Vec<StringSet>, bounds: Vec<Rational>) -> Result<Self> {
        if levels.len() != bounds.len() {
            return Err(Error::domain("levels and bounds must have the same length"));
        }
        if let Some(l) = levels.iter().find(|l| l.base != base) {
            return Err(Error::domain(format!("level has base {}, cover has base {base}", l.base)));
        }
        if bounds.iter().any(|b| !b.is_positive()) {
            return Err(Error::domain("bounds must be strictly positive"));
        }
        if bounds.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::domain("bounds must be non-increasing"));
        }
        Ok(NullCoverSpec { base, levels, bounds })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn levels(&self) -> &[StringSet] {
        &self.levels
    }

    pub fn bounds(&self) -> &[Rational] {
        &self.bounds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    /// Every level satisfies μ(G_k) ≤ bound_k and bound_k ≤ 2^{−k}.
    pub valid: bool,
    pub level_measures: Vec<Rational>,
    /// For each level, whether the target sequence is covered; present only
    /// when a target was supplied.
    pub covered_at: Option<Vec<bool>>,
}

impl CoverReport {
    /// The target is exhibited non-random relative to this test.
    pub fn rejects_target(&self) -> bool {
        self.valid
            && self
                .covered_at
                .as_ref()
                .is_some_and(|c| !c.is_empty() && c.iter().all(|&b| b))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "valid": self.valid,
            "level_measures": self.level_measures.iter().map(format_rational).collect::<Vec<_>>(),
            "covered_at": self.covered_at,
            "rejects_target": self.covered_at.as_ref().map(|_| self.rejects_target()),
        })
    }
}

/// Checks the cover's measure bounds (with the Martin-Löf normalization
/// bound_k ≤ 2^{−k}) and, when given, target coverage per level.
pub fn verify_null_cover(cover: &NullCoverSpec, target: Option<&SequenceSpec>) -> Result<CoverReport> {
    let mut valid = true;
    let mut level_measures = Vec::with_capacity(cover.levels.len());
    let two = BigInt::from(2);
    for (k, (level, bound)) in cover.levels.iter().zip(&cover.bounds).enumerate() {
        let measure = cylinder_measure(level);
        let norm = Rational::new(BigInt::one(), two.pow(k as u32 + 1));
        if measure > *bound || *bound > norm {
            valid = false;
        }
        level_measures.push(measure);
    }
    let covered_at = match target {
        Some(t) => Some(
            cover
                .levels
                .iter()
                .map(|level| covers(t, level))
                .collect::<Result<Vec<bool>>>()?,
        ),
        None => None,
    };
    Ok(CoverReport { valid, level_measures, covered_at })
}

/// Builds the prefix cover {Γ_{x̄(2k)}}_{k=1..depth} of a spec: always a valid
/// Martin-Löf truncation covering the spec itself.
pub fn prefix_cover(spec: &SequenceSpec, depth: usize) -> Result<NullCoverSpec> {
    let levels = (1..=depth)
        .map(|k| StringSet::new(spec.base(), [spec.prefix(2 * k)]))
        .collect::<Result<Vec<_>>>()?;
    let bounds = (1..=depth)
        .map(|k| Rational::new(BigInt::one(), BigInt::from(2).pow(k as u32)))
        .collect();
    NullCoverSpec::new(spec.base(), levels, bounds)
}

/// Verdict of the decidable rationality question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalityVerdict {
    Rational(Rational),
    /// A finite sample determines nothing about the limit value.
    Unknown,
}

/// Every representable infinite sequence is eventually periodic, hence has a
/// rational value.
pub fn rationality_verdict(spec: &SequenceSpec) -> RationalityVerdict {
    RationalityVerdict::Rational(spec.value_exact())
}

pub fn rationality_verdict_sample(_sample: &DigitString) -> RationalityVerdict {
    RationalityVerdict::Unknown
}

/// Significance levels with shipped exact thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    P01,
    P05,
}

impl Alpha {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "0.01" => Ok(Alpha::P01),
            "0.05" => Ok(Alpha::P05),
            other => Err(Error::domain(format!(
                "unsupported alpha {other:?} (shipped thresholds: 0.01, 0.05)"
            ))),
        }
    }

    /// z²_{1−α/2}: squared two-sided normal critical value.
    fn z2_two_sided(self) -> Rational {
        match self {
            Alpha::P01 => Rational::new(6_634_897.into(), 1_000_000.into()),
            Alpha::P05 => Rational::new(3_841_459.into(), 1_000_000.into()),
        }
    }

    /// z²_{1−α}: squared one-sided normal critical value.
    fn z2_one_sided(self) -> Rational {
        match self {
            Alpha::P01 => Rational::new(5_411_894.into(), 1_000_000.into()),
            Alpha::P05 => Rational::new(2_705_543.into(), 1_000_000.into()),
        }
    }

    /// Chi-square critical value for the given degrees of freedom.
    fn chi2(self, df: usize) -> Rational {
        let micro = match (self, df) {
            (Alpha::P01, 3) => 11_344_867i64,
            (Alpha::P05, 3) => 7_814_728,
            (Alpha::P01, 5) => 15_086_272,
            (Alpha::P05, 5) => 11_070_498,
            _ => unreachable!("no shipped chi-square threshold for df {df}"),
        };
        Rational::new(micro.into(), 1_000_000.into())
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alpha::P01 => "0.01",
            Alpha::P05 => "0.05",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub alpha: Alpha,
    pub block_sizes: Vec<usize>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { alpha: Alpha::P01, block_sizes: vec![8, 16] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestRecord {
    pub name: String,
    /// Exact rational statistic, as "p/q" text.
    pub statistic: String,
    /// Exact rational rejection threshold the statistic is compared against.
    pub threshold: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomnessReport {
    pub alpha: String,
    pub sample_len: usize,
    pub tests: Vec<TestRecord>,
    /// True iff no test in this battery rejects. Not a randomness claim.
    pub all_pass: bool,
    pub note: String,
}

/// Runs the proxy battery on a binary sample: monobit, block frequency per
/// configured block size, runs, longest run of ones, and lag-1 serial
/// autocorrelation. All statistics and thresholds are exact rationals;
/// identical input and config produce identical reports.
pub fn battery(sample: &DigitString, config: &BatteryConfig) -> Result<RandomnessReport> {
    if sample.base() != 2 {
        return Err(Error::domain("battery samples must be base 2"));
    }
    let n = sample.len();
    if n < 128 {
        return Err(Error::domain(format!("sample too short: {n} < 128 bits")));
    }
    let bits = sample.digits();
    let alpha = config.alpha;
    let mut tests = Vec::new();

    tests.push(monobit(bits, alpha));
    for &m in &config.block_sizes {
        tests.push(block_frequency(bits, m, alpha)?);
    }
    tests.push(runs_test(bits, alpha));
    tests.push(longest_run(bits, alpha));
    tests.push(serial_autocorrelation(bits, alpha));

    let all_pass = tests.iter().all(|t| t.pass);
    Ok(RandomnessReport {
        alpha: alpha.to_string(),
        sample_len: n,
        tests,
        all_pass,
        note: "statistical proxy battery; a pass means no test in this battery rejects".into(),
    })
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn record(name: impl Into<String>, statistic: Rational, threshold: Rational) -> TestRecord {
    let pass = statistic <= threshold;
    TestRecord {
        name: name.into(),
        statistic: format_rational(&statistic),
        threshold: format_rational(&threshold),
        pass,
    }
}

/// S²/n vs z², where S = #ones − #zeros.
fn monobit(bits: &[u8], alpha: Alpha) -> TestRecord {
    let n = bits.len() as i64;
    let ones = bits.iter().filter(|&&b| b == 1).count() as i64;
    let s = BigInt::from(2 * ones - n);
    let statistic = ratio(&s * &s, n.into());
    record("monobit", statistic, alpha.z2_two_sided())
}

/// NIST block-frequency statistic 4M Σ(πᵢ − 1/2)², compared against its
/// chi-square(N) mean via the one-sided normal approximation.
fn block_frequency(bits: &[u8], m: usize, alpha: Alpha) -> Result<TestRecord> {
    if m < 2 {
        return Err(Error::domain("block size must be at least 2"));
    }
    let n_blocks = bits.len() / m;
    if n_blocks == 0 {
        return Err(Error::domain(format!("block size {m} exceeds sample length")));
    }
    // X = (4/M) Σ (onesᵢ − M/2)²
    let mut acc = BigInt::zero();
    for block in bits.chunks_exact(m) {
        let ones = block.iter().filter(|&&b| b == 1).count() as i64;
        let dev = BigInt::from(2 * ones as i128 - m as i128); // 2·(ones − M/2)
        acc += &dev * &dev;
    }
    let x = ratio(acc, BigInt::from(m)); // (4/M)Σ(...)² with dev doubled
    let n_big = Rational::from_integer(BigInt::from(n_blocks));
    // reject iff X > N and (X − N)² > z²·2N
    let excess = &x - &n_big;
    let statistic = if excess.is_positive() {
        (&excess * &excess) / (Rational::from_integer(2.into()) * &n_big)
    } else {
        Rational::zero()
    };
    Ok(record(format!("block_frequency_m{m}"), statistic, alpha.z2_one_sided()))
}

/// Run-count statistic (V − 2nπ(1−π))² vs 4z²n·π²(1−π)², with the NIST
/// applicability prerequisite |π − 1/2| < 2/√n folded in as a rejection.
fn runs_test(bits: &[u8], alpha: Alpha) -> TestRecord {
    let n = bits.len();
    let ones = bits.iter().filter(|&&b| b == 1).count();
    let pi = ratio(ones.into(), n.into());
    let half = Rational::new(1.into(), 2.into());
    let dev = &pi - &half;
    let prereq_bound = ratio(4.into(), n.into()); // (π − 1/2)² < 4/n
    if &dev * &dev >= prereq_bound {
        // too biased for the run count to mean anything: reject outright
        return TestRecord {
            name: "runs".into(),
            statistic: format_rational(&(&dev * &dev)),
            threshold: format_rational(&prereq_bound),
            pass: false,
        };
    }
    let runs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let n_q = Rational::from_integer(BigInt::from(n));
    let one_minus = Rational::one() - &pi;
    let mean = Rational::from_integer(2.into()) * &n_q * &pi * &one_minus;
    let diff = Rational::from_integer(BigInt::from(runs)) - mean;
    let statistic = &diff * &diff;
    let threshold =
        Rational::from_integer(4.into()) * alpha.z2_two_sided() * &n_q * (&pi * &pi) * (&one_minus * &one_minus);
    record("runs", statistic, threshold)
}

/// NIST longest-run-of-ones chi-square over fixed block categories.
fn longest_run(bits: &[u8], alpha: Alpha) -> TestRecord {
    let n = bits.len();
    // (block size, category cut points "longest ≤ first / ≥ last", class
    // probabilities ×10⁻⁴)
    let (m, lo_cat, hi_cat, pi_e4): (usize, usize, usize, &[i64]) = if n >= 6272 {
        (128, 4, 9, &[1174, 2430, 2493, 1752, 1027, 1124])
    } else {
        (8, 1, 4, &[2148, 3672, 2305, 1875])
    };
    let n_blocks = n / m;
    let mut counts = vec![0usize; hi_cat - lo_cat + 1];
    for block in bits.chunks_exact(m) {
        let mut longest = 0usize;
        let mut current = 0usize;
        for &b in block {
            if b == 1 {
                current += 1;
                longest = longest.max(current);
            } else {
                current = 0;
            }
        }
        let idx = longest.clamp(lo_cat, hi_cat) - lo_cat;
        counts[idx] += 1;
    }
    let mut chi2 = Rational::zero();
    for (count, &pe4) in counts.iter().zip(pi_e4) {
        let expected = ratio((n_blocks as i64 * pe4).into(), 10_000.into());
        let diff = Rational::from_integer(BigInt::from(*count)) - &expected;
        chi2 += &diff * &diff / expected;
    }
    record(format!("longest_run_m{m}"), chi2, alpha.chi2(pi_e4.len() - 1))
}

/// Lag-1 agreement count C among n−1 adjacent pairs: (2C − (n−1))² vs z²(n−1).
fn serial_autocorrelation(bits: &[u8], alpha: Alpha) -> TestRecord {
    let m = bits.len() - 1;
    let agreements = bits.windows(2).filter(|w| w[0] == w[1]).count() as i64;
    let d = BigInt::from(2 * agreements - m as i64);
    let statistic = ratio(&d * &d, (m as i64).into());
    record("serial_autocorrelation", statistic, alpha.z2_two_sided())
}

/// The relativity-of-randomness witness: the point of [a2, b2] encoded by
/// `spec` relative to [a2, b2], re-encoded relative to the outer [a1, b1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeWitness {
    pub w: Rational,
    pub expansion_in_outer: SequenceSpec,
    pub expansions_differ: bool,
}

impl RelativeWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "w": format_rational(&self.w),
            "expansion_in_outer": self.expansion_in_outer,
            "expansions_differ": self.expansions_differ,
        })
    }
}

pub fn relative_random_witness(
    a1: &Rational,
    b1: &Rational,
    a2: &Rational,
    b2: &Rational,
    spec: &SequenceSpec,
) -> Result<RelativeWitness> {
    if spec.base() != 2 {
        return Err(Error::domain("sequence spec must be base 2"));
    }
    if a1 >= b1 || a2 >= b2 {
        return Err(Error::domain("interval endpoints must satisfy lo < hi"));
    }
    let strict_subset = a1 <= a2 && b2 <= b1 && (a1 < a2 || b2 < b1);
    if !strict_subset {
        return Err(Error::domain("[a2, b2] must be a strict subset of [a1, b1]"));
    }
    let v = spec.value_exact();
    let w = affine_from_unit(&v, a2, b2)?;
    let outer_value = affine_to_unit(&w, a1, b1)?;
    let expansion_in_outer = expand(&outer_value, 2)?;
    let expansions_differ = outer_value != v;
    Ok(RelativeWitness { w, expansion_in_outer, expansions_differ })
}

// JSON forms: StringSet as ["0","11"], NullCoverSpec as
// {"base":2, "levels":[["0"],["00"]], "bounds":["1/2","1/4"]}.
impl Serialize for StringSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.strings.iter().map(|s| s.to_string()))
    }
}

impl Serialize for NullCoverSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("NullCoverSpec", 3)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("levels", &self.levels)?;
        st.serialize_field(
            "bounds",
            &self.bounds.iter().map(format_rational).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for NullCoverSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            base: u32,
            levels: Vec<Vec<String>>,
            bounds: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let levels = raw
            .levels
            .iter()
            .map(|texts| {
                let strings = texts
                    .iter()
                    .map(|t| DigitString::parse(raw.base, t))
                    .collect::<Result<Vec<_>>>()?;
                StringSet::new(raw.base, strings)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let bounds = raw
            .bounds
            .iter()
            .map(|t| crate::sequences::parse_rational(t))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        NullCoverSpec::new(raw.base, levels, bounds).map_err(D::Error::custom)
    }
}

//! Truncated Hilbert series of the dimension grading over canonical magnetic
//! charges, with classical dressing factors, plus two exact comparison
//! oracles: rational-function expansion and cyclic invariant-monomial counts.
//!
//! All series are graded by the doubled dimension (the same convention as the
//! `two_delta` evaluator), so a stabilizer Casimir of degree `d` contributes
//! a factor `1/(1 - t^{2d})`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_theory_with, Certificate, Verdict};
use crate::error::{Error, Result};
use crate::monopole::{scan_canonical_shell, ChargeModel, Coweight};
use crate::quiver::{GaugeTheory, GroupConvention};
use crate::Limits;

/// A power series truncated at a fixed degree, with exact integer
/// coefficients indexed `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub cutoff: u32,
    pub coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: u32) -> Self {
        TruncatedSeries { cutoff, coeffs: vec![0; cutoff as usize + 1] }
    }

    pub fn one(cutoff: u32) -> Self {
        let mut s = TruncatedSeries::zero(cutoff);
        s.coeffs[0] = 1;
        s
    }

    pub fn coeff(&self, degree: u32) -> i64 {
        self.coeffs.get(degree as usize).copied().unwrap_or(0)
    }

    /// Multiply in place by `1/(1 - t^d)` (cumulative sums with stride `d`).
    pub fn div_one_minus(&mut self, d: u32) -> Result<()> {
        if d == 0 {
            return Err(Error::invariant("series-degree", "denominator degree must be >= 1"));
        }
        let d = d as usize;
        for i in d..self.coeffs.len() {
            self.coeffs[i] += self.coeffs[i - d];
        }
        Ok(())
    }

    /// Multiply in place by `1 + t^d` or `1 - t^d`.
    pub fn mul_one_pm(&mut self, sign: Sign, d: u32) -> Result<()> {
        if d == 0 {
            return Err(Error::invariant("series-degree", "factor degree must be >= 1"));
        }
        let d = d as usize;
        for i in (d..self.coeffs.len()).rev() {
            match sign {
                Sign::Plus => self.coeffs[i] += self.coeffs[i - d],
                Sign::Minus => self.coeffs[i] -= self.coeffs[i - d],
            }
        }
        Ok(())
    }

    /// Add `t^shift · other`, discarding terms beyond the cutoff.
    pub fn add_shifted(&mut self, other: &TruncatedSeries, shift: u32) {
        let shift = shift as usize;
        for (j, &c) in other.coeffs.iter().enumerate() {
            let i = shift + j;
            if i >= self.coeffs.len() {
                break;
            }
            self.coeffs[i] += c;
        }
    }
}

/// Sign of a binomial factor `1 ± t^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// A rational function `∏(1 ± t^d) / ∏(1 - t^d)` given by its factor lists;
/// the exact oracle format for series comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeriesSpec {
    pub numerator: Vec<(Sign, u32)>,
    pub denominator: Vec<u32>,
}

impl RationalSeriesSpec {
    /// Parse human-readable input such as `(1+t^3)/((1-t^2)(1-t^3))`,
    /// `1/(1-t)^2`, or `(1-t^4)/((1-t^2)(1-t^2))`. Whitespace is ignored,
    /// `t` abbreviates `t^1`, a parenthesized group may carry a power, and
    /// denominator factors must have sign `-`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Malformed("empty series expression".to_string()));
        }
        let bytes = s.as_bytes();
        let mut depth = 0usize;
        let mut slash = None;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Malformed(format!("unbalanced `)` in `{s}`")))?;
                }
                b'/' if depth == 0 => {
                    if slash.replace(i).is_some() {
                        return Err(Error::Malformed(format!(
                            "more than one top-level `/` in `{s}`"
                        )));
                    }
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Malformed(format!("unbalanced `(` in `{s}`")));
        }
        let (num_str, den_str) = match slash {
            Some(i) => (&s[..i], Some(&s[i + 1..])),
            None => (&s[..], None),
        };
        let numerator = parse_factor_list(num_str)?;
        let mut denominator = Vec::new();
        if let Some(den_str) = den_str {
            for (sign, d) in parse_factor_list(den_str)? {
                if sign != Sign::Minus {
                    return Err(Error::Malformed(format!(
                        "denominator factors must look like (1-t^d), got a `+` in `{den_str}`"
                    )));
                }
                denominator.push(d);
            }
        }
        Ok(RationalSeriesSpec { numerator, denominator })
    }
}

impl fmt::Display for RationalSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(f: &mut fmt::Formatter<'_>, d: u32) -> fmt::Result {
            if d == 1 {
                write!(f, "t")
            } else {
                write!(f, "t^{d}")
            }
        }
        if self.numerator.is_empty() {
            write!(f, "1")?;
        } else {
            for &(sign, d) in &self.numerator {
                write!(f, "(1{}", if sign == Sign::Plus { '+' } else { '-' })?;
                power(f, d)?;
                write!(f, ")")?;
            }
        }
        if self.denominator.is_empty() {
            return Ok(());
        }
        write!(f, "/")?;
        if self.denominator.len() > 1 {
            write!(f, "(")?;
        }
        for &d in &self.denominator {
            write!(f, "(1-")?;
            power(f, d)?;
            write!(f, ")")?;
        }
        if self.denominator.len() > 1 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parse a whitespace-free product of factors: `1`, atoms `(1±t^d)`,
/// parenthesized groups, each optionally raised to a nonnegative power.
fn parse_factor_list(s: &str) -> Result<Vec<(Sign, u32)>> {
    if s == "1" {
        return Ok(Vec::new());
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::Malformed(format!(
                "expected `(` at position {i} of `{s}`"
            )));
        }
        let mut depth = 1usize;
        let mut close = None;
        for (j, &b) in bytes.iter().enumerate().skip(i + 1) {
            match b {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(j);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| Error::Malformed(format!("unbalanced `(` in `{s}`")))?;
        let inner = &s[i + 1..close];
        i = close + 1;
        let mut count = 1u32;
        if i < bytes.len() && bytes[i] == b'^' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(Error::Malformed(format!("`^` without digits in `{s}`")));
            }
            count = s[start..end]
                .parse()
                .map_err(|_| Error::Malformed(format!("power out of range in `{s}`")))?;
            i = end;
        }
        let factors = match parse_atom(inner) {
            Some(atom) => vec![atom],
            None => parse_factor_list(inner)?,
        };
        for _ in 0..count {
            out.extend(factors.iter().copied());
        }
    }
    Ok(out)
}

/// `1+t`, `1-t^4`, ... with degree ≥ 1; anything else is not an atom.
fn parse_atom(s: &str) -> Option<(Sign, u32)> {
    let rest = s.strip_prefix('1')?;
    let (sign, rest) = if let Some(r) = rest.strip_prefix('+') {
        (Sign::Plus, r)
    } else if let Some(r) = rest.strip_prefix('-') {
        (Sign::Minus, r)
    } else {
        return None;
    };
    let rest = rest.strip_prefix('t')?;
    if rest.is_empty() {
        return Some((sign, 1));
    }
    let digits = rest.strip_prefix('^')?;
    let d: u32 = digits.parse().ok()?;
    if d == 0 {
        return None;
    }
    Some((sign, d))
}

/// Exact expansion of a rational spec as a truncated series.
pub fn expand_rational(spec: &RationalSeriesSpec, cutoff: u32) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::one(cutoff);
    for &(sign, d) in &spec.numerator {
        s.mul_one_pm(sign, d)?;
    }
    for &d in &spec.denominator {
        s.div_one_minus(d)?;
    }
    Ok(s)
}

/// Casimir degrees of the stabilizer of a canonical charge: per vertex, a run
/// of `m` equal entries contributes degrees `1..=m`; the central quotient
/// removes one degree-1 factor; the rank-one non-abelian family has degree 2
/// at zero and 1 elsewhere.
fn stabilizer_degrees(theory: &GaugeTheory, cw: &Coweight) -> Result<Vec<u32>> {
    match theory {
        GaugeTheory::Sl2Flavor { .. } => {
            let entry = cw.0.first().and_then(|b| b.first()).copied();
            match entry {
                Some(0) => Ok(vec![2]),
                Some(_) => Ok(vec![1]),
                None => Err(Error::invariant("coweight-shape", "expected one block of size 1")),
            }
        }
        GaugeTheory::U1Flavor { .. } => Ok(vec![1]),
        GaugeTheory::Quiver { v, group, .. } => {
            if cw.0.len() != v.len() || cw.0.iter().zip(&v.0).any(|(b, &d)| b.len() != d as usize) {
                return Err(Error::invariant(
                    "coweight-shape",
                    format!("expected blocks of sizes {:?}", v.0),
                ));
            }
            let mut degrees = Vec::new();
            for block in &cw.0 {
                let mut sorted = block.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let mut run = 0u32;
                for (i, &x) in sorted.iter().enumerate() {
                    run += 1;
                    let end_of_run = i + 1 == sorted.len() || sorted[i + 1] != x;
                    if end_of_run {
                        degrees.extend(1..=run);
                        run = 0;
                    }
                }
            }
            if *group == GroupConvention::ProdGlModCenter {
                let at = degrees
                    .iter()
                    .position(|&d| d == 1)
                    .ok_or_else(|| Error::invariant("v-nonzero", "no degree-1 factor to remove"))?;
                degrees.remove(at);
            }
            degrees.sort_unstable();
            Ok(degrees)
        }
    }
}

/// Classical dressing factor of a canonical charge: the product over the
/// stabilizer's Casimir degrees `d` of `1/(1 - t^{2d})`, truncated.
pub fn dressing_factor(theory: &GaugeTheory, cw: &Coweight, cutoff: u32) -> Result<TruncatedSeries> {
    let degrees = stabilizer_degrees(theory, cw)?;
    expand_degrees(&degrees, cutoff)
}

fn expand_degrees(degrees: &[u32], cutoff: u32) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::one(cutoff);
    for &d in degrees {
        s.div_one_minus(2 * d)?;
    }
    Ok(s)
}

/// A computed monopole series together with how far the charge scan went and
/// whether that range was certified by the classifier.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub series: TruncatedSeries,
    /// Classifier verdict when the scan radius came from a certificate.
    pub verdict: Option<Verdict>,
    /// Max-norm up to which charges were enumerated.
    pub scan_radius: i64,
    /// True when the radius provably covers every degree up to the cutoff.
    pub certified: bool,
}

/// Monopole Hilbert series up to `cutoff`, with the charge scan bounded by
/// the classifier's certificate.
pub fn monopole_series(theory: &GaugeTheory, cutoff: u32) -> Result<TruncatedSeries> {
    Ok(monopole_series_with(theory, cutoff, &Limits::default())?.series)
}

pub fn monopole_series_with(
    theory: &GaugeTheory,
    cutoff: u32,
    limits: &Limits,
) -> Result<SeriesReport> {
    let classification = classify_theory_with(theory, limits)?;
    if classification.verdict == Verdict::Bad {
        return Err(Error::unsupported(
            "monopole_series",
            format!(
                "the grading reaches {} on a nonzero charge, so coefficients diverge",
                classification.min_value.unwrap_or(0)
            ),
        ));
    }
    let radius = match classification.certificate {
        Certificate::TrivialLattice => 0,
        Certificate::ConeBound { kappa, ray_radius, .. } => {
            // 2Δ(λ) ≥ kappa·‖λ‖∞/ray_radius, so degrees ≤ cutoff need only
            // ‖λ‖∞ ≤ cutoff·ray_radius/kappa.
            (cutoff as i64).saturating_mul(ray_radius) / kappa.max(1)
        }
        Certificate::BadRay { .. } => {
            return Err(Error::invariant(
                "verdict-certificate",
                "good/ugly verdict with a bad-ray certificate".to_string(),
            ))
        }
    };
    let series = accumulate(theory, cutoff, radius, limits)?;
    Ok(SeriesReport {
        series,
        verdict: Some(classification.verdict),
        scan_radius: radius,
        certified: true,
    })
}

/// Monopole series from a caller-supplied scan radius, for charge lattices too
/// large for the chamber certificate. The result is not certified complete:
/// charges beyond the radius may contribute below the cutoff.
pub fn monopole_series_uncertified(
    theory: &GaugeTheory,
    cutoff: u32,
    radius: i64,
    limits: &Limits,
) -> Result<SeriesReport> {
    if radius < 0 {
        return Err(Error::invariant("scan-radius", "radius must be nonnegative"));
    }
    let series = accumulate(theory, cutoff, radius, limits)?;
    Ok(SeriesReport { series, verdict: None, scan_radius: radius, certified: false })
}

fn accumulate(
    theory: &GaugeTheory,
    cutoff: u32,
    radius: i64,
    limits: &Limits,
) -> Result<TruncatedSeries> {
    let model = ChargeModel::new(theory)?;
    let zero = Coweight(model.dims.iter().map(|&d| vec![0i64; d]).collect());
    let mut out = dressing_factor(theory, &zero, cutoff)?;
    let mut cache: HashMap<Vec<u32>, TruncatedSeries> = HashMap::new();
    let mut budget = limits.scan_budget;
    for shell in 1..=radius {
        scan_canonical_shell(&model, shell, &mut budget, &mut |p| {
            let flat = model.unreduce(p);
            let value = model.two_delta_flat(&flat)?;
            if value <= 0 {
                return Err(Error::unsupported(
                    "monopole_series",
                    format!("nonpositive grading {value} at a nonzero charge (bad theory)"),
                ));
            }
            if value <= cutoff as i64 {
                let cw = model.unflatten(&flat);
                let degrees = stabilizer_degrees(theory, &cw)?;
                if !cache.contains_key(&degrees) {
                    let expanded = expand_degrees(&degrees, cutoff)?;
                    cache.insert(degrees.clone(), expanded);
                }
                out.add_shifted(&cache[&degrees], value as u32);
            }
            Ok(false)
        })?;
    }
    Ok(out)
}

/// Coefficient at degree `d` = number of monomials `x^a y^b` with `a+b = d`
/// fixed by the cyclic group of the given order acting with the given
/// weights: `a·w₁ + b·w₂ ≡ 0 (mod order)`. Exact integer counting.
pub fn molien_cyclic(order: u32, weights: (i64, i64), cutoff: u32) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::invariant("molien-order", "group order must be >= 1"));
    }
    let n = order as i64;
    let mut s = TruncatedSeries::zero(cutoff);
    for d in 0..=cutoff {
        let mut count = 0i64;
        for a in 0..=d {
            let b = d - a;
            if (a as i64 * weights.0 + b as i64 * weights.1).rem_euclid(n) == 0 {
                count += 1;
            }
        }
        s.coeffs[d as usize] = count;
    }
    Ok(s)
}

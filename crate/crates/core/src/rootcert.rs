//! Exact real-rootedness and interlacing certificates.
//!
//! Everything here runs over the rationals: squarefree decomposition by
//! Yun's algorithm, Sturm chains for counting distinct real roots in
//! half-open intervals `(a, b]`, and bisection for isolating intervals.
//! Rational roots are detected exactly and reported as point intervals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{self, Polynomial, Rational, SymmetricDecomposition};
use crate::transform::{self, TransformError};
use crate::triangles::{derive, triangle_barycentric, FTriangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&poly::rational_to_string(r))
}

/// Either the exact point `lo = hi`, or the open interval `(lo, hi)`
/// containing exactly one distinct root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    RealRooted,
    NotRealRooted,
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub verdict: Verdict,
    pub degree: Option<usize>,
    /// Ascending; multiplicities sum to the degree when real-rooted.
    pub isolating_intervals: Vec<RootInterval>,
    /// Squarefree factor with fewer real roots than its degree.
    pub witness: Option<Polynomial>,
}

impl RootCertificate {
    /// The zero polynomial counts as real-rooted.
    pub fn is_real_rooted(&self) -> bool {
        self.verdict != Verdict::NotRealRooted
    }
}

/// Yun's algorithm: `p = c * prod_i f_i^i` with `f_i` squarefree and pairwise
/// coprime; returns the nonconstant `(f_i, i)`.
pub fn squarefree_factors(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if p.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let dp = p.derivative();
    let mut a = Polynomial::gcd(p, &dp);
    let mut b = p.exact_div(&a);
    let mut c = dp.exact_div(&a);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().is_some_and(|deg| deg > 0) {
        a = Polynomial::gcd(&b, &d);
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a.primitive_part(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// `p / gcd(p, p')`, as a primitive integer polynomial.
pub fn squarefree_part(p: &Polynomial) -> Polynomial {
    if p.degree().is_none_or(|d| d == 0) {
        return p.primitive_part();
    }
    p.exact_div(&Polynomial::gcd(p, &p.derivative()))
        .primitive_part()
}

/// Sturm chain `p, p', -rem, ...` over the integers: each member is a
/// positive multiple of the classical one, reduced to its primitive part.
/// For non-squarefree `p` the chain ends in a multiple of `gcd(p, p')` and
/// still counts distinct roots.
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

#[cfg(test)]
fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_int(r: &BigInt) -> i8 {
    match r.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v
        .iter()
        .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
}

/// A positive multiple of `a mod b`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let (scale, flip) = (lb.abs(), lb.is_negative());
    while r.len() > db && !r.is_empty() {
        let c = r.last().cloned().expect("nonempty");
        let c = if flip { -c } else { c };
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= &scale;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        trim(&mut r);
        make_primitive(&mut r);
    }
    r
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.primitive_integer_coeffs());
        let mut dp = p.derivative().primitive_integer_coeffs();
        trim(&mut dp);
        if !dp.is_empty() {
            chain.push(dp);
            loop {
                let len = chain.len();
                let mut rem = pseudo_remainder(&chain[len - 2], &chain[len - 1]);
                if rem.is_empty() {
                    break;
                }
                for c in rem.iter_mut() {
                    *c = -&*c;
                }
                chain.push(rem);
            }
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Degree of the last member, i.e. of `gcd(p, p')`.
    pub fn gcd_degree(&self) -> usize {
        self.chain.last().map_or(0, |c| c.len() - 1)
    }

    fn variations_at(&self, x: &Rational) -> usize {
        let (num, den) = (x.numer(), x.denom());
        variations(self.chain.iter().map(|c| {
            // sign of den^deg * p(num/den), with den > 0
            let mut acc = BigInt::zero();
            let mut den_pow = BigInt::one();
            for coeff in c.iter().rev() {
                acc = acc * num + coeff * &den_pow;
                den_pow *= den;
            }
            sign_int(&acc)
        }))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|c| {
            let lc = sign_int(c.last().expect("chain members are nonzero"));
            let odd = (c.len() - 1) % 2 == 1;
            if positive || !odd {
                lc
            } else {
                -lc
            }
        }))
    }

    /// Distinct real roots overall.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Verdict only, from a single Sturm chain: all distinct roots are real.
pub fn real_rooted(p: &Polynomial) -> bool {
    match p.degree() {
        None | Some(0) => true,
        Some(d) => {
            let chain = SturmChain::new(p);
            chain.count_all() == d - chain.gcd_degree()
        }
    }
}

/// `1 + max |c_i / c_deg|`, rounded up to an integer; all roots lie strictly inside.
pub fn cauchy_bound(p: &Polynomial) -> Rational {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m });
    (max + Rational::one()).ceil()
}

fn isolate_in(
    chain: &SturmChain,
    a: Rational,
    b: Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational)>,
) {
    match count {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            let left = chain.count_in(&a, &mid);
            isolate_in(chain, a, mid.clone(), left, out);
            isolate_in(chain, mid, b, count - left, out);
        }
    }
}

/// Shrinks `(a, b]` (one root of `sqf`) until it is shorter than `width`, or
/// the root is hit exactly.
fn shrink(
    sqf: &Polynomial,
    chain: &SturmChain,
    mut a: Rational,
    mut b: Rational,
    width: &Rational,
) -> (Rational, Rational) {
    if sqf.eval(&b).is_zero() {
        return (b.clone(), b);
    }
    let two = Rational::from_integer(2.into());
    while &(&b - &a) >= width {
        let mid = (&a + &b) / &two;
        if sqf.eval(&mid).is_zero() {
            return (mid.clone(), mid);
        }
        if chain.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    (a, b)
}

/// Isolating intervals for the distinct real roots of a squarefree polynomial,
/// ascending, with rational roots snapped to exact points.
fn isolate_squarefree(sqf: &Polynomial) -> Vec<(Rational, Rational)> {
    if sqf.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let chain = SturmChain::new(sqf);
    let bound = cauchy_bound(sqf);
    let total = chain.count_all();
    let mut raw = Vec::new();
    isolate_in(&chain, -bound.clone(), bound, total, &mut raw);

    // A rational root of a primitive integer polynomial is a multiple of 1/lc.
    let lc = sqf
        .primitive_integer_coeffs()
        .last()
        .cloned()
        .expect("nonzero")
        .abs();
    let grid = Rational::new(BigInt::one(), lc.clone());
    raw.into_iter()
        .map(|(a, b)| {
            let (a, b) = shrink(sqf, &chain, a, b, &grid);
            if a == b {
                return (a, b);
            }
            let candidate = Rational::new(
                (&b * Rational::from_integer(lc.clone()))
                    .floor()
                    .to_integer(),
                lc.clone(),
            );
            if candidate > a && sqf.eval(&candidate).is_zero() {
                (candidate.clone(), candidate)
            } else {
                (a, b)
            }
        })
        .collect()
}

fn multiplicity_at(
    factors: &[(Polynomial, usize)],
    chains: &[SturmChain],
    lo: &Rational,
    hi: &Rational,
) -> usize {
    for ((f, mult), chain) in factors.iter().zip(chains) {
        let hit = if lo == hi {
            f.eval(lo).is_zero()
        } else {
            chain.count_in(lo, hi) == 1
        };
        if hit {
            return *mult;
        }
    }
    0
}

/// Isolating intervals for every distinct real root of `p`, with multiplicities.
pub fn isolate_roots(p: &Polynomial) -> Result<Vec<RootInterval>, CertError> {
    if p.is_zero() {
        return Err(CertError::ZeroPolynomial);
    }
    let factors = squarefree_factors(p);
    let chains: Vec<SturmChain> = factors.iter().map(|(f, _)| SturmChain::new(f)).collect();
    let sqf = squarefree_part(p);
    Ok(isolate_squarefree(&sqf)
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = multiplicity_at(&factors, &chains, &lo, &hi);
            RootInterval {
                lo,
                hi,
                multiplicity,
            }
        })
        .collect())
}

/// Narrows an interval produced by [`isolate_roots`] for `p` below `width`.
pub fn refine_interval(p: &Polynomial, interval: &RootInterval, width: &Rational) -> RootInterval {
    if interval.is_exact() {
        return interval.clone();
    }
    let sqf = squarefree_part(p);
    let chain = SturmChain::new(&sqf);
    let (lo, hi) = shrink(
        &sqf,
        &chain,
        interval.lo.clone(),
        interval.hi.clone(),
        width,
    );
    RootInterval {
        lo,
        hi,
        multiplicity: interval.multiplicity,
    }
}

pub fn is_real_rooted(p: &Polynomial) -> RootCertificate {
    if p.is_zero() {
        return RootCertificate {
            verdict: Verdict::ZeroPolynomial,
            degree: None,
            isolating_intervals: Vec::new(),
            witness: None,
        };
    }
    if !real_rooted(p) {
        let factors = squarefree_factors(p);
        let (f, _) = factors
            .iter()
            .find(|(f, _)| SturmChain::new(f).count_all() < f.degree().unwrap_or(0))
            .expect("some factor has a nonreal root");
        return RootCertificate {
            verdict: Verdict::NotRealRooted,
            degree: p.degree(),
            isolating_intervals: Vec::new(),
            witness: Some(f.clone()),
        };
    }
    let intervals = isolate_roots(p).expect("nonzero");
    debug_assert_eq!(
        intervals.iter().map(|i| i.multiplicity).sum::<usize>(),
        p.degree().unwrap_or(0)
    );
    RootCertificate {
        verdict: Verdict::RealRooted,
        degree: p.degree(),
        isolating_intervals: intervals,
        witness: None,
    }
}

/// One distinct root of `f * g`, with its multiplicity in each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignedRoot {
    pub root: RootInterval,
    pub in_first: usize,
    pub in_second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterlacingVerdict {
    pub result: bool,
    pub reason: String,
    /// Distinct roots of both inputs, ascending.
    pub alignment: Vec<AlignedRoot>,
}

impl InterlacingVerdict {
    fn plain(result: bool, reason: impl Into<String>) -> Self {
        InterlacingVerdict {
            result,
            reason: reason.into(),
            alignment: Vec::new(),
        }
    }
}

/// Whether `f` interlaces `g`: with roots `a_1 >= a_2 >= ...` of `f` and
/// `b_1 >= b_2 >= ...` of `g`, `... <= a_2 <= b_2 <= a_1 <= b_1`. The zero
/// polynomial interlaces and is interlaced by everything.
pub fn interlaces(f: &Polynomial, g: &Polynomial) -> InterlacingVerdict {
    if f.is_zero() || g.is_zero() {
        return InterlacingVerdict::plain(true, "zero polynomial");
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    if dg != df && dg != df + 1 {
        return InterlacingVerdict::plain(false, format!("degrees {df} and {dg} cannot interlace"));
    }
    if df == 0 {
        return InterlacingVerdict::plain(true, "constant against degree <= 1");
    }
    if !real_rooted(f) {
        return InterlacingVerdict::plain(false, "first polynomial is not real-rooted");
    }
    if !real_rooted(g) {
        return InterlacingVerdict::plain(false, "second polynomial is not real-rooted");
    }

    let merged = isolate_roots(&(f * g)).expect("nonzero product");
    let (ff, fg) = (squarefree_factors(f), squarefree_factors(g));
    let cf: Vec<SturmChain> = ff.iter().map(|(p, _)| SturmChain::new(p)).collect();
    let cg: Vec<SturmChain> = fg.iter().map(|(p, _)| SturmChain::new(p)).collect();
    let alignment: Vec<AlignedRoot> = merged
        .into_iter()
        .map(|root| AlignedRoot {
            in_first: multiplicity_at(&ff, &cf, &root.lo, &root.hi),
            in_second: multiplicity_at(&fg, &cg, &root.lo, &root.hi),
            root,
        })
        .collect();

    // Root lists, descending, as positions in the ascending alignment.
    let expand = |pick: fn(&AlignedRoot) -> usize| -> Vec<usize> {
        let mut out = Vec::new();
        for (idx, r) in alignment.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(idx, pick(r)));
        }
        out
    };
    let alpha = expand(|r| r.in_first);
    let beta = expand(|r| r.in_second);
    debug_assert_eq!(alpha.len(), df);
    debug_assert_eq!(beta.len(), dg);
    for (i, &a) in alpha.iter().enumerate() {
        if a > beta[i] {
            return InterlacingVerdict {
                result: false,
                reason: format!(
                    "root {} of the first exceeds root {} of the second",
                    i + 1,
                    i + 1
                ),
                alignment,
            };
        }
        if let Some(&b_next) = beta.get(i + 1) {
            if a < b_next {
                return InterlacingVerdict {
                    result: false,
                    reason: format!(
                        "root {} of the first lies below root {} of the second",
                        i + 1,
                        i + 2
                    ),
                    alignment,
                };
            }
        }
    }
    InterlacingVerdict {
        result: true,
        reason: "roots alternate".into(),
        alignment,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceVerdict {
    pub interlacing: bool,
    pub pairs_checked: usize,
    /// `(i, j)` with `g_i` failing to interlace `g_j`.
    pub failures: Vec<(usize, usize)>,
}

/// Checks `g_i` interlaces `g_j` for `i < j`. With `all_pairs = false` only
/// consecutive pairs and `(0, last)` are checked.
pub fn interlacing_sequence(polys: &[Polynomial], all_pairs: bool) -> SequenceVerdict {
    let m = polys.len();
    let pairs: Vec<(usize, usize)> = if all_pairs {
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect()
    } else {
        let mut v: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        if m > 2 {
            v.push((0, m - 1));
        }
        v
    };
    let real_rooted_fail: Vec<(usize, usize)> = polys
        .iter()
        .enumerate()
        .filter(|(_, p)| !real_rooted(p))
        .map(|(i, _)| (i, i))
        .collect();
    let mut failures: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(i, j)| !interlaces(&polys[i], &polys[j]).result)
        .copied()
        .collect();
    failures.extend(real_rooted_fail);
    failures.sort_unstable();
    SequenceVerdict {
        interlacing: failures.is_empty(),
        pairs_checked: pairs.len(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub m: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub triangle: String,
    pub n: usize,
    /// `h_F(sigma_m)` real-rooted for `2 <= m < n`.
    pub real_rooted: Vec<CheckOutcome>,
    /// `h_F(sigma_m) - h_F(boundary sigma_m)` zero, or degree `m-1`,
    /// nonnegative, and interlaced by `h_F(sigma_{m-1})`, for `2 <= m <= n`.
    pub boundary_difference: Vec<CheckOutcome>,
    pub passed: bool,
}

impl AssumptionReport {
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.real_rooted
            .iter()
            .chain(&self.boundary_difference)
            .filter(|c| !c.passed)
            .min_by_key(|c| c.m)
    }
}

/// `h_F(sigma_m)` and `h_F(boundary sigma_m)` for `m <= n`.
fn h_and_boundary(
    f: &FTriangle,
    n: usize,
) -> Result<(Vec<Polynomial>, Vec<Polynomial>), CertError> {
    let der = derive(f);
    if n > f.d {
        return Err(TransformError::RowOutOfRange { n, d: f.d }.into());
    }
    let mut boundary = vec![Polynomial::zero()];
    if n >= 1 {
        let rows = transform::p_rows_recurrence(f, n - 1)?;
        boundary.extend(
            rows.into_iter()
                .map(|row| row.into_iter().sum::<Polynomial>()),
        );
    }
    Ok((der.h[..=n].to_vec(), boundary))
}

pub fn check_assumptions(f: &FTriangle, n: usize) -> Result<AssumptionReport, CertError> {
    let (h, boundary) = h_and_boundary(f, n)?;
    let real_rooted: Vec<CheckOutcome> = (2..n)
        .map(|m| {
            let cert = is_real_rooted(&h[m]);
            CheckOutcome {
                m,
                passed: cert.is_real_rooted(),
                detail: format!("h(sigma_{m}) = {}: {:?}", h[m], cert.verdict),
            }
        })
        .collect();
    let boundary_difference: Vec<CheckOutcome> = (2..=n)
        .map(|m| {
            let diff = &h[m] - &boundary[m];
            let (passed, detail) = difference_condition(&diff, &h[m - 1], m);
            CheckOutcome { m, passed, detail }
        })
        .collect();
    let passed = real_rooted
        .iter()
        .chain(&boundary_difference)
        .all(|c| c.passed);
    Ok(AssumptionReport {
        triangle: f.name.clone(),
        n,
        real_rooted,
        boundary_difference,
        passed,
    })
}

fn difference_condition(diff: &Polynomial, previous: &Polynomial, m: usize) -> (bool, String) {
    if diff.is_zero() {
        return (true, "difference is zero".into());
    }
    if let Some((i, c)) = diff.first_negative() {
        return (
            false,
            format!("difference {diff} has coefficient {c} at x^{i}"),
        );
    }
    if diff.degree() != Some(m - 1) {
        return (
            false,
            format!("difference {diff} does not have degree {}", m - 1),
        );
    }
    if !real_rooted(diff) {
        return (false, format!("difference {diff} is not real-rooted"));
    }
    let v = interlaces(previous, diff);
    if !v.result {
        return (
            false,
            format!("h(sigma_{}) does not interlace {diff}: {}", m - 1, v.reason),
        );
    }
    (
        true,
        format!("difference {diff} is real-rooted and interlaced"),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplingReport {
    pub deterministic_cases: usize,
    pub random_samples: usize,
    pub seed: u64,
    /// Inputs `h` whose image is not real-rooted.
    pub counterexamples: Vec<Polynomial>,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConclusionReport {
    pub triangle: String,
    pub n: usize,
    pub operator_real_rooted: SamplingReport,
    pub simplex_and_boundary: Vec<CheckOutcome>,
    pub decomposition: DecompositionCertificate,
    pub passed: bool,
}

const SAMPLE_MAX_COEFF: u64 = 1000;

/// The `i`-th random input; each sample owns its generator, so results do not
/// depend on scheduling.
pub fn sample_h(n: usize, seed: u64, i: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let coeffs: Vec<i64> = match i % 4 {
        // sparse
        1 => (0..=n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    rng.gen_range(0..=SAMPLE_MAX_COEFF) as i64
                } else {
                    0
                }
            })
            .collect(),
        // large spread
        2 => (0..=n)
            .map(|_| {
                let e = rng.gen_range(0..=6u32);
                rng.gen_range(0..=9i64) * 10i64.pow(e)
            })
            .collect(),
        // symmetric about n/2
        3 => {
            let half: Vec<i64> = (0..=n / 2)
                .map(|_| rng.gen_range(0..=SAMPLE_MAX_COEFF) as i64)
                .collect();
            (0..=n).map(|j| half[j.min(n - j)]).collect()
        }
        _ => (0..=n)
            .map(|_| rng.gen_range(0..=SAMPLE_MAX_COEFF) as i64)
            .collect(),
    };
    Polynomial::from_ints(&coeffs)
}

/// Falsification harness for the real-rootedness conclusions. Sampling can
/// find counterexamples; it never proves the universal statement.
pub fn check_conclusions(
    f: &FTriangle,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ConclusionReport, CertError> {
    if n == 0 {
        return Err(TransformError::EmptyBoundary.into());
    }
    let table = transform::coeff_table_unchecked(f, n)?;
    let (h, boundary) = h_and_boundary(f, n)?;

    let mut corner: Vec<Polynomial> = (0..=n)
        .map(|k| Polynomial::monomial(Rational::one(), k))
        .collect();
    corner.push(Polynomial::geometric(n + 1));
    let inputs: Vec<Polynomial> = corner
        .iter()
        .cloned()
        .chain((0..samples as u64).map(|i| sample_h(n, seed, i)))
        .collect();
    let counterexamples: Vec<Polynomial> = inputs
        .par_iter()
        .filter(|hin| {
            let out = table.apply(&hin.padded(n + 1)).expect("length n + 1");
            !real_rooted(&out)
        })
        .cloned()
        .collect();
    let summary = if counterexamples.is_empty() {
        format!("no counterexample found in {} inputs", inputs.len())
    } else {
        format!(
            "{} counterexamples in {} inputs",
            counterexamples.len(),
            inputs.len()
        )
    };
    let operator_real_rooted = SamplingReport {
        deterministic_cases: corner.len(),
        random_samples: samples,
        seed,
        counterexamples,
        summary,
    };

    let prev = &h[n - 1];
    let mut simplex_and_boundary = Vec::new();
    for (label, target) in [("h(sigma_n)", &h[n]), ("h(boundary sigma_n)", &boundary[n])] {
        let rr = real_rooted(target);
        let il = interlaces(prev, target);
        simplex_and_boundary.push(CheckOutcome {
            m: n,
            passed: rr && il.result,
            detail: format!(
                "{label} = {target}: real-rooted {rr}, interlaced by h(sigma_n-1): {}",
                il.reason
            ),
        });
    }

    let decomposition = symmetric_decomposition_certificate(&h[n], n - 1)?;
    let passed = operator_real_rooted.counterexamples.is_empty()
        && simplex_and_boundary.iter().all(|c| c.passed)
        && decomposition.passed;
    Ok(ConclusionReport {
        triangle: f.name.clone(),
        n,
        operator_real_rooted,
        simplex_and_boundary,
        decomposition,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub decomposition: SymmetricDecomposition,
    pub a_nonnegative: bool,
    pub b_nonnegative: bool,
    pub a_roots: RootCertificate,
    pub b_roots: RootCertificate,
    pub passed: bool,
}

/// Certifies that `g = a + x b` has `a`, `b` nonnegative and real-rooted.
pub fn symmetric_decomposition_certificate(
    g: &Polynomial,
    n: usize,
) -> Result<DecompositionCertificate, CertError> {
    let decomposition = poly::symmetric_decompose(g, n)?;
    let a_roots = is_real_rooted(&decomposition.a);
    let b_roots = is_real_rooted(&decomposition.b);
    let a_nonnegative = decomposition.a.is_nonnegative();
    let b_nonnegative = decomposition.b.is_nonnegative();
    let passed =
        a_nonnegative && b_nonnegative && a_roots.is_real_rooted() && b_roots.is_real_rooted();
    Ok(DecompositionCertificate {
        decomposition,
        a_nonnegative,
        b_nonnegative,
        a_roots,
        b_roots,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSumCheck {
    pub j: usize,
    #[serde(serialize_with = "ser_rational")]
    pub top: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub bottom: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub n: usize,
    pub top_entry_zero: bool,
    /// `h_n + ... + h_{n-j} <= h_0 + ... + h_j` for `0 <= j <= n/2`.
    pub partial_sums: Vec<PartialSumCheck>,
    pub h_sd: Polynomial,
    pub certificate: DecompositionCertificate,
    pub passed: bool,
}

/// Barycentric subdivision of a ball with h-vector `hvec`: certifies the
/// decomposition of `h(sd(Delta))` with respect to `n - 1`.
pub fn ball_sd_decomposition_check(hvec: &[Rational], n: usize) -> Result<BallReport, CertError> {
    if n == 0 {
        return Err(TransformError::EmptyBoundary.into());
    }
    let h_sd = transform::apply_h(&triangle_barycentric(n), hvec, n)?;
    let top_entry_zero = hvec[n].is_zero();
    let partial_sums: Vec<PartialSumCheck> = (0..=n / 2)
        .map(|j| {
            let top: Rational = (0..=j)
                .map(|i| hvec[n - i].clone())
                .fold(Rational::zero(), |a, b| a + b);
            let bottom: Rational = (0..=j)
                .map(|i| hvec[i].clone())
                .fold(Rational::zero(), |a, b| a + b);
            let holds = top <= bottom;
            PartialSumCheck {
                j,
                top,
                bottom,
                holds,
            }
        })
        .collect();
    let certificate = if h_sd.fits_window(n - 1) {
        symmetric_decomposition_certificate(&h_sd, n - 1)?
    } else {
        // x^n term present: the input is not a ball; decompose in the full window to report.
        let mut c = symmetric_decomposition_certificate(&h_sd, n)?;
        c.passed = false;
        c
    };
    let passed = top_entry_zero && partial_sums.iter().all(|c| c.holds) && certificate.passed;
    Ok(BallReport {
        n,
        top_entry_zero,
        partial_sums,
        h_sd,
        certificate,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::eulerian;
    use crate::numbers::binomial;
    use crate::triangles::triangle_edgewise;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn q(num: i64, den: i64) -> Rational {
        Rational::new(num.into(), den.into())
    }

    /// prod (x - r_i) for integer roots.
    fn from_roots(roots: &[i64]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, &r| &acc * &p(&[-r, 1]))
    }

    #[test]
    fn real_rooted_examples() {
        let a3 = is_real_rooted(&p(&[1, 4, 1]));
        assert_eq!(a3.verdict, Verdict::RealRooted);
        assert_eq!(a3.isolating_intervals.len(), 2);
        assert!(is_real_rooted(&p(&[1])).is_real_rooted());
        assert_eq!(
            is_real_rooted(&Polynomial::zero()).verdict,
            Verdict::ZeroPolynomial
        );
        let bad = is_real_rooted(&p(&[1, 0, 1]));
        assert_eq!(bad.verdict, Verdict::NotRealRooted);
        assert_eq!(bad.witness, Some(p(&[1, 0, 1])));
    }

    #[test]
    fn edgewise_two_boundary_is_not_real_rooted() {
        let t = triangle_edgewise(2, 5).unwrap();
        let hb = transform::boundary_h(&t, 5).unwrap();
        assert_eq!(is_real_rooted(&hb).verdict, Verdict::NotRealRooted);
    }

    #[test]
    fn isolation_examples() {
        let sq2 = isolate_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(sq2.len(), 2);
        let fine = refine_interval(&p(&[-2, 0, 1]), &sq2[1], &q(1, 1_000_000_000));
        assert!(fine.width() < q(1, 1_000_000_000));
        assert!(&fine.lo * &fine.lo < q(2, 1) && &fine.hi * &fine.hi > q(2, 1));

        let xs = isolate_roots(&p(&[0, -1, 1])).unwrap();
        assert_eq!(xs.len(), 2);
        assert!(xs.iter().all(|r| r.is_exact()));
        assert_eq!(xs[0].lo, q(0, 1));
        assert_eq!(xs[1].lo, q(1, 1));

        let a4 = isolate_roots(&p(&[1, 11, 11, 1])).unwrap();
        assert_eq!(a4.len(), 3);
        assert!(a4.iter().all(|r| r.hi <= q(0, 1)));
        // -1 is a rational root of A_4
        assert!(a4.iter().any(|r| r.is_exact() && r.lo == q(-1, 1)));

        assert_eq!(
            isolate_roots(&Polynomial::zero()),
            Err(CertError::ZeroPolynomial)
        );
        assert!(isolate_roots(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn rational_roots_snap() {
        let f = &p(&[1, 3]) * &p(&[-2, 5]); // roots -1/3, 2/5
        let roots = isolate_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].lo, q(-1, 3));
        assert!(roots[0].is_exact());
        assert_eq!(roots[1].lo, q(2, 5));
    }

    #[test]
    fn multiplicities() {
        let f = &from_roots(&[1, 1, 1, -2]) * &p(&[1, 0, 1]);
        let cert = is_real_rooted(&f);
        assert_eq!(cert.verdict, Verdict::NotRealRooted);
        let g = from_roots(&[1, 1, 1, -2, 0, 0]);
        let cert = is_real_rooted(&g);
        assert!(cert.is_real_rooted());
        let mults: Vec<usize> = cert
            .isolating_intervals
            .iter()
            .map(|r| r.multiplicity)
            .collect();
        assert_eq!(mults, vec![1, 2, 3]);
        let factors = squarefree_factors(&g);
        assert_eq!(
            factors
                .iter()
                .map(|(f, m)| f.degree().unwrap() * m)
                .sum::<usize>(),
            6
        );
    }

    #[test]
    fn interlacing_conventions() {
        assert!(interlaces(&Polynomial::zero(), &p(&[1, 0, 1])).result);
        assert!(interlaces(&p(&[1, 0, 1]), &Polynomial::zero()).result);
        assert!(interlaces(&p(&[3]), &p(&[1, 2])).result);
        assert!(interlaces(&p(&[3]), &p(&[4])).result);
        assert!(!interlaces(&p(&[3]), &p(&[1, 2, 1])).result);
        assert!(!interlaces(&p(&[1, 1]), &p(&[2])).result);
    }

    #[test]
    fn interlacing_by_roots() {
        // f roots {-2}, g roots {-3, -1}: -3 <= -2 <= -1
        assert!(interlaces(&from_roots(&[-2]), &from_roots(&[-3, -1])).result);
        assert!(!interlaces(&from_roots(&[-3, -1]), &from_roots(&[-2])).result);
        // same degree: a_2 <= b_2 <= a_1 <= b_1
        assert!(interlaces(&from_roots(&[-4, -2]), &from_roots(&[-3, -1])).result);
        assert!(!interlaces(&from_roots(&[-3, -1]), &from_roots(&[-4, -2])).result);
        // shared roots are allowed
        assert!(interlaces(&from_roots(&[-2, -1]), &from_roots(&[-2, -1])).result);
        assert!(interlaces(&from_roots(&[-2]), &from_roots(&[-2, -2])).result);
        assert!(!interlaces(&p(&[1, 0, 1]), &from_roots(&[1, 2, 3])).result);
    }

    #[test]
    fn eulerian_interlacing() {
        for n in 2..=8 {
            let v = interlaces(&eulerian(n - 1), &eulerian(n));
            assert!(v.result, "n = {n}: {}", v.reason);
        }
    }

    #[test]
    fn binomial_sections_interlace() {
        for n in 1..=8i64 {
            let even: Vec<i64> = (0..=n / 2)
                .map(|k| i64::try_from(binomial(n, 2 * k)).unwrap())
                .collect();
            let odd: Vec<i64> = (0..=(n - 1) / 2)
                .map(|k| i64::try_from(binomial(n, 2 * k + 1)).unwrap())
                .collect();
            assert!(is_real_rooted(&p(&even)).is_real_rooted());
            assert!(interlaces(&p(&odd), &p(&even)).result, "n = {n}");
        }
    }

    #[test]
    fn sequence_checks() {
        let single = interlacing_sequence(&[p(&[1, 2])], true);
        assert!(single.interlacing);
        let bary = triangle_barycentric(6);
        for n in 1..=6 {
            let table = transform::coeff_table_unchecked(&bary, n).unwrap();
            let v = interlacing_sequence(&table.polys, true);
            assert!(v.interlacing, "n = {n}: {:?}", v.failures);
        }
        let two = triangle_edgewise(2, 4).unwrap();
        let table = transform::coeff_table_unchecked(&two, 4).unwrap();
        assert!(!interlacing_sequence(&table.polys, true).interlacing);
    }

    #[test]
    fn assumptions_barycentric_and_edgewise() {
        let rep = check_assumptions(&triangle_barycentric(8), 8).unwrap();
        assert!(rep.passed);
        assert!(rep
            .boundary_difference
            .iter()
            .all(|c| c.detail.contains("zero")));
        for (r, n) in [(3, 3), (4, 3), (4, 4), (5, 4)] {
            assert!(
                check_assumptions(&triangle_edgewise(r, n).unwrap(), n)
                    .unwrap()
                    .passed
            );
        }
        let rep = check_assumptions(&triangle_edgewise(2, 5).unwrap(), 5).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.first_failure().unwrap().m, 3);
    }

    #[test]
    fn conclusions_small() {
        let rep = check_conclusions(&triangle_edgewise(4, 3).unwrap(), 3, 40, 7).unwrap();
        assert!(rep.passed, "{rep:?}");
        let two = check_conclusions(&triangle_edgewise(2, 5).unwrap(), 5, 8, 1).unwrap();
        assert!(!two.passed);
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(sample_h(5, 42, 17), sample_h(5, 42, 17));
        assert_ne!(sample_h(5, 42, 17), sample_h(5, 42, 18));
        let s = sample_h(6, 3, 3);
        assert!(s.is_symmetric(6) || s.is_zero());
    }

    #[test]
    fn decomposition_certificates() {
        let sym = symmetric_decomposition_certificate(&p(&[1, 4, 1]), 2).unwrap();
        assert!(sym.passed);
        assert!(sym.decomposition.b.is_zero());
        assert!(symmetric_decomposition_certificate(&p(&[1, 1, 1, 1]), 2).is_err());
    }

    #[test]
    fn ball_checks() {
        let ints = |v: &[i64]| -> Vec<Rational> {
            v.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        };
        for n in 2..=5 {
            let mut e0 = vec![0i64; n + 1];
            e0[0] = 1;
            assert!(ball_sd_decomposition_check(&ints(&e0), n).unwrap().passed);
        }
        assert!(
            ball_sd_decomposition_check(&ints(&[1, 12, 3, 0]), 3)
                .unwrap()
                .passed
        );
        assert!(
            ball_sd_decomposition_check(&ints(&[1, 1, 0, 0]), 3)
                .unwrap()
                .passed
        );
        let sphere = ball_sd_decomposition_check(&ints(&[1, 1, 1]), 2).unwrap();
        assert!(!sphere.top_entry_zero);
        assert!(!sphere.passed);
    }

    #[test]
    fn weak_transitivity_on_constructed_triples() {
        let f = from_roots(&[-5, -3, -1]);
        let g = from_roots(&[-6, -4, -2, 0]);
        let h = from_roots(&[-5, -4, -2, -1]);
        assert!(interlaces(&f, &g).result);
        assert!(interlaces(&f, &h).result);
        assert!(interlaces(&f, &(&g + &h)).result);
    }

    fn distinct_int_roots() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::btree_set(-12i64..12, 1..=8).prop_map(|s| s.into_iter().collect())
    }

    fn grid_count(f: &Polynomial) -> usize {
        // sign changes on the half-integer grid plus exact hits on integers
        let mut count = 0;
        let mut prev: Option<i8> = None;
        for step in -60i64..=60 {
            let x = q(step, 4);
            let v = sign(&f.eval(&x));
            if v == 0 {
                count += 1;
                prev = None;
                continue;
            }
            if let Some(pv) = prev {
                if pv != v {
                    count += 1;
                }
            }
            prev = Some(v);
        }
        count
    }

    proptest! {
        #[test]
        fn sturm_counts_match_grid_scan(roots in distinct_int_roots(), quad in 0i64..3) {
            // optionally multiply by a quadratic with no real roots
            let mut f = from_roots(&roots);
            if quad > 0 {
                f = &f * &p(&[quad, 0, 1]);
            }
            let chain = SturmChain::new(&f);
            prop_assert_eq!(chain.count_all(), roots.len());
            prop_assert_eq!(grid_count(&f), roots.len());
            prop_assert_eq!(is_real_rooted(&f).is_real_rooted(), quad == 0);
        }

        #[test]
        fn interlacing_matches_direct_comparison(a in distinct_int_roots(), b in distinct_int_roots()) {
            let f = from_roots(&a);
            let g = from_roots(&b);
            let (mut sa, mut sb) = (a.clone(), b.clone());
            sa.sort_unstable_by(|x, y| y.cmp(x));
            sb.sort_unstable_by(|x, y| y.cmp(x));
            let degree_ok = sb.len() == sa.len() || sb.len() == sa.len() + 1;
            let direct = degree_ok
                && sa.iter().enumerate().all(|(i, &x)| x <= sb[i] && sb.get(i + 1).is_none_or(|&y| x >= y));
            prop_assert_eq!(interlaces(&f, &g).result, direct);
        }
    }
}

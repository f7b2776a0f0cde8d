//! The 48-variable optimization solved exactly.
//!
//! The quadratic-form inequality behind the modular theorem reduces to a
//! norm bound for the positive-part convolution operator with kernel
//! `phi = (16/3)*1 - 2*sqrt(5)*f_24` on `Z/24Z`: with
//! `N(a) = max(9*||a||_inf, ||a||_1)` one needs `N((a*phi)_+) <= 2 N(a)`
//! (and the same for the reflection `phi~`). By convexity it suffices to
//! check the l1 half on 0/1 vectors, and after normalizing `a_0 = 1` there
//! are `sum_{k<=8} C(23,k) = 880,970` cases.
//!
//! The enumeration here runs in exact `Q[sqrt 5]` arithmetic: the maximum
//! comes out as the exact rational 18 (the float program's
//! `18.000000000000004` is rounding), and extremizers are detected by exact
//! equality with the maximum. A float mode reproduces the double-precision
//! program verbatim, rounding artifact included.

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{ratio_to_f64, sign_of, Quad5, Rational};
use crate::report::VerificationReport;
use crate::ring::{qr_profile, Modulus};

/// `f_24` as an integer table.
pub fn f24_table() -> [i64; 24] {
    let p = qr_profile(Modulus::new(24).unwrap());
    let mut out = [0i64; 24];
    for (t, &c) in p.counts.iter().enumerate() {
        out[t] = c as i64;
    }
    out
}

/// The kernel `c*1 - d*sqrt(5)*g` on `Z/24Z` stored as 24 exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVector {
    pub values: [Quad5; 24],
}

impl PhiVector {
    /// `phi(t) = 16/3 - 2*sqrt(5)*f_24(t)`.
    pub fn standard() -> Self {
        Self::with_constant(Ratio::new(16, 3))
    }

    /// `c - 2*sqrt(5)*f_24(t)` for an arbitrary rational constant term
    /// (used by the mutation check in the CLI suite).
    pub fn with_constant(c: Rational) -> Self {
        let f = f24_table();
        let mut values = [Quad5::zero(); 24];
        for t in 0..24 {
            values[t] = Quad5::new(c, Ratio::new(-2 * f[t], 1));
        }
        PhiVector { values }
    }

    /// The reflection `phi~(t) = phi(-t mod 24)`; an involution.
    pub fn reflected(&self) -> Self {
        let mut values = [Quad5::zero(); 24];
        for t in 0..24 {
            values[t] = self.values[(24 - t) % 24];
        }
        PhiVector { values }
    }

    pub fn sum(&self) -> Quad5 {
        self.values.iter().fold(Quad5::zero(), |acc, &v| acc + v)
    }

    /// Integer decomposition over a common denominator `D`:
    /// `values[t] = (P[t] + R[t]*sqrt(5)) / D`.
    fn integer_parts(&self) -> ([i64; 24], [i64; 24], i64) {
        use num_integer::Integer;
        let mut d: i64 = 1;
        for v in &self.values {
            d = d.lcm(v.p.denom()).lcm(v.r.denom());
        }
        let mut p = [0i64; 24];
        let mut r = [0i64; 24];
        for t in 0..24 {
            p[t] = v_scaled(self.values[t].p, d);
            r[t] = v_scaled(self.values[t].r, d);
        }
        (p, r, d)
    }
}

fn v_scaled(x: Rational, d: i64) -> i64 {
    x.numer() * (d / x.denom())
}

/// A non-negative vector on `Z/24Z` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonnegVector24 {
    pub values: [Rational; 24],
}

impl NonnegVector24 {
    pub fn zero() -> Self {
        NonnegVector24 {
            values: [Ratio::zero(); 24],
        }
    }

    pub fn from_bits(bits: &[u8; 24]) -> Self {
        let mut values = [Ratio::zero(); 24];
        for (v, &b) in values.iter_mut().zip(bits) {
            *v = Ratio::new(b as i64, 1);
        }
        NonnegVector24 { values }
    }

    fn from_mask(mask: u32) -> Self {
        let mut values = [Ratio::zero(); 24];
        for (t, v) in values.iter_mut().enumerate() {
            if mask >> t & 1 == 1 {
                *v = Ratio::new(1, 1);
            }
        }
        NonnegVector24 { values }
    }

    pub fn constant(c: Rational) -> Self {
        NonnegVector24 { values: [c; 24] }
    }

    /// The 0/1 lift-up of a subset of `Z/8Z`: entry `i` is 1 iff
    /// `i mod 8` lies in the subset.
    pub fn liftup_mod8(support: &[i64]) -> Self {
        let mut values = [Ratio::zero(); 24];
        for (i, v) in values.iter_mut().enumerate() {
            if support.iter().any(|&s| s.rem_euclid(8) as usize == i % 8) {
                *v = Ratio::new(1, 1);
            }
        }
        NonnegVector24 { values }
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn sum_f64(&self) -> f64 {
        ratio_to_f64(self.sum())
    }

    pub fn sum_of_squares(&self) -> Rational {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn max_entry(&self) -> Rational {
        *self.values.iter().max().unwrap()
    }

    pub fn shifted(&self, s: usize) -> Self {
        let mut values = [Ratio::zero(); 24];
        for t in 0..24 {
            values[(t + s) % 24] = self.values[t];
        }
        NonnegVector24 { values }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v.numer() >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..24).filter(|&t| !self.values[t].is_zero()).collect()
    }

    pub fn as_bits(&self) -> Option<[u8; 24]> {
        let mut out = [0u8; 24];
        for (t, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                out[t] = 0;
            } else if *v == Ratio::new(1, 1) {
                out[t] = 1;
            } else {
                return None;
            }
        }
        Some(out)
    }
}

/// `||(a*psi)_+||_1 = sum_t max(0, (1/24) sum_j a(j) psi(t-j))`, exact.
///
/// Invariant under cyclic shifts of `a`, and convex in `a`.
///
/// ```
/// use sumsquares::optimize::{h_functional, NonnegVector24, PhiVector};
/// use sumsquares::quad::Quad5;
///
/// let a = NonnegVector24::liftup_mod8(&[0, 1, 4]);
/// let h = h_functional(&a, &PhiVector::standard());
/// assert_eq!(h, Quad5::from_integer(18));
/// ```
pub fn h_functional(a: &NonnegVector24, psi: &PhiVector) -> Quad5 {
    let mut total = Quad5::zero();
    for t in 0..24 {
        let mut acc = Quad5::zero();
        for j in 0..24 {
            if !a.values[j].is_zero() {
                acc += psi.values[(t + 24 - j) % 24].scale(a.values[j]);
            }
        }
        total += acc.scale(Ratio::new(1, 24)).positive_part();
    }
    total
}

/// The tailored norm `N(a) = max(9*||a||_inf, ||a||_1)`.
pub fn norm_n(a: &NonnegVector24) -> Rational {
    let by_sup = a.max_entry() * Ratio::new(9, 1);
    let by_sum = a.sum();
    if by_sup > by_sum {
        by_sup
    } else {
        by_sum
    }
}

/// Result of the exhaustive 0/1 enumeration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub case_count: u64,
    pub max_phi: Quad5,
    pub max_phi_tilde: Quad5,
    pub extremizers_phi: Vec<NonnegVector24>,
    pub extremizers_tilde: Vec<NonnegVector24>,
}

struct ChunkBest {
    max: (i64, i64),
    // global enumeration indices of the candidates attaining `max`
    argmax: Vec<(usize, u32)>,
}

/// All 0/1 vectors with `a_0 = 1` and at most 8 further ones, as bitmasks,
/// in enumeration order: sizes ascending, then positions lexicographic.
fn candidate_masks() -> Vec<u32> {
    let mut masks = Vec::with_capacity(880_970);
    for k in 0..=8usize {
        for combo in (1u32..24).combinations(k) {
            let mut mask = 1u32;
            for &pos in &combo {
                mask |= 1 << pos;
            }
            masks.push(mask);
        }
    }
    masks
}

/// Exact comparison of two values `(p + r*sqrt5)` given as integer pairs
/// over the same denominator.
fn cmp_int_pair(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    let s = crate::quad::sign_of(
        Ratio::new(a.0 - b.0, 1),
        Ratio::new(a.1 - b.1, 1),
    );
    s.cmp(&0)
}

fn sign_int(p: i64, r: i64) -> i32 {
    sign_of(Ratio::new(p, 1), Ratio::new(r, 1))
}

/// `sum_t ((a*psi)(t))_+` for a 0/1 mask, returned as an integer pair over
/// denominator `24*D` with `psi = (P + R*sqrt5)/D`.
fn h_mask(mask: u32, p: &[i64; 24], r: &[i64; 24]) -> (i64, i64) {
    let mut sp = 0i64;
    let mut sr = 0i64;
    for t in 0..24usize {
        let mut vp = 0i64;
        let mut vr = 0i64;
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let u = (t + 24 - j) % 24;
            vp += p[u];
            vr += r[u];
        }
        if sign_int(vp, vr) > 0 {
            sp += vp;
            sr += vr;
        }
    }
    (sp, sr)
}

fn enumerate_one(psi: &PhiVector, masks: &[u32]) -> (Quad5, Vec<NonnegVector24>) {
    let (p, r, d) = psi.integer_parts();
    const CHUNK: usize = 16_384;
    let chunks: Vec<ChunkBest> = masks
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let base = ci * CHUNK;
            let mut best = ChunkBest {
                max: (0, 0),
                argmax: Vec::new(),
            };
            for (i, &mask) in chunk.iter().enumerate() {
                let v = h_mask(mask, &p, &r);
                match cmp_int_pair(v, best.max) {
                    std::cmp::Ordering::Greater => {
                        best.max = v;
                        best.argmax.clear();
                        best.argmax.push((base + i, mask));
                    }
                    std::cmp::Ordering::Equal => best.argmax.push((base + i, mask)),
                    std::cmp::Ordering::Less => {}
                }
            }
            best
        })
        .collect();
    // deterministic merge in chunk order
    let mut max = (0i64, 0i64);
    let mut argmax: Vec<(usize, u32)> = Vec::new();
    for c in chunks {
        match cmp_int_pair(c.max, max) {
            std::cmp::Ordering::Greater => {
                max = c.max;
                argmax = c.argmax;
            }
            std::cmp::Ordering::Equal => argmax.extend(c.argmax),
            std::cmp::Ordering::Less => {}
        }
    }
    argmax.sort_by_key(|&(i, _)| i);
    let denom = 24 * d;
    let max_q = Quad5::new(Ratio::new(max.0, denom), Ratio::new(max.1, denom));
    let extremizers = argmax
        .into_iter()
        .map(|(_, mask)| NonnegVector24::from_mask(mask))
        .collect();
    (max_q, extremizers)
}

/// Run the full enumeration against the standard kernel and its reflection.
pub fn enumerate_norm_bound() -> EnumerationResult {
    enumerate_norm_bound_with(&PhiVector::standard())
}

/// Same, for an arbitrary kernel (the reflection is derived from it).
pub fn enumerate_norm_bound_with(phi: &PhiVector) -> EnumerationResult {
    let masks = candidate_masks();
    let (max_phi, extremizers_phi) = enumerate_one(phi, &masks);
    let (max_phi_tilde, extremizers_tilde) = enumerate_one(&phi.reflected(), &masks);
    EnumerationResult {
        case_count: masks.len() as u64,
        max_phi,
        max_phi_tilde,
        extremizers_phi,
        extremizers_tilde,
    }
}

/// One extremizer line of the double-precision program.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FloatExtremizer {
    pub dual: bool,
    pub pattern: [u8; 24],
}

/// Result of the double-precision cross-check, reproducing the original
/// float program operation for operation (17.99 print threshold and all).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FloatEnumerationResult {
    pub case_count: u64,
    pub max_phi: f64,
    pub max_phi_tilde: f64,
    /// Lines in program output order (per candidate, primary before dual).
    pub extremizers: Vec<FloatExtremizer>,
}

fn h_float(a: &[f64; 24], psi: &[f64; 24]) -> f64 {
    let mut sum1 = 0.0;
    for t in 0..24 {
        let mut sum2 = 0.0;
        for j in 0..24 {
            sum2 += a[j] * psi[(t + 24 - j) % 24];
        }
        sum2 /= 24.0;
        sum1 += sum2.max(0.0);
    }
    sum1
}

pub fn enumerate_float() -> FloatEnumerationResult {
    let f = f24_table();
    let mut phi = [0.0f64; 24];
    for t in 0..24 {
        phi[t] = 16.0 / 3.0 - 2.0 * 5f64.sqrt() * f[t] as f64;
    }
    // the reference program reflects as phi[23 - t]; a shifted reflection,
    // which leaves every h value unchanged
    let mut phit = [0.0f64; 24];
    for t in 0..24 {
        phit[t] = phi[23 - t];
    }
    let masks = candidate_masks();
    struct FloatChunk {
        max1: f64,
        max2: f64,
        hits: Vec<(usize, FloatExtremizer)>,
    }
    const CHUNK: usize = 16_384;
    let chunks: Vec<FloatChunk> = masks
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let base = ci * CHUNK;
            let mut out = FloatChunk {
                max1: 0.0,
                max2: 0.0,
                hits: Vec::new(),
            };
            for (i, &mask) in chunk.iter().enumerate() {
                let mut a = [0.0f64; 24];
                let mut bits = [0u8; 24];
                for t in 0..24 {
                    if mask >> t & 1 == 1 {
                        a[t] = 1.0;
                        bits[t] = 1;
                    }
                }
                let v1 = h_float(&a, &phi);
                let v2 = h_float(&a, &phit);
                out.max1 = out.max1.max(v1);
                out.max2 = out.max2.max(v2);
                if v1 >= 17.99 {
                    out.hits.push((
                        base + i,
                        FloatExtremizer {
                            dual: false,
                            pattern: bits,
                        },
                    ));
                }
                if v2 >= 17.99 {
                    out.hits.push((
                        base + i,
                        FloatExtremizer {
                            dual: true,
                            pattern: bits,
                        },
                    ));
                }
            }
            out
        })
        .collect();
    let mut max1 = 0.0f64;
    let mut max2 = 0.0f64;
    let mut hits: Vec<(usize, FloatExtremizer)> = Vec::new();
    for c in chunks {
        max1 = max1.max(c.max1);
        max2 = max2.max(c.max2);
        hits.extend(c.hits);
    }
    hits.sort_by_key(|&(i, ref e)| (i, e.dual));
    FloatEnumerationResult {
        case_count: masks.len() as u64,
        max_phi: max1,
        max_phi_tilde: max2,
        extremizers: hits.into_iter().map(|(_, e)| e).collect(),
    }
}

/// The easy half of the norm bound: under `||a||_inf <= 1` and
/// `||a||_1 <= 9`, `||(a*phi)_+||_inf <= (1/24)*(16/3)*9 = 2`.
pub fn linf_bound_check(a: &NonnegVector24) -> Result<VerificationReport> {
    if !a.is_nonnegative() {
        let index = a.values.iter().position(|v| *v.numer() < 0).unwrap();
        return Err(Error::NegativeEntry { index });
    }
    let linf = a.max_entry();
    let l1 = a.sum();
    if linf > Ratio::new(1, 1) || l1 > Ratio::new(9, 1) {
        return Err(Error::NormTooLarge {
            linf: ratio_to_f64(linf),
            l1: ratio_to_f64(l1),
        });
    }
    let phi = PhiVector::standard();
    let mut max = Quad5::zero();
    for t in 0..24 {
        let mut acc = Quad5::zero();
        for j in 0..24 {
            if !a.values[j].is_zero() {
                acc += phi.values[(t + 24 - j) % 24].scale(a.values[j]);
            }
        }
        let v = acc.scale(Ratio::new(1, 24)).positive_part();
        if v > max {
            max = v;
        }
    }
    let mut report =
        VerificationReport::upper_bound("linf_bound", max.to_f64(), 2.0, 0.0);
    report.pass = max <= Quad5::from_integer(2);
    Ok(report)
}

/// Exact `sum_t (a*b)(t) f_24(t) = (1/24) sum_{i,j} a_i b_j f_24(i+j)`.
pub fn mod24_count_exact(a: &NonnegVector24, b: &NonnegVector24) -> Rational {
    let f = f24_table();
    let mut acc: Ratio<i128> = Ratio::zero();
    for i in 0..24 {
        if a.values[i].is_zero() {
            continue;
        }
        let ai = widen(a.values[i]);
        for j in 0..24 {
            if b.values[j].is_zero() {
                continue;
            }
            let c = f[(i + j) % 24];
            if c != 0 {
                acc += ai * widen(b.values[j]) * Ratio::new(c as i128, 1);
            }
        }
    }
    acc /= Ratio::new(24, 1);
    narrow(acc)
}

fn widen(r: Rational) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

fn narrow(r: Ratio<i128>) -> Rational {
    Ratio::new(*r.numer() as i64, *r.denom() as i64)
}

/// Exact-arithmetic data for the homogeneous quadratic-form inequality and
/// its equality cases.
pub struct QuadraticFormGap {
    /// `sum_t (a*b)(t) f_24(t)`, exact.
    pub count: Rational,
    /// `sum a - sum a^2`.
    pub x: Rational,
    /// `sum b - sum b^2`.
    pub y: Rational,
}

impl QuadraticFormGap {
    pub fn compute(a: &NonnegVector24, b: &NonnegVector24) -> Self {
        QuadraticFormGap {
            count: mod24_count_exact(a, b),
            x: a.sum() - a.sum_of_squares(),
            y: b.sum() - b.sum_of_squares(),
        }
    }

    /// Exact test of `count = (1/sqrt5) sqrt(x) sqrt(y)` (both sides are
    /// non-negative for the inputs where this is queried).
    pub fn equality_exact(&self) -> bool {
        if *self.count.numer() < 0 {
            return false;
        }
        let c = widen(self.count);
        let x = widen(self.x);
        let y = widen(self.y);
        c * c * Ratio::new(5, 1) == x * y
    }
}

/// Check of the homogeneous quadratic form: for non-negative
/// entries, `sum (a*b) f_24 >= (1/(2 sqrt5)) ((2/9)(sum a)(sum b) - sum a^2
/// - sum b^2)`. Decided exactly; the report carries float renderings.
pub fn quadratic_form_check(
    a: &NonnegVector24,
    b: &NonnegVector24,
) -> Result<VerificationReport> {
    for (idx, v) in a.values.iter().chain(b.values.iter()).enumerate() {
        if *v.numer() < 0 {
            return Err(Error::NegativeEntry { index: idx % 24 });
        }
    }
    let count = mod24_count_exact(a, b);
    // rhs = e / (2 sqrt5) with rational e; count >= rhs iff
    // 2*sqrt5*count - e >= 0, i.e. sign_of(-e, 2*count) >= 0
    let e = widen(a.sum()) * widen(b.sum()) * Ratio::new(2, 9)
        - widen(a.sum_of_squares())
        - widen(b.sum_of_squares());
    let e64 = Ratio::new(*e.numer() as i64, *e.denom() as i64);
    let pass = sign_of(-e64, count * Ratio::new(2, 1)) >= 0;
    let mut report = VerificationReport::lower_bound(
        "quadratic_form",
        ratio_to_f64(count),
        ratio_to_f64(e64) / (2.0 * 5f64.sqrt()),
        0.0,
    );
    report.pass = pass;
    Ok(report)
}

/// The epsilon-carrying inequality on `[0,1]` entries with row sums at
/// least `9 + eps`: `sum (a*b) f_24 >= eps/sqrt5 + (1/sqrt5) sqrt(sum a -
/// sum a^2) sqrt(sum b - sum b^2)`.
pub fn density_form_check(
    a: &NonnegVector24,
    b: &NonnegVector24,
    epsilon: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    for v in a.values.iter().chain(b.values.iter()) {
        if *v.numer() < 0 || *v > Ratio::new(1, 1) {
            return Err(Error::InvalidInput(
                "entries must lie in [0,1]".into(),
            ));
        }
    }
    let need = 9.0 + epsilon;
    if a.sum_f64() < need - 1e-9 || b.sum_f64() < need - 1e-9 {
        return Err(Error::DensityTooLow {
            required: need / 24.0,
            measured_a: a.sum_f64() / 24.0,
            measured_b: b.sum_f64() / 24.0,
        });
    }
    let gap = QuadraticFormGap::compute(a, b);
    let lhs = ratio_to_f64(gap.count);
    let rhs = epsilon / 5f64.sqrt()
        + ratio_to_f64(gap.x).max(0.0).sqrt() * ratio_to_f64(gap.y).max(0.0).sqrt()
            / 5f64.sqrt();
    Ok(VerificationReport::lower_bound("density_form", lhs, rhs, tolerance)
        .with_epsilon(epsilon))
}

/// One equality case of the quadratic form: the lift-up pair
/// `({0,1,5}+x, {2,5,6}-x)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqualityCase {
    pub x: i64,
    pub a_support_mod8: Vec<i64>,
    pub b_support_mod8: Vec<i64>,
    pub count_is_zero: bool,
    pub equality: bool,
    pub partner_unique: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqualityCaseReport {
    pub cases: Vec<EqualityCase>,
    /// Every mirrored case matches a translate of an enumeration extremizer.
    pub translates_cover_enumeration: bool,
    pub pass: bool,
}

/// Walk every translate `x in Z/8Z` of the extremal pair, confirm exact
/// equality in the quadratic form, confirm the maximal partner is unique,
/// and tie the mirrored supports back to the enumeration's extremizers.
pub fn equality_case_analysis(enumeration: &EnumerationResult) -> EqualityCaseReport {
    use crate::search::{extremal_partner, ResidueSet};
    let q8 = Modulus::new(8).unwrap();
    let mut cases = Vec::new();
    let mut translates_cover = true;
    // mirrored a-supports (as 24-bit patterns) found by the enumeration
    let enum_patterns: Vec<[u8; 24]> = enumeration
        .extremizers_phi
        .iter()
        .filter_map(|e| e.as_bits())
        .collect();
    for x in 0..8i64 {
        let a_sup: Vec<i64> = [0, 1, 5].iter().map(|s| (s + x).rem_euclid(8)).collect();
        let b_sup: Vec<i64> = [2, 5, 6].iter().map(|s| (s - x).rem_euclid(8)).collect();
        let a = NonnegVector24::liftup_mod8(&a_sup);
        let b = NonnegVector24::liftup_mod8(&b_sup);
        let gap = QuadraticFormGap::compute(&a, &b);
        let count_is_zero = gap.count.is_zero();
        let equality = gap.equality_exact() && gap.x.is_zero() && gap.y.is_zero();
        // mirrored support: a(-i); must be a cyclic translate of some
        // enumeration extremizer
        let mirror_sup: Vec<i64> = a_sup.iter().map(|s| (-s).rem_euclid(8)).collect();
        let mirror = NonnegVector24::liftup_mod8(&mirror_sup);
        let mirror_bits = mirror.as_bits().unwrap();
        let covered = enum_patterns.iter().any(|p| {
            (0..24).any(|s| (0..24).all(|t| p[(t + s) % 24] == mirror_bits[t]))
        });
        translates_cover &= covered;
        let a_set = ResidueSet::from_residues(q8, &a_sup).unwrap();
        let b_set = ResidueSet::from_residues(q8, &b_sup).unwrap();
        let partner = extremal_partner(&a_set);
        let partner_unique = partner == b_set;
        cases.push(EqualityCase {
            x,
            a_support_mod8: a_sup,
            b_support_mod8: b_sup,
            count_is_zero,
            equality,
            partner_unique,
        });
    }
    let pass = translates_cover
        && cases
            .iter()
            .all(|c| c.count_is_zero && c.equality && c.partner_unique);
    EqualityCaseReport {
        cases,
        translates_cover_enumeration: translates_cover,
        pass,
    }
}

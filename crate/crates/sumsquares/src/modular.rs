//! Verifiers for the mod-q Fourier identities and inequalities behind the
//! weighted square-count lower bound `sum_t (wA*wB)(t) f_q(t) >= (eps/sqrt(5)) q`
//! (valid whenever both weights have mean at least `3/8 + eps`).
//!
//! The chain of checks mirrors the derivation: a Fourier representation of
//! the weighted count, its split into a mod-24 term plus an off-diagonal
//! term, a Gauss-sum bound of `1/sqrt(5)` on every off-diagonal coefficient,
//! a Cauchy-Schwarz bound on the off-diagonal term through the mod-24
//! projections, and a lift-up taking arbitrary `q` to `24q`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::ring::{cyclic_convolve, dft, qr_profile, unit_phase, Modulus, ResidueWeight};

/// Averages of a weight over the residue classes mod 24; each entry lies in
/// `[0,1]` when the weight does.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mod24Projection {
    pub values: [f64; 24],
}

impl Mod24Projection {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `sum_k (a(k) - a(k)^2)`, the variance-like quantity in the
    /// off-diagonal bound.
    pub fn dispersion(&self) -> f64 {
        self.values.iter().map(|a| a - a * a).sum()
    }

    pub fn as_weight(&self) -> ResidueWeight {
        ResidueWeight {
            q: Modulus::new(24).unwrap(),
            values: self.values.to_vec(),
        }
    }
}

fn require_mult_of_24(q: Modulus) -> Result<()> {
    if q.get() % 24 != 0 {
        return Err(Error::NotMultipleOf24 { q: q.get() });
    }
    Ok(())
}

fn require_same_modulus(wa: &ResidueWeight, wb: &ResidueWeight) -> Result<()> {
    if wa.q != wb.q {
        return Err(Error::ModulusMismatch {
            left: wa.q.get(),
            right: wb.q.get(),
        });
    }
    Ok(())
}

/// `a(k) = (24/q) sum_{x = k mod 24} w(x)`; requires `24 | q`.
pub fn project_mod24(w: &ResidueWeight) -> Result<Mod24Projection> {
    require_mult_of_24(w.q)?;
    let mut values = [0.0; 24];
    for (x, &v) in w.values.iter().enumerate() {
        values[x % 24] += v;
    }
    let scale = 24.0 / w.q.get() as f64;
    for v in &mut values {
        *v *= scale;
    }
    Ok(Mod24Projection { values })
}

/// The three spectral sums `sum_m wA_hat(m) wB_hat(m) fq_hat(-m)` over all
/// `m`, over `m` with `q | 24m`, and over the rest.
pub struct SpectralSplit {
    pub full: Complex64,
    pub mod24: Complex64,
    pub offdiagonal: Complex64,
}

pub fn spectral_split(wa: &ResidueWeight, wb: &ResidueWeight) -> Result<SpectralSplit> {
    require_same_modulus(wa, wb)?;
    let q = wa.q.get();
    let sa = dft(wa);
    let sb = dft(wb);
    let sf = dft(&qr_profile(wa.q).as_weight());
    let mut full = Complex64::new(0.0, 0.0);
    let mut mod24 = Complex64::new(0.0, 0.0);
    for m in 0..q {
        let term = sa.coeffs[m as usize] * sb.coeffs[m as usize] * sf.at(-(m as i64));
        full += term;
        if (24 * m) % q == 0 {
            mod24 += term;
        }
    }
    Ok(SpectralSplit {
        full,
        mod24,
        offdiagonal: full - mod24,
    })
}

/// Check the Fourier representation of the weighted square count:
/// `(1/q) sum_t (wA*wB)(t) f_q(t) = sum_m wA_hat(m) wB_hat(m) fq_hat(-m)`.
pub fn fourier_identity_check(
    wa: &ResidueWeight,
    wb: &ResidueWeight,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_same_modulus(wa, wb)?;
    let profile = qr_profile(wa.q);
    let lhs =
        crate::ring::weighted_square_count(wa, wb, &profile)? / wa.q.get() as f64;
    let split = spectral_split(wa, wb)?;
    let mut report =
        VerificationReport::identity("fourier_representation", lhs, split.full.re, tolerance);
    if split.full.im.abs() > tolerance {
        report.pass = false;
    }
    Ok(report)
}

/// Check that the `q | 24m` spectral term equals
/// `(1/24) sum_t (a*b)(t) f_24(t)` for the mod-24 projections `a, b`.
pub fn mod24_term_check(
    wa: &ResidueWeight,
    wb: &ResidueWeight,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_mult_of_24(wa.q)?;
    let split = spectral_split(wa, wb)?;
    let a = project_mod24(wa)?;
    let b = project_mod24(wb)?;
    let rhs = mod24_square_count(&a, &b) / 24.0;
    Ok(VerificationReport::identity(
        "mod24_term",
        split.mod24.re,
        rhs,
        tolerance,
    ))
}

/// `sum_t (a*b)(t) f_24(t)` for two mod-24 projections.
pub fn mod24_square_count(a: &Mod24Projection, b: &Mod24Projection) -> f64 {
    let q24 = Modulus::new(24).unwrap();
    let profile = qr_profile(q24);
    let conv = cyclic_convolve(&a.as_weight(), &b.as_weight()).unwrap();
    profile
        .counts
        .iter()
        .enumerate()
        .map(|(t, &c)| conv.values[t] * c as f64)
        .sum()
}

/// Which case of the three-way Gauss-sum estimate applies to a frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussBoundClass {
    /// `q/gcd(m,q)` odd: `|fq_hat(-m)| <= sqrt(g/q)`.
    Odd,
    /// `q/gcd(m,q) = 0 mod 4`: `|fq_hat(-m)| <= sqrt(2g/q)`.
    DivisibleBy4,
    /// `q/gcd(m,q) = 2 mod 4`: the sum vanishes.
    TwiceOdd,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaussBoundEntry {
    pub m: u64,
    pub magnitude: f64,
    pub case_bound: f64,
    pub bound_class: GaussBoundClass,
}

/// `fq_hat(-m) = (1/q) sum_x e(m x^2 / q)`, computed by direct summation.
pub fn fq_hat_neg(q: Modulus, m: u64) -> Complex64 {
    let n = q.get();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 0..n {
        let phase = (m % n) * ((x * x) % n) % n;
        acc += unit_phase(phase as f64 / n as f64);
    }
    acc / n as f64
}

/// For every `m` with `q` not dividing `24m`, report `|fq_hat(-m)|` together
/// with the Gauss-sum case that bounds it by `1/sqrt(5)`.
pub fn gauss_bound_report(q: Modulus) -> Result<Vec<GaussBoundEntry>> {
    use num_integer::Integer;
    require_mult_of_24(q)?;
    let n = q.get();
    let mut out = Vec::new();
    for m in 0..n {
        if (24 * m) % n == 0 {
            continue;
        }
        let g = m.gcd(&n);
        let qg = n / g;
        let (bound_class, case_bound) = match qg % 4 {
            0 => (GaussBoundClass::DivisibleBy4, (2.0 / qg as f64).sqrt()),
            2 => (GaussBoundClass::TwiceOdd, 0.0),
            _ => (GaussBoundClass::Odd, (1.0 / qg as f64).sqrt()),
        };
        out.push(GaussBoundEntry {
            m,
            magnitude: fq_hat_neg(q, m).norm(),
            case_bound,
            bound_class,
        });
    }
    Ok(out)
}

/// Check the off-diagonal Cauchy-Schwarz bound: the magnitude of the
/// `q` not dividing `24m` spectral sum is at most
/// `(1/(24 sqrt 5)) sqrt(sum a - a^2) sqrt(sum b - b^2)`.
pub fn offdiagonal_bound_check(
    wa: &ResidueWeight,
    wb: &ResidueWeight,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_mult_of_24(wa.q)?;
    let split = spectral_split(wa, wb)?;
    let a = project_mod24(wa)?;
    let b = project_mod24(wb)?;
    let bound = a.dispersion().max(0.0).sqrt() * b.dispersion().max(0.0).sqrt()
        / (24.0 * 5f64.sqrt());
    Ok(VerificationReport::upper_bound(
        "offdiagonal_bound",
        split.offdiagonal.norm(),
        bound,
        tolerance,
    ))
}

/// Lift a weight on `Z/qZ` to `Z/24qZ` by `w~(x) = w(x mod q)`.
///
/// The lift preserves the mean and the normalized square count:
/// `(1/q) sum_t (wA*wB)(t) f_q(t) = (1/24q) sum_t (w~A*w~B)(t) f_24q(t)`.
pub fn lift_to_24q(w: &ResidueWeight) -> ResidueWeight {
    let q = w.q.get();
    let lifted = Modulus::new(24 * q).unwrap();
    let values = (0..24 * q).map(|x| w.values[(x % q) as usize]).collect();
    ResidueWeight { q: lifted, values }
}

/// The quantitative theorem: if both weights have mean at least
/// `3/8 + eps`, then `sum_t (wA*wB)(t) f_q(t) >= (eps/sqrt 5) q`.
///
/// When `q` is not a multiple of 24, both weights are first lifted to
/// `Z/24qZ` (the count check there is equivalent).
///
/// ```
/// use sumsquares::modular::square_count_bound_check;
/// use sumsquares::ring::{Modulus, ResidueWeight};
///
/// let q = Modulus::new(24).unwrap();
/// let w = ResidueWeight::constant(q, 0.5);
/// let report = square_count_bound_check(&w, &w, 0.125, 1e-8).unwrap();
/// assert!(report.pass);
/// ```
pub fn square_count_bound_check(
    wa: &ResidueWeight,
    wb: &ResidueWeight,
    epsilon: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_same_modulus(wa, wb)?;
    if epsilon < 0.0 {
        return Err(Error::InvalidInput("epsilon must be >= 0".into()));
    }
    let q = wa.q.get() as f64;
    let required = (0.375 + epsilon) * q;
    // small slack so that densities constructed in floating point are not
    // rejected for a 1-ulp shortfall
    if wa.sum() < required - 1e-9 || wb.sum() < required - 1e-9 {
        return Err(Error::DensityTooLow {
            required: 0.375 + epsilon,
            measured_a: wa.mean(),
            measured_b: wb.mean(),
        });
    }
    let (la, lb) = if wa.q.get() % 24 == 0 {
        (wa.clone(), wb.clone())
    } else {
        (lift_to_24q(wa), lift_to_24q(wb))
    };
    let profile = qr_profile(la.q);
    let count = crate::ring::weighted_square_count(&la, &lb, &profile)?;
    // normalized back to the original modulus
    let normalized = count * q / la.q.get() as f64;
    let bound = epsilon / 5f64.sqrt() * q;
    Ok(
        VerificationReport::lower_bound("theorem_square_count", normalized, bound, tolerance)
            .with_epsilon(epsilon),
    )
}

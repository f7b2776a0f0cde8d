//! Arithmetic over `Z/qZ`: quadratic-residue profiles, normalized cyclic
//! convolution, and the discrete Fourier transform.
//!
//! Conventions:
//!
//! * `f_q(t) = #{x in Z/qZ : x^2 = t}` has total mass `q`.
//! * `(f*g)(x) = (1/q) sum_a f(a) g(x-a)`.
//! * `w_hat(r) = (1/q) sum_x w(x) e(-rx/q)` with `e(theta) = exp(2*pi*i*theta)`.
//!
//! With these normalizations Parseval reads
//! `sum_r |w_hat(r)|^2 = (1/q) sum_x w(x)^2`, and the convolution theorem is
//! `dft(f*g)(r) = dft(f)(r) * dft(g)(r)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cyclic-group modulus `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("modulus must be >= 1".into()));
        }
        Ok(Modulus(q))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0 as usize
    }

    /// Canonicalize an integer into `{0, ..., q-1}`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The counting function `f_q(t) = #{x : x^2 = t mod q}`, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRProfile {
    pub q: Modulus,
    pub counts: Vec<u64>,
}

/// Compute the quadratic-residue profile of `Z/qZ` by direct enumeration.
///
/// ```
/// use sumsquares::ring::{qr_profile, Modulus};
/// let p = qr_profile(Modulus::new(8).unwrap());
/// assert_eq!(p.counts, vec![2, 4, 0, 0, 2, 0, 0, 0]);
/// ```
pub fn qr_profile(q: Modulus) -> QRProfile {
    let n = q.get();
    let mut counts = vec![0u64; q.len()];
    for x in 0..n {
        counts[((x * x) % n) as usize] += 1;
    }
    QRProfile { q, counts }
}

impl QRProfile {
    /// Total mass; always equal to `q`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `true` iff `t` is a quadratic residue mod `q` (including 0).
    pub fn is_square(&self, t: u64) -> bool {
        self.counts[(t % self.q.get()) as usize] > 0
    }

    /// The profile as a real-valued weight vector (for spectral identities).
    pub fn as_weight(&self) -> ResidueWeight {
        ResidueWeight {
            q: self.q,
            values: self.counts.iter().map(|&c| c as f64).collect(),
        }
    }
}

/// A function `w : Z/qZ -> R`. In the weight role every value lies in
/// `[0,1]`; signed values in `[-1,1]` appear for balanced functions and
/// convolutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueWeight {
    pub q: Modulus,
    pub values: Vec<f64>,
}

impl ResidueWeight {
    pub fn new(q: Modulus, values: Vec<f64>) -> Result<Self> {
        if values.len() != q.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                q.get(),
                values.len()
            )));
        }
        Ok(ResidueWeight { q, values })
    }

    pub fn constant(q: Modulus, c: f64) -> Self {
        ResidueWeight {
            q,
            values: vec![c; q.len()],
        }
    }

    /// Indicator of a set of residues (canonicalized mod `q`).
    pub fn indicator(q: Modulus, residues: &[i64]) -> Self {
        let mut values = vec![0.0; q.len()];
        for &r in residues {
            values[q.reduce(r) as usize] = 1.0;
        }
        ResidueWeight { q, values }
    }

    pub fn delta(q: Modulus) -> Self {
        let mut values = vec![0.0; q.len()];
        values[0] = 1.0;
        ResidueWeight { q, values }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.q.get() as f64
    }

    pub fn is_integer_valued(&self) -> bool {
        self.values.iter().all(|v| v.fract() == 0.0 && v.abs() < 2.0_f64.powi(52))
    }

    fn check_same_modulus(&self, other: &ResidueWeight) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch {
                left: self.q.get(),
                right: other.q.get(),
            });
        }
        Ok(())
    }
}

/// Normalized cyclic convolution `(f*g)(x) = (1/q) sum_a f(a) g(x-a)`.
pub fn cyclic_convolve(f: &ResidueWeight, g: &ResidueWeight) -> Result<ResidueWeight> {
    f.check_same_modulus(g)?;
    let n = f.q.len();
    let mut out = vec![0.0; n];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for a in 0..n {
            acc += f.values[a] * g.values[(x + n - a) % n];
        }
        *slot = acc / n as f64;
    }
    Ok(ResidueWeight { q: f.q, values: out })
}

/// The Fourier coefficients `w_hat(r)` of a weight, `r = 0, ..., q-1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub q: Modulus,
    pub coeffs: Vec<Complex64>,
}

impl Spectrum {
    /// `w_hat(r)` for any integer `r` (canonicalized mod q).
    pub fn at(&self, r: i64) -> Complex64 {
        self.coeffs[self.q.reduce(r) as usize]
    }
}

/// `e(theta) = exp(2 pi i theta)`.
#[inline]
pub fn unit_phase(theta: f64) -> Complex64 {
    let t = std::f64::consts::TAU * theta;
    Complex64::new(t.cos(), t.sin())
}

/// Direct `O(q^2)` discrete Fourier transform with the `1/q` normalization.
///
/// The moduli in this toolkit stay in the low thousands, so no fast
/// transform is needed.
pub fn dft(w: &ResidueWeight) -> Spectrum {
    let n = w.q.len();
    let qf = n as f64;
    let mut coeffs = Vec::with_capacity(n);
    for r in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, &v) in w.values.iter().enumerate() {
            if v != 0.0 {
                // phase argument reduced mod q so equal residues get
                // bit-identical phases
                let rx = (r * x) % n;
                acc += v * unit_phase(-(rx as f64) / qf);
            }
        }
        coeffs.push(acc / qf);
    }
    Spectrum { q: w.q, coeffs }
}

/// The weighted count of quadratic residues in the weighted sumset:
/// `sum_t (wA*wB)(t) f_q(t)`.
///
/// For integer-valued weights the double sum is evaluated in exact integer
/// arithmetic (the division by `q` is the only rounding, and is exact for
/// every integer instance exercised here).
pub fn weighted_square_count(
    wa: &ResidueWeight,
    wb: &ResidueWeight,
    profile: &QRProfile,
) -> Result<f64> {
    wa.check_same_modulus(wb)?;
    if wa.q != profile.q {
        return Err(Error::ModulusMismatch {
            left: wa.q.get(),
            right: profile.q.get(),
        });
    }
    let n = wa.q.len();
    if wa.is_integer_valued() && wb.is_integer_valued() {
        // sum_t sum_a wA(a) wB(t-a) f_q(t), exact
        let ia: Vec<i128> = wa.values.iter().map(|&v| v as i128).collect();
        let ib: Vec<i128> = wb.values.iter().map(|&v| v as i128).collect();
        let mut total: i128 = 0;
        for (a, &va) in ia.iter().enumerate() {
            if va == 0 {
                continue;
            }
            for (b, &vb) in ib.iter().enumerate() {
                if vb == 0 {
                    continue;
                }
                total += va * vb * profile.counts[(a + b) % n] as i128;
            }
        }
        return Ok(total as f64 / n as f64);
    }
    // normalized summation order: t ascending, then a ascending
    let conv = cyclic_convolve(wa, wb)?;
    let mut acc = 0.0;
    for (t, &c) in profile.counts.iter().enumerate() {
        if c > 0 {
            acc += conv.values[t] * c as f64;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u64) -> Modulus {
        Modulus::new(q).unwrap()
    }

    #[test]
    fn qr_profile_q1() {
        assert_eq!(qr_profile(m(1)).counts, vec![1]);
    }

    #[test]
    fn qr_profile_q8() {
        let p = qr_profile(m(8));
        assert_eq!(p.counts, vec![2, 4, 0, 0, 2, 0, 0, 0]);
    }

    #[test]
    fn qr_profile_q24() {
        let p = qr_profile(m(24));
        let mut expect = vec![0u64; 24];
        for (t, c) in [(0, 2), (1, 8), (4, 4), (9, 4), (12, 2), (16, 4)] {
            expect[t] = c;
        }
        assert_eq!(p.counts, expect);
        assert_eq!(p.total(), 24);
    }

    #[test]
    fn profile_mass_exhaustive() {
        for q in 1..=1000 {
            assert_eq!(qr_profile(m(q)).total(), q, "mass at q={q}");
        }
    }

    #[test]
    fn profile_crt_multiplicative() {
        use num_integer::Integer;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1729);
        let mut done = 0;
        while done < 200 {
            let q1 = rng.gen_range(2u64..=100);
            let q2 = rng.gen_range(2u64..=100);
            if q1.gcd(&q2) != 1 || q1 * q2 > 10_000 {
                continue;
            }
            let p1 = qr_profile(m(q1));
            let p2 = qr_profile(m(q2));
            let p = qr_profile(m(q1 * q2));
            for t in 0..q1 * q2 {
                assert_eq!(
                    p.counts[t as usize],
                    p1.counts[(t % q1) as usize] * p2.counts[(t % q2) as usize],
                    "CRT at q1={q1} q2={q2} t={t}"
                );
            }
            done += 1;
        }
    }

    #[test]
    fn convolve_constants() {
        let f = ResidueWeight::constant(m(12), 0.5);
        let g = ResidueWeight::constant(m(12), 0.25);
        let c = cyclic_convolve(&f, &g).unwrap();
        for v in c.values {
            assert!((v - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_delta() {
        let f = ResidueWeight::delta(m(8));
        let g = ResidueWeight::indicator(m(8), &[1, 3, 4]);
        let c = cyclic_convolve(&f, &g).unwrap();
        for (x, v) in c.values.iter().enumerate() {
            assert!((v - g.values[x] / 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_support_is_sumset() {
        let f = ResidueWeight::indicator(m(8), &[0, 1, 5]);
        let g = ResidueWeight::indicator(m(8), &[2, 5, 6]);
        let c = cyclic_convolve(&f, &g).unwrap();
        let support: Vec<usize> = (0..8).filter(|&x| c.values[x] > 1e-12).collect();
        assert_eq!(support, vec![2, 3, 5, 6, 7]);
    }

    #[test]
    fn convolve_modulus_mismatch() {
        let f = ResidueWeight::constant(m(8), 1.0);
        let g = ResidueWeight::constant(m(12), 1.0);
        assert!(matches!(
            cyclic_convolve(&f, &g),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn dft_constant() {
        let w = ResidueWeight::constant(m(24), 0.7);
        let s = dft(&w);
        assert!((s.coeffs[0].re - 0.7).abs() < 1e-12);
        for r in 1..24 {
            assert!(s.coeffs[r].norm() < 1e-12);
        }
    }

    #[test]
    fn dft_delta() {
        let s = dft(&ResidueWeight::delta(m(10)));
        for c in s.coeffs {
            assert!((c - Complex64::new(0.1, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn dft_of_f8_profile() {
        let w = qr_profile(m(8)).as_weight();
        let s = dft(&w);
        assert!((s.coeffs[1].norm() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn square_count_constants() {
        for q in [1u64, 8, 24, 100] {
            let w = ResidueWeight::constant(m(q), 1.0);
            let p = qr_profile(m(q));
            let c = weighted_square_count(&w, &w, &p).unwrap();
            assert!((c - q as f64).abs() < 1e-9, "q={q}: {c}");
        }
    }

    #[test]
    fn square_count_extremal_pair_is_zero() {
        let wa = ResidueWeight::indicator(m(8), &[0, 1, 5]);
        let wb = ResidueWeight::indicator(m(8), &[2, 5, 6]);
        let p = qr_profile(m(8));
        assert_eq!(weighted_square_count(&wa, &wb, &p).unwrap(), 0.0);
    }

    #[test]
    fn square_count_single_point() {
        let w = ResidueWeight::indicator(m(8), &[0]);
        let p = qr_profile(m(8));
        let c = weighted_square_count(&w, &w, &p).unwrap();
        assert!((c - 0.25).abs() < 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn weight_strategy(q: u64) -> impl Strategy<Value = ResidueWeight> {
            proptest::collection::vec(0.0f64..1.0, q as usize)
                .prop_map(move |values| ResidueWeight::new(m(q), values).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn parseval(w in (1u64..=240).prop_flat_map(weight_strategy)) {
                let s = dft(&w);
                let lhs: f64 = s.coeffs.iter().map(|c| c.norm_sqr()).sum();
                let rhs: f64 =
                    w.values.iter().map(|v| v * v).sum::<f64>() / w.q.get() as f64;
                prop_assert!((lhs - rhs).abs() < 1e-9);
            }

            #[test]
            fn convolution_theorem(
                (f, g) in (1u64..=120)
                    .prop_flat_map(|q| (weight_strategy(q), weight_strategy(q)))
            ) {
                let c = cyclic_convolve(&f, &g).unwrap();
                let sc = dft(&c);
                let sf = dft(&f);
                let sg = dft(&g);
                for r in 0..f.q.len() {
                    prop_assert!((sc.coeffs[r] - sf.coeffs[r] * sg.coeffs[r]).norm() < 1e-9);
                }
            }

            #[test]
            fn square_count_commutes(
                (f, g) in (1u64..=96)
                    .prop_flat_map(|q| (weight_strategy(q), weight_strategy(q)))
            ) {
                let p = qr_profile(f.q);
                let ab = weighted_square_count(&f, &g, &p).unwrap();
                let ba = weighted_square_count(&g, &f, &p).unwrap();
                prop_assert!((ab - ba).abs() < 1e-12);
            }
        }
    }
}

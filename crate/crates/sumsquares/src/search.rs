//! Exhaustive and symmetry-reduced search for extremal pairs `A, B` in
//! `Z/qZ` whose sumset avoids quadratic residues, plus the named
//! constructions (mod 3, mod 8, mod 32).
//!
//! The search never enumerates `B`: for a fixed `A` the maximal admissible
//! partner is closed-form, `B_max(A) = Z/qZ \ (QR - A)`, and any valid `B`
//! is contained in it. Fixing `0 in A` removes the translation symmetry
//! and halves the exponent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{qr_profile, Modulus};

/// A subset of `Z/qZ` as a bitmask (`q <= 64`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSet {
    pub q: Modulus,
    pub mask: u64,
}

impl ResidueSet {
    pub fn new(q: Modulus, mask: u64) -> Result<Self> {
        if q.get() > 64 {
            return Err(Error::ModulusTooLarge { q: q.get() });
        }
        let valid = if q.get() == 64 { u64::MAX } else { (1u64 << q.get()) - 1 };
        Ok(ResidueSet {
            q,
            mask: mask & valid,
        })
    }

    pub fn empty(q: Modulus) -> Result<Self> {
        Self::new(q, 0)
    }

    pub fn from_residues(q: Modulus, residues: &[i64]) -> Result<Self> {
        let mut mask = 0u64;
        for &r in residues {
            mask |= 1 << q.reduce(r);
        }
        Self::new(q, mask)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.mask >> self.q.reduce(x) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<u64> {
        (0..self.q.get()).filter(|&x| self.mask >> x & 1 == 1).collect()
    }

    pub fn complement(&self) -> ResidueSet {
        let valid = if self.q.get() == 64 {
            u64::MAX
        } else {
            (1u64 << self.q.get()) - 1
        };
        ResidueSet {
            q: self.q,
            mask: !self.mask & valid,
        }
    }

    /// Cyclic rotate of the mask by `s` positions: `{a + s : a in A}`.
    pub fn translate(&self, s: i64) -> ResidueSet {
        let q = self.q.get();
        let s = self.q.reduce(s);
        let valid = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        let rotated = if s == 0 {
            self.mask
        } else {
            ((self.mask << s) | (self.mask >> (q - s))) & valid
        };
        ResidueSet {
            q: self.q,
            mask: rotated,
        }
    }

    pub fn is_subset_of(&self, other: &ResidueSet) -> bool {
        self.mask & !other.mask == 0
    }
}

/// The set of quadratic residues mod `q` (including 0).
pub fn qr_set(q: Modulus) -> Result<ResidueSet> {
    let profile = qr_profile(q);
    let mut mask = 0u64;
    for (t, &c) in profile.counts.iter().enumerate() {
        if c > 0 {
            mask |= 1 << t;
        }
    }
    ResidueSet::new(q, mask)
}

fn check_same_q(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    if a.q != b.q {
        return Err(Error::ModulusMismatch {
            left: a.q.get(),
            right: b.q.get(),
        });
    }
    Ok(())
}

/// `true` iff `(a + b) mod q` misses every quadratic residue, via an OR of
/// rotated masks. Tests cross-check this against the double loop.
pub fn avoids_squares(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    check_same_q(a, b)?;
    let qr = qr_set(a.q)?;
    let mut sumset = 0u64;
    for x in a.elements() {
        sumset |= b.translate(x as i64).mask;
    }
    Ok(sumset & qr.mask == 0)
}

/// The independent certificate check: plain double loop over `A x B`.
pub fn avoids_squares_double_loop(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    check_same_q(a, b)?;
    let profile = qr_profile(a.q);
    for x in a.elements() {
        for y in b.elements() {
            if profile.is_square(x + y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The unique maximal partner of `A`: `B_max(A) = Z/qZ \ (QR - A)`.
///
/// Antitone in `A`, and covariant under translation:
/// `B_max(A + x) = B_max(A) - x`.
///
/// ```
/// use sumsquares::ring::Modulus;
/// use sumsquares::search::{extremal_partner, ResidueSet};
///
/// let q = Modulus::new(8).unwrap();
/// let a = ResidueSet::from_residues(q, &[0, 1, 5]).unwrap();
/// assert_eq!(extremal_partner(&a).elements(), vec![2, 5, 6]);
/// ```
pub fn extremal_partner(a: &ResidueSet) -> ResidueSet {
    let qr = qr_set(a.q).expect("q <= 64 by construction of ResidueSet");
    let mut forbidden = 0u64;
    for x in a.elements() {
        forbidden |= qr.translate(-(x as i64)).mask;
    }
    ResidueSet {
        q: a.q,
        mask: forbidden,
    }
    .complement()
}

/// How much enumeration a search call may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchBudget {
    /// All `2^q` subsets; allowed for `q <= 16`.
    Exhaustive,
    /// Translation-reduced: `0 in A`, `2^(q-1)` subsets; allowed `q <= 24`.
    Reduced,
}

/// An extremal pair with its certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchWitness {
    pub q: Modulus,
    pub a: ResidueSet,
    pub b: ResidueSet,
    /// `min(|A|, |B|)`.
    pub objective: u32,
    /// Re-verified by the independent double loop.
    pub certified: bool,
    /// Exact within the enumerated regime.
    pub optimal: bool,
}

/// Maximize `min(|A|, |B_max(A)|)` over `A` by direct enumeration.
///
/// Ties break to the lexicographically smallest `(A, B)` masks, so the
/// result is deterministic no matter how the index range is chunked.
pub fn max_bipartite_density(q: Modulus, budget: SearchBudget) -> Result<SearchWitness> {
    match budget {
        SearchBudget::Exhaustive if q.get() > 16 => {
            return Err(Error::BudgetExceeded {
                q: q.get(),
                limit: "exhaustive search allows q <= 16".into(),
            })
        }
        SearchBudget::Reduced if q.get() > 24 => {
            return Err(Error::BudgetExceeded {
                q: q.get(),
                limit: "reduced search allows q <= 24".into(),
            })
        }
        _ => {}
    }
    let n = q.get();
    let qr = qr_set(q)?;
    // per-element forbidden masks: QR - a
    let forbidden: Vec<u64> = (0..n).map(|a| qr.translate(-(a as i64)).mask).collect();
    let valid = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    // enumerate A as `base | (bits << shift)`; reduced mode pins bit 0
    let (base, shift, count) = match budget {
        SearchBudget::Exhaustive => (0u64, 0u32, 1u64 << n),
        SearchBudget::Reduced => (1u64, 1u32, 1u64 << (n - 1)),
    };

    #[derive(Clone, Copy)]
    struct Best {
        objective: u32,
        a: u64,
        b: u64,
    }
    let merge = |x: Best, y: Best| -> Best {
        if y.objective > x.objective
            || (y.objective == x.objective && (y.a, y.b) < (x.a, x.b))
        {
            y
        } else {
            x
        }
    };

    let chunk: u64 = 1 << 16;
    let n_chunks = count.div_ceil(chunk);
    let best = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let mut best = Best {
                objective: 0,
                a: u64::MAX,
                b: u64::MAX,
            };
            let lo = ci * chunk;
            let hi = (lo + chunk).min(count);
            for bits in lo..hi {
                let a_mask = base | (bits << shift);
                let card_a = a_mask.count_ones();
                // min(|A|, .) <= |A|: can't beat the incumbent, only tie,
                // and ties with smaller |A| can't reach the objective
                if card_a < best.objective {
                    continue;
                }
                let mut forb = 0u64;
                let mut rest = a_mask;
                while rest != 0 {
                    let x = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    forb |= forbidden[x];
                }
                let b_mask = !forb & valid;
                let objective = card_a.min(b_mask.count_ones());
                let cand = Best {
                    objective,
                    a: a_mask,
                    b: b_mask,
                };
                best = merge(best, cand);
            }
            best
        })
        .reduce(
            || Best {
                objective: 0,
                a: u64::MAX,
                b: u64::MAX,
            },
            merge,
        );

    let a = ResidueSet::new(q, best.a)?;
    let b = ResidueSet::new(q, best.b)?;
    let certified = avoids_squares_double_loop(&a, &b)?;
    Ok(SearchWitness {
        q,
        a,
        b,
        objective: best.objective,
        certified,
        optimal: true,
    })
}

/// A named construction from the literature, verified on the spot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnownConstruction {
    pub name: String,
    pub q: u64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub verified: bool,
}

/// The classic witnesses: the mod-3 singleton, the Massias mod-32 set
/// (paired with itself), and the mod-8 bipartite pair.
pub fn known_constructions() -> Vec<KnownConstruction> {
    let entries: [(&str, u64, &[i64], &[i64]); 3] = [
        ("mod3_singleton", 3, &[1], &[1]),
        (
            "mod32_massias",
            32,
            &[1, 5, 9, 13, 14, 17, 21, 25, 26, 29, 30],
            &[1, 5, 9, 13, 14, 17, 21, 25, 26, 29, 30],
        ),
        ("mod8_bipartite", 8, &[0, 1, 5], &[2, 5, 6]),
    ];
    entries
        .iter()
        .map(|(name, q, a, b)| {
            let qm = Modulus::new(*q).unwrap();
            let sa = ResidueSet::from_residues(qm, a).unwrap();
            let sb = ResidueSet::from_residues(qm, b).unwrap();
            let verified = avoids_squares(&sa, &sb).unwrap()
                && avoids_squares_double_loop(&sa, &sb).unwrap();
            KnownConstruction {
                name: name.to_string(),
                q: *q,
                a: sa.elements(),
                b: sb.elements(),
                verified,
            }
        })
        .collect()
}

/// `true` iff `(A, B)` is a translate `(A0 + x, B0 - x)` of the reference
/// pair for some `x`.
pub fn translate_equivalent(
    a: &ResidueSet,
    b: &ResidueSet,
    a0: &ResidueSet,
    b0: &ResidueSet,
) -> bool {
    (0..a.q.get() as i64)
        .any(|x| a0.translate(x) == *a && b0.translate(-x) == *b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u64) -> Modulus {
        Modulus::new(q).unwrap()
    }

    fn set(q: u64, xs: &[i64]) -> ResidueSet {
        ResidueSet::from_residues(m(q), xs).unwrap()
    }

    #[test]
    fn qr_sets() {
        assert_eq!(qr_set(m(3)).unwrap().elements(), vec![0, 1]);
        assert_eq!(qr_set(m(8)).unwrap().elements(), vec![0, 1, 4]);
        assert_eq!(
            qr_set(m(32)).unwrap().elements(),
            vec![0, 1, 4, 9, 16, 17, 25]
        );
    }

    #[test]
    fn avoids_examples() {
        assert!(avoids_squares(&set(8, &[0, 1, 5]), &set(8, &[2, 5, 6])).unwrap());
        assert!(avoids_squares(&set(3, &[1]), &set(3, &[1])).unwrap());
        assert!(!avoids_squares(&set(8, &[0, 1, 5]), &set(8, &[2, 5, 6, 7])).unwrap());
    }

    #[test]
    fn avoids_modulus_mismatch() {
        assert!(matches!(
            avoids_squares(&set(8, &[0]), &set(12, &[0])),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn mask_agrees_with_double_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..1000 {
            let q = rng.gen_range(1u64..=64);
            let a = ResidueSet::new(m(q), rng.gen()).unwrap();
            let b = ResidueSet::new(m(q), rng.gen()).unwrap();
            assert_eq!(
                avoids_squares(&a, &b).unwrap(),
                avoids_squares_double_loop(&a, &b).unwrap(),
                "q={q} a={:#x} b={:#x}",
                a.mask,
                b.mask
            );
        }
    }

    #[test]
    fn partner_examples() {
        assert_eq!(extremal_partner(&set(8, &[0, 1, 5])), set(8, &[2, 5, 6]));
        assert_eq!(extremal_partner(&set(8, &[0, 1, 4])), set(8, &[2, 6]));
        let empty = ResidueSet::empty(m(8)).unwrap();
        assert_eq!(extremal_partner(&empty).len(), 8);
    }

    #[test]
    fn partner_translation_covariance() {
        for q in [8u64, 12, 24, 32] {
            let a = set(q, &[0, 1, 5]);
            for x in 0..q as i64 {
                assert_eq!(
                    extremal_partner(&a.translate(x)),
                    extremal_partner(&a).translate(-x)
                );
            }
        }
    }

    #[test]
    fn partner_antitone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for _ in 0..200 {
            let q = rng.gen_range(2u64..=32);
            let big = ResidueSet::new(m(q), rng.gen()).unwrap();
            let small = ResidueSet::new(m(q), big.mask & rng.gen::<u64>()).unwrap();
            assert!(extremal_partner(&big).is_subset_of(&extremal_partner(&small)));
        }
    }

    #[test]
    fn partner_is_maximal_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..200 {
            let q = rng.gen_range(1u64..=24);
            let a = ResidueSet::new(m(q), rng.gen()).unwrap();
            let b = extremal_partner(&a);
            assert!(avoids_squares_double_loop(&a, &b).unwrap());
            // adding any further element breaks avoidance (when A nonempty)
            if !a.is_empty() {
                for x in b.complement().elements() {
                    let bigger =
                        ResidueSet::new(m(q), b.mask | (1 << x)).unwrap();
                    assert!(!avoids_squares_double_loop(&a, &bigger).unwrap());
                }
            }
        }
    }

    #[test]
    fn search_q3() {
        let w = max_bipartite_density(m(3), SearchBudget::Exhaustive).unwrap();
        assert_eq!(w.objective, 1);
        assert!(w.certified);
    }

    #[test]
    fn search_q8() {
        let w = max_bipartite_density(m(8), SearchBudget::Exhaustive).unwrap();
        assert_eq!(w.objective, 3);
        assert!(w.certified);
        assert!(translate_equivalent(
            &w.a,
            &w.b,
            &set(8, &[0, 1, 5]),
            &set(8, &[2, 5, 6])
        ));
    }

    #[test]
    fn search_q8_unique_up_to_translation() {
        // every optimal witness is a translate of the canonical pair
        let q = m(8);
        let a0 = set(8, &[0, 1, 5]);
        let b0 = set(8, &[2, 5, 6]);
        for mask in 0u64..256 {
            let a = ResidueSet::new(q, mask).unwrap();
            let b = extremal_partner(&a);
            if a.len().min(b.len()) >= 3 {
                // any valid B of size >= 3 sits inside b; check pair class
                assert!(
                    (0..8).any(|x| a0.translate(x) == a && b0.translate(-x) == b),
                    "unexpected optimal witness A={:?} B={:?}",
                    a.elements(),
                    b.elements()
                );
            }
        }
    }

    #[test]
    fn search_objective_translation_invariant() {
        let q = m(12);
        let mut best = 0;
        for mask in 0u64..(1 << 12) {
            let a = ResidueSet::new(q, mask).unwrap();
            best = best.max(a.len().min(extremal_partner(&a).len()));
        }
        let w = max_bipartite_density(q, SearchBudget::Exhaustive).unwrap();
        assert_eq!(w.objective, best);
        // reduced search agrees
        let wr = max_bipartite_density(q, SearchBudget::Reduced).unwrap();
        assert_eq!(wr.objective, best);
    }

    #[test]
    fn search_budget_errors() {
        assert!(matches!(
            max_bipartite_density(m(20), SearchBudget::Exhaustive),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            max_bipartite_density(m(30), SearchBudget::Reduced),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn known_constructions_verify() {
        let list = known_constructions();
        assert_eq!(list.len(), 3);
        assert!(list.iter().all(|c| c.verified));
    }
}

//! Beatty sequences with exact irrational densities.
//!
//! For an irrational density α in (0, 1), the sequence lists ⌊n/α⌋ for
//! n ≥ 1 (with the convention that index 0 maps to 0). Membership, counting,
//! and gap structure all reduce to exact floor computations; hot paths use
//! cached dyadic enclosures with an exact fallback, so no answer ever depends
//! on approximation error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exact_reals::{delta, FieldElement, FloorBounds};

/// Precision of the cached dyadic enclosures backing fast floors.
const FLOOR_BITS: u32 = 96;

#[derive(Debug, Error)]
pub enum BeattyError {
    #[error("density must lie strictly between 0 and 1")]
    OutOfRange,
    #[error("density must be irrational")]
    RationalDensity,
    #[error("densities do not sum to 1")]
    BadSum,
}

/// An exact irrational density in (0, 1).
#[derive(Clone, Debug)]
pub struct Density {
    value: FieldElement,
}

impl Density {
    pub fn new(value: FieldElement) -> Result<Density, BeattyError> {
        if value.sign() <= 0 || value.add_rat(&-BigRational::one()).sign() >= 0 {
            return Err(BeattyError::OutOfRange);
        }
        if value.is_rational() {
            return Err(BeattyError::RationalDensity);
        }
        Ok(Density { value })
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }
}

/// Certificate that two Beatty sequences are disjoint: positive integers
/// with r·α + s·β = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisjointnessWitness {
    pub r: u64,
    pub s: u64,
}

/// How a member's successor follows it: at distance k = ⌊1/α⌋ or k+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapClass {
    NotMember,
    GapK,
    GapK1,
}

pub struct BeattySequence {
    density: Density,
    reciprocal: FieldElement,
    density_floors: FloorBounds,
    reciprocal_floors: FloorBounds,
    /// k = ⌊1/α⌋, the short gap length.
    k: u64,
    /// {1/α}·α, the gap-class threshold for successor distances.
    gap_threshold: FieldElement,
}

impl BeattySequence {
    pub fn new(density: Density) -> BeattySequence {
        let reciprocal = density.value.inv();
        let k = reciprocal.floor().to_u64().expect("1/density fits u64");
        let gap_threshold = &reciprocal.frac() * density.value();
        let density_floors = FloorBounds::new(&density.value, FLOOR_BITS);
        let reciprocal_floors = FloorBounds::new(&reciprocal, FLOOR_BITS);
        BeattySequence {
            density,
            reciprocal,
            density_floors,
            reciprocal_floors,
            k,
            gap_threshold,
        }
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn reciprocal(&self) -> &FieldElement {
        &self.reciprocal
    }

    /// The n-th term ⌊n/α⌋; index 0 maps to 0.
    pub fn term(&self, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        self.reciprocal_floors.floor_mul(n)
    }

    /// Number of members ≤ m, equal to ⌊α(m+1)⌋.
    pub fn count(&self, m: u64) -> u64 {
        self.density_floors.floor_mul(m + 1)
    }

    /// Whether m ≥ 1 is a member; equivalent to {(m+1)α} < α.
    pub fn contains(&self, m: u64) -> bool {
        debug_assert!(m >= 1);
        self.count(m) > self.count(m - 1)
    }

    /// Distance to the next term: always k or k+1 with k = ⌊1/α⌋.
    pub fn gap(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        let g = self.term(n + 1) - self.term(n);
        debug_assert!(g == self.k || g == self.k + 1);
        g
    }

    /// Exact fractional part {(m+1)α}.
    pub fn frac_successor(&self, m: u64) -> FieldElement {
        self.density
            .value
            .mul_rat(&BigRational::from(BigInt::from(m + 1)))
            .add_rat(&-BigRational::from(BigInt::from(self.count(m))))
    }

    /// Classifies the gap from member m to its successor without computing
    /// the successor: short gap iff {(m+1)α} exceeds the threshold {1/α}·α.
    pub fn successor_gap_class(&self, m: u64) -> GapClass {
        debug_assert!(m >= 1);
        if !self.contains(m) {
            return GapClass::NotMember;
        }
        let u = self.frac_successor(m);
        match u.cmp_exact(&self.gap_threshold) {
            std::cmp::Ordering::Less => GapClass::GapK1,
            std::cmp::Ordering::Greater => GapClass::GapK,
            std::cmp::Ordering::Equal => {
                unreachable!("gap threshold equality is impossible for irrational density")
            }
        }
    }
}

/// Searches for positive integers (r, s) with r·α + s·β = 1; such a pair
/// exists iff the two sequences are disjoint. The search is finite: r·α < 1
/// and s ≥ 1 force r ≤ ⌊(1−β)/α⌋.
pub fn disjointness_witness(alpha: &Density, beta: &Density) -> Option<DisjointnessWitness> {
    let one = FieldElement::one(alpha.value.field());
    let r_max = (&(&one - beta.value()) / alpha.value()).floor();
    let r_max = r_max.to_u64().unwrap_or(0);
    for r in 1..=r_max {
        let rest = &one - &alpha.value.mul_rat(&BigRational::from(BigInt::from(r)));
        let s_elem = &rest / beta.value();
        if let Some(s) = s_elem.as_rational() {
            if s.is_integer() && s.is_positive() {
                let s = s.to_integer().to_u64().expect("witness fits u64");
                return Some(DisjointnessWitness { r, s });
            }
        }
    }
    None
}

/// The counting identity for a partition-compatible triple: the three
/// counting functions at m fall short of m by exactly δ({(m+1)α}, {(m+1)β}).
/// Returns that defect (0 or 1).
pub fn counting_identity_defect(
    alpha: &BeattySequence,
    beta: &BeattySequence,
    gamma: &BeattySequence,
    m: u64,
) -> Result<u8, BeattyError> {
    let sum = &(alpha.density.value() + beta.density.value()) + gamma.density.value();
    if sum != FieldElement::one(sum.field()) {
        return Err(BeattyError::BadSum);
    }
    let u = alpha.frac_successor(m);
    let v = beta.frac_successor(m);
    let d = delta(&u, &v).expect("fractional parts lie in [0,1)");
    assert_eq!(
        alpha.count(m) + beta.count(m) + gamma.count(m),
        m - u64::from(d),
        "counting identity violated at m={m}"
    );
    Ok(d)
}

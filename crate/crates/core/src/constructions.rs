//! Three-sequence almost Beatty partitions.
//!
//! Given irrational densities α + β + γ = 1, four constructions partition the
//! positive integers into three sequences, each within bounded distance of an
//! exact Beatty sequence:
//!
//! * Theorem 1: B_α and B_β exact (they must be disjoint), the third sequence
//!   is their complement.
//! * Theorem 2: B_α exact, the other two obtained by iterated floors
//!   b̃(n) = ⌊⌊((1−α)/β)·n⌋ / (1−α)⌋ and likewise with γ.
//! * Theorem 3: B_α exact, b̃(n) = b(n) − 1 exactly when b(n) collides with
//!   B_α, third sequence the complement (requires γ > max(α, β)).
//! * Theorem 4: the equal-density case α = β, with b̃(n) = b(n) − 1 always.
//!
//! Perturbation records compare each almost sequence against its reference
//! exact Beatty sequence; the error convention is exact − perturbed, which is
//! nonnegative in every construction here.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::beatty::{disjointness_witness, BeattyError, BeattySequence, Density, DisjointnessWitness};
use crate::exact_reals::{FieldElement, FloorBounds};

const FLOOR_BITS: u32 = 96;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid density: {0}")]
    InvalidDensity(#[from] BeattyError),
    #[error("the two exact sequences intersect; no disjointness witness exists")]
    NotDisjoint,
    #[error("beta/gamma is rational; the iterated-floor construction does not apply")]
    RatioRational,
    #[error("gamma must exceed both alpha and beta")]
    GammaNotLargest,
    #[error("alpha and beta must be equal")]
    DensitiesNotEqual,
    #[error("requested role is not present in this partition")]
    RoleNotPresent,
}

/// Exact densities with α + β + γ = 1.
pub struct DensityTriple {
    alpha: Density,
    beta: Density,
    gamma: Density,
}

impl DensityTriple {
    pub fn new(
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
    ) -> Result<DensityTriple, ConstructionError> {
        let sum = &(&alpha + &beta) + &gamma;
        if sum != FieldElement::one(sum.field()) {
            return Err(ConstructionError::InvalidDensity(BeattyError::BadSum));
        }
        Ok(DensityTriple {
            alpha: Density::new(alpha)?,
            beta: Density::new(beta)?,
            gamma: Density::new(gamma)?,
        })
    }

    pub fn alpha(&self) -> &Density {
        &self.alpha
    }

    pub fn beta(&self) -> &Density {
        &self.beta
    }

    pub fn gamma(&self) -> &Density {
        &self.gamma
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceRole {
    ExactAlpha,
    ExactBeta,
    AlmostBeta,
    AlmostGamma,
}

/// One index of an almost sequence compared against its exact reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerturbationRecord {
    pub n: u64,
    pub exact_term: u64,
    pub perturbed_term: u64,
    pub error: u64,
}

/// Iterated-floor term rule: n ↦ ⌊ outer · ⌊ inner · n ⌋ ⌋.
struct IteratedFloor {
    inner: FloorBounds,
    outer: FloorBounds,
}

impl IteratedFloor {
    fn term(&self, n: u64) -> u64 {
        self.outer.floor_mul(self.inner.floor_mul(n))
    }
}

enum BetaKind {
    Exact,
    Iterated(IteratedFloor),
    /// b̃(n) = b(n) − 1 iff b(n) ∈ B_α.
    Dodge,
    /// b̃(n) = b(n) − 1 always.
    ShiftDown,
}

enum GammaKind {
    Complement,
    Iterated(IteratedFloor),
}

pub struct AlmostBeattyPartition {
    triple: DensityTriple,
    construction: Construction,
    alpha_seq: BeattySequence,
    beta_seq: BeattySequence,
    gamma_seq: BeattySequence,
    beta_kind: BetaKind,
    gamma_kind: GammaKind,
    witness: Option<DisjointnessWitness>,
}

/// ⌊(2−x)/(1−x)⌋ for a density x, the error bound driver shared by
/// Theorems 1 and 2.
fn bound_part(x: &Density) -> u64 {
    let one = FieldElement::one(x.value().field());
    let two = FieldElement::from_integer(x.value().field(), 2);
    (&(&two - x.value()) / &(&one - x.value()))
        .floor()
        .to_u64()
        .expect("bound fits u64")
}

pub fn theorem1_error_bound(alpha: &Density, beta: &Density) -> u64 {
    bound_part(alpha).max(bound_part(beta))
}

pub fn theorem2_error_bound(alpha: &Density) -> u64 {
    bound_part(alpha)
}

fn iterated_floor_rule(alpha: &Density, target: &Density) -> IteratedFloor {
    let one = FieldElement::one(alpha.value().field());
    let one_minus_alpha = &one - alpha.value();
    let inner = &one_minus_alpha / target.value();
    let outer = one_minus_alpha.inv();
    IteratedFloor {
        inner: FloorBounds::new(&inner, FLOOR_BITS),
        outer: FloorBounds::new(&outer, FLOOR_BITS),
    }
}

pub fn build_theorem1(triple: DensityTriple) -> Result<AlmostBeattyPartition, ConstructionError> {
    let witness = disjointness_witness(&triple.alpha, &triple.beta)
        .ok_or(ConstructionError::NotDisjoint)?;
    Ok(AlmostBeattyPartition {
        alpha_seq: BeattySequence::new(triple.alpha.clone()),
        beta_seq: BeattySequence::new(triple.beta.clone()),
        gamma_seq: BeattySequence::new(triple.gamma.clone()),
        triple,
        construction: Construction::Thm1,
        beta_kind: BetaKind::Exact,
        gamma_kind: GammaKind::Complement,
        witness: Some(witness),
    })
}

pub fn build_theorem2(triple: DensityTriple) -> Result<AlmostBeattyPartition, ConstructionError> {
    let ratio = triple.beta.value() / triple.gamma.value();
    if ratio.is_rational() {
        return Err(ConstructionError::RatioRational);
    }
    let beta_rule = iterated_floor_rule(&triple.alpha, &triple.beta);
    let gamma_rule = iterated_floor_rule(&triple.alpha, &triple.gamma);
    Ok(AlmostBeattyPartition {
        alpha_seq: BeattySequence::new(triple.alpha.clone()),
        beta_seq: BeattySequence::new(triple.beta.clone()),
        gamma_seq: BeattySequence::new(triple.gamma.clone()),
        triple,
        construction: Construction::Thm2,
        beta_kind: BetaKind::Iterated(beta_rule),
        gamma_kind: GammaKind::Iterated(gamma_rule),
        witness: None,
    })
}

pub fn build_theorem3(triple: DensityTriple) -> Result<AlmostBeattyPartition, ConstructionError> {
    let g = triple.gamma.value();
    if g.cmp_exact(triple.alpha.value()) != std::cmp::Ordering::Greater
        || g.cmp_exact(triple.beta.value()) != std::cmp::Ordering::Greater
    {
        return Err(ConstructionError::GammaNotLargest);
    }
    Ok(AlmostBeattyPartition {
        alpha_seq: BeattySequence::new(triple.alpha.clone()),
        beta_seq: BeattySequence::new(triple.beta.clone()),
        gamma_seq: BeattySequence::new(triple.gamma.clone()),
        triple,
        construction: Construction::Thm3,
        beta_kind: BetaKind::Dodge,
        gamma_kind: GammaKind::Complement,
        witness: None,
    })
}

pub fn build_theorem4(triple: DensityTriple) -> Result<AlmostBeattyPartition, ConstructionError> {
    if triple.alpha.value() != triple.beta.value() {
        return Err(ConstructionError::DensitiesNotEqual);
    }
    Ok(AlmostBeattyPartition {
        alpha_seq: BeattySequence::new(triple.alpha.clone()),
        beta_seq: BeattySequence::new(triple.beta.clone()),
        gamma_seq: BeattySequence::new(triple.gamma.clone()),
        triple,
        construction: Construction::Thm4,
        beta_kind: BetaKind::ShiftDown,
        gamma_kind: GammaKind::Complement,
        witness: None,
    })
}

/// Result of the exactly-once coverage and monotonicity check over [1, N].
#[derive(Clone, Copy, Debug)]
pub struct CoverageReport {
    pub checked_to: u64,
    /// Smallest integer covered a number of times other than once,
    /// with its coverage count.
    pub violation: Option<(u64, usize)>,
}

impl AlmostBeattyPartition {
    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn triple(&self) -> &DensityTriple {
        &self.triple
    }

    pub fn disjointness_witness(&self) -> Option<DisjointnessWitness> {
        self.witness
    }

    pub fn roles(&self) -> [SequenceRole; 3] {
        let beta_role = match self.beta_kind {
            BetaKind::Exact => SequenceRole::ExactBeta,
            _ => SequenceRole::AlmostBeta,
        };
        [SequenceRole::ExactAlpha, beta_role, SequenceRole::AlmostGamma]
    }

    fn has_role(&self, role: SequenceRole) -> bool {
        self.roles().contains(&role)
    }

    /// The exact Beatty sequence a role approximates (itself, for exact roles).
    pub fn exact_reference(&self, role: SequenceRole) -> &BeattySequence {
        match role {
            SequenceRole::ExactAlpha => &self.alpha_seq,
            SequenceRole::ExactBeta | SequenceRole::AlmostBeta => &self.beta_seq,
            SequenceRole::AlmostGamma => &self.gamma_seq,
        }
    }

    fn beta_term(&self, n: u64) -> u64 {
        let b = self.beta_seq.term(n);
        match &self.beta_kind {
            BetaKind::Exact => b,
            BetaKind::Iterated(rule) => rule.term(n),
            BetaKind::Dodge => {
                if self.alpha_seq.contains(b) {
                    b - 1
                } else {
                    b
                }
            }
            BetaKind::ShiftDown => b - 1,
        }
    }

    /// First `n_max` terms of the role's sequence.
    pub fn terms(&self, role: SequenceRole, n_max: u64) -> Result<Vec<u64>, ConstructionError> {
        if !self.has_role(role) {
            return Err(ConstructionError::RoleNotPresent);
        }
        match role {
            SequenceRole::ExactAlpha => {
                Ok((1..=n_max).map(|n| self.alpha_seq.term(n)).collect())
            }
            SequenceRole::ExactBeta | SequenceRole::AlmostBeta => {
                Ok((1..=n_max).map(|n| self.beta_term(n)).collect())
            }
            SequenceRole::AlmostGamma => match &self.gamma_kind {
                GammaKind::Iterated(rule) => Ok((1..=n_max).map(|n| rule.term(n)).collect()),
                GammaKind::Complement => Ok(self.complement_terms(n_max)),
            },
        }
    }

    /// All terms of the role's sequence that are ≤ `limit`, in order.
    pub fn terms_up_to(
        &self,
        role: SequenceRole,
        limit: u64,
    ) -> Result<Vec<u64>, ConstructionError> {
        if !self.has_role(role) {
            return Err(ConstructionError::RoleNotPresent);
        }
        let direct: Option<Box<dyn Fn(u64) -> u64 + '_>> = match role {
            SequenceRole::ExactAlpha => Some(Box::new(|n| self.alpha_seq.term(n))),
            SequenceRole::ExactBeta | SequenceRole::AlmostBeta => {
                Some(Box::new(|n| self.beta_term(n)))
            }
            SequenceRole::AlmostGamma => match &self.gamma_kind {
                GammaKind::Iterated(rule) => Some(Box::new(|n| rule.term(n))),
                GammaKind::Complement => None,
            },
        };
        match direct {
            Some(term) => {
                let mut out = vec![];
                for n in 1.. {
                    let t = term(n);
                    if t > limit {
                        break;
                    }
                    out.push(t);
                }
                Ok(out)
            }
            None => {
                let mut out = vec![];
                let mut na = 1u64;
                let mut ta = self.alpha_seq.term(1);
                let mut nb = 1u64;
                let mut tb = self.beta_term(1);
                for m in 1..=limit {
                    while ta < m {
                        na += 1;
                        ta = self.alpha_seq.term(na);
                    }
                    while tb < m {
                        nb += 1;
                        tb = self.beta_term(nb);
                    }
                    if m != ta && m != tb {
                        out.push(m);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Enumerates the complement of the first two member sequences.
    fn complement_terms(&self, n_max: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(n_max as usize);
        let mut na = 1u64;
        let mut ta = self.alpha_seq.term(1);
        let mut nb = 1u64;
        let mut tb = self.beta_term(1);
        let mut m = 1u64;
        while (out.len() as u64) < n_max {
            while ta < m {
                na += 1;
                ta = self.alpha_seq.term(na);
            }
            while tb < m {
                nb += 1;
                tb = self.beta_term(nb);
            }
            if m != ta && m != tb {
                out.push(m);
            }
            m += 1;
        }
        out
    }

    /// Per-index comparison of an almost sequence with its exact reference.
    pub fn perturbations(
        &self,
        role: SequenceRole,
        n_max: u64,
    ) -> Result<Vec<PerturbationRecord>, ConstructionError> {
        if !self.has_role(role)
            || matches!(role, SequenceRole::ExactAlpha | SequenceRole::ExactBeta)
        {
            return Err(ConstructionError::RoleNotPresent);
        }
        let reference = self.exact_reference(role);
        let perturbed = self.terms(role, n_max)?;
        Ok(perturbed
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let n = i as u64 + 1;
                let exact = reference.term(n);
                assert!(exact >= p, "negative perturbation error at n={n}");
                PerturbationRecord {
                    n,
                    exact_term: exact,
                    perturbed_term: p,
                    error: exact - p,
                }
            })
            .collect())
    }

    /// The construction's stated bound on perturbation errors for a role.
    pub fn error_bound(&self, role: SequenceRole) -> Option<u64> {
        match (self.construction, role) {
            (Construction::Thm1, SequenceRole::AlmostGamma) => {
                Some(theorem1_error_bound(&self.triple.alpha, &self.triple.beta))
            }
            (Construction::Thm2, SequenceRole::AlmostBeta | SequenceRole::AlmostGamma) => {
                Some(theorem2_error_bound(&self.triple.alpha))
            }
            (Construction::Thm3, SequenceRole::AlmostBeta) => Some(1),
            (Construction::Thm3, SequenceRole::AlmostGamma) => Some(2),
            (Construction::Thm4, SequenceRole::AlmostBeta) => Some(1),
            (Construction::Thm4, SequenceRole::AlmostGamma) => Some(1),
            _ => None,
        }
    }

    /// Verifies that each integer in [1, limit] belongs to exactly one member
    /// sequence and that every member sequence is strictly increasing.
    pub fn coverage(&self, limit: u64) -> CoverageReport {
        let mut streams: Vec<Box<dyn Iterator<Item = u64> + '_>> = vec![];
        for role in self.roles() {
            match role {
                SequenceRole::ExactAlpha => {
                    streams.push(Box::new((1..).map(|n| self.alpha_seq.term(n))));
                }
                SequenceRole::ExactBeta | SequenceRole::AlmostBeta => {
                    streams.push(Box::new((1..).map(|n| self.beta_term(n))));
                }
                SequenceRole::AlmostGamma => match &self.gamma_kind {
                    GammaKind::Iterated(rule) => {
                        streams.push(Box::new((1..).map(|n| rule.term(n))));
                    }
                    GammaKind::Complement => {} // implied by the other two
                },
            }
        }
        let complement = matches!(self.gamma_kind, GammaKind::Complement);
        let mut heads: Vec<u64> = vec![];
        let mut last: Vec<Option<u64>> = vec![None; streams.len()];
        for s in streams.iter_mut() {
            heads.push(s.next().unwrap());
        }
        for m in 1..=limit {
            let mut covered = 0usize;
            for (i, s) in streams.iter_mut().enumerate() {
                while heads[i] < m {
                    assert!(
                        last[i].map_or(true, |p| p < heads[i]),
                        "member sequence not strictly increasing at {}",
                        heads[i]
                    );
                    last[i] = Some(heads[i]);
                    heads[i] = s.next().unwrap();
                }
                if heads[i] == m {
                    covered += 1;
                }
            }
            if complement {
                // The third sequence is by definition everything uncovered, so
                // only double coverage by the first two can fail.
                if covered > 1 {
                    return CoverageReport { checked_to: limit, violation: Some((m, covered)) };
                }
            } else if covered != 1 {
                return CoverageReport { checked_to: limit, violation: Some((m, covered)) };
            }
        }
        CoverageReport { checked_to: limit, violation: None }
    }
}

/// Convenience: a triple whose densities are the reciprocals the builders
/// expect, from already-parsed elements (all in one field).
pub fn triple_from_elements(
    alpha: &FieldElement,
    beta: &FieldElement,
    gamma: &FieldElement,
) -> Result<DensityTriple, ConstructionError> {
    DensityTriple::new(alpha.clone(), beta.clone(), gamma.clone())
}

/// The gamma density 1 − α − β, for callers specifying only α and β.
pub fn complement_density(alpha: &FieldElement, beta: &FieldElement) -> FieldElement {
    let one = FieldElement::one(alpha.field());
    &(&one - alpha) - beta
}

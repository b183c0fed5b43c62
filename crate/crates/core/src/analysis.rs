//! Error analytics for the complement-based construction.
//!
//! The state variables are the fractional parts u = {(m+1)α}, v = {(m+1)β},
//! w = {(m+1)γ}. Membership of m in each sequence, the counting defects of
//! the almost sequences, and the perturbation error of the complement
//! sequence are all decided by the position of (u, v) in the unit square.
//! Every comparison here reduces to integer floor comparisons on cached
//! dyadic enclosures (with exact fallback), so scans to large horizons stay
//! cheap without ever trusting an approximation.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::beatty::BeattySequence;
use crate::constructions::{AlmostBeattyPartition, DensityTriple, SequenceRole};
use crate::exact_reals::FieldElement;

/// The fractional parts driving all membership and error criteria at index m.
pub struct FractionalTriple {
    pub u: FieldElement,
    pub v: FieldElement,
    pub w: FieldElement,
}

/// Where (u, v) falls for an integer in the complement sequence; the region
/// index equals the perturbation error of the term equal to that integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    R0,
    R1,
    R2,
    NotInAlmostGamma,
}

/// Cached sequences for scanning a fixed triple.
pub struct Analyzer {
    a: BeattySequence,
    b: BeattySequence,
    g: BeattySequence,
}

impl Analyzer {
    pub fn new(triple: &DensityTriple) -> Analyzer {
        Analyzer {
            a: BeattySequence::new(triple.alpha().clone()),
            b: BeattySequence::new(triple.beta().clone()),
            g: BeattySequence::new(triple.gamma().clone()),
        }
    }

    pub fn fractional_triple(&self, m: u64) -> FractionalTriple {
        let u = self.a.frac_successor(m);
        let v = self.b.frac_successor(m);
        let w = self.g.frac_successor(m);
        debug_assert_eq!(
            w,
            &FieldElement::one(w.field()) - &(&u + &v).frac(),
            "fractional parts of a unit-sum triple are inconsistent"
        );
        FractionalTriple { u, v, w }
    }

    /// Carry of u + v, i.e. 1 iff u + v > 1; computed from floors alone:
    /// ⌊(m+1)α⌋ + ⌊(m+1)β⌋ + ⌊(m+1)γ⌋ = m − δ.
    fn delta_uv(&self, m: u64) -> u8 {
        let d = m - self.a.count(m) - self.b.count(m) - self.g.count(m);
        debug_assert!(d <= 1);
        d as u8
    }

    /// Whether u + v > 1 + γ, via (m+2)γ < m − ⌊(m+1)α⌋ − ⌊(m+1)β⌋.
    fn sum_exceeds_one_plus_gamma(&self, m: u64) -> bool {
        self.g.count(m + 1) < m - self.a.count(m) - self.b.count(m)
    }

    /// Counting defect of the dodging beta sequence: 1 iff u > 1−α and
    /// v > 1−β, which is exactly joint membership of m+1 in B_α and B_β.
    pub fn e_beta(&self, m: u64) -> u8 {
        u8::from(self.a.contains(m + 1) && self.b.contains(m + 1))
    }

    /// Counting defect of the complement sequence: 1 iff u + v > 1 and
    /// not (u > 1−α and v > 1−β). Never −1.
    pub fn e_gamma(&self, m: u64) -> u8 {
        u8::from(self.delta_uv(m) == 1 && self.e_beta(m) == 0)
    }

    /// Whether m lies in the complement sequence of the dodging construction:
    /// u > α and v > β (m is in neither exact sequence) and m was not claimed
    /// by the dodge (m+1 jointly in B_α and B_β).
    pub fn in_almost_gamma(&self, m: u64) -> bool {
        !self.a.contains(m) && !self.b.contains(m) && self.e_beta(m) == 0
    }

    pub fn classify_region(&self, m: u64) -> RegionLabel {
        if !self.in_almost_gamma(m) {
            return RegionLabel::NotInAlmostGamma;
        }
        if self.delta_uv(m) == 0 {
            RegionLabel::R0
        } else if self.sum_exceeds_one_plus_gamma(m) {
            RegionLabel::R2
        } else {
            RegionLabel::R1
        }
    }
}

/// The limiting frequencies of perturbation errors 0, 1, 2, valid when
/// 1, α, β are linearly independent over Q: P0 = γ/2,
/// P1 = 1 − (α²+β²+γ²)/(2γ), P2 = (α²+β²)/(2γ).
pub fn predicted_densities(
    triple: &DensityTriple,
) -> (FieldElement, FieldElement, FieldElement) {
    let a = triple.alpha().value();
    let b = triple.beta().value();
    let g = triple.gamma().value();
    let half = BigRational::new(1.into(), 2.into());
    let two_g_inv = g.mul_rat(&BigRational::from(num_bigint::BigInt::from(2))).inv();
    let sq_ab = &(a * a) + &(b * b);
    let sq_all = &sq_ab + &(g * g);
    let p0 = g.mul_rat(&half);
    let p1 = &FieldElement::one(a.field()) - &(&sq_all * &two_g_inv);
    let p2 = &sq_ab * &two_g_inv;
    debug_assert_eq!(
        &(&p0 + &p1) + &p2,
        FieldElement::one(a.field()),
        "predicted densities must sum to 1"
    );
    (p0, p1, p2)
}

/// Observed error frequencies against the predicted limits.
pub struct DensityEstimate {
    pub n_max: u64,
    pub counts: [u64; 3],
    pub empirical: [f64; 3],
    pub predicted: [FieldElement; 3],
}

pub fn empirical_densities(partition: &AlmostBeattyPartition, n_max: u64) -> DensityEstimate {
    let mut counts = [0u64; 3];
    for rec in partition
        .perturbations(SequenceRole::AlmostGamma, n_max)
        .expect("partition has a complement sequence")
    {
        counts[rec.error as usize] += 1;
    }
    assert_eq!(counts.iter().sum::<u64>(), n_max);
    let (p0, p1, p2) = predicted_densities(partition.triple());
    DensityEstimate {
        n_max,
        counts,
        empirical: counts.map(|c| c as f64 / n_max as f64),
        predicted: [p0, p1, p2],
    }
}

/// A consecutive pattern m ∈ B_α, m+1 ∈ B_β ∩ B_γ, m+2 ∈ B_α. Such a
/// pattern rules out any partition keeping B_α exact while perturbing the
/// other two sequences by at most 1.
#[derive(Clone, Copy, Debug)]
pub struct WitnessReport {
    pub m: u64,
    pub m_in_alpha: bool,
    pub succ_in_beta: bool,
    pub succ_in_gamma: bool,
    pub succ2_in_alpha: bool,
}

impl WitnessReport {
    pub fn all_verified(&self) -> bool {
        self.m_in_alpha && self.succ_in_beta && self.succ_in_gamma && self.succ2_in_alpha
    }
}

/// Smallest m ≤ limit completing the blocking pattern, if any.
pub fn find_theorem5_witness(triple: &DensityTriple, limit: u64) -> Option<WitnessReport> {
    let an = Analyzer::new(triple);
    for m in 1..=limit {
        if an.a.contains(m)
            && an.b.contains(m + 1)
            && an.g.contains(m + 1)
            && an.a.contains(m + 2)
        {
            return Some(WitnessReport {
                m,
                m_in_alpha: true,
                succ_in_beta: true,
                succ_in_gamma: true,
                succ2_in_alpha: true,
            });
        }
    }
    None
}

/// Checks that the witness really blocks every placement of m+1: it is
/// demanded by both non-alpha sequences at once, and shifting it to m or
/// m+2 collides with the exact alpha sequence.
pub fn witness_blocks(triple: &DensityTriple, report: &WitnessReport) -> bool {
    let an = Analyzer::new(triple);
    let m = report.m;
    an.a.contains(m)
        && an.a.contains(m + 2)
        && an.b.contains(m + 1)
        && an.g.contains(m + 1)
}

/// Decides whether 1 and the given elements are linearly independent over Q,
/// by ranking their coefficient vectors (all elements must share a field).
pub fn rationally_independent_with_one(elems: &[&FieldElement]) -> bool {
    let degree = elems.first().map_or(1, |e| e.field().degree());
    let mut rows: Vec<Vec<BigRational>> = vec![{
        let mut one = vec![BigRational::zero(); degree];
        one[0] = BigRational::one();
        one
    }];
    for e in elems {
        rows.push(e.coeffs().to_vec());
    }
    rational_rank(rows) == elems.len() + 1
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for c in col..cols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let sub = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - &sub;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Vertex lists (exact coordinates in the unit square) for the three error
/// regions, bounded by u = α, u = 1−α, v = β, v = 1−β, u+v = 1, u+v = 1+γ.
pub struct RegionGeometry {
    pub r0: Vec<Vec<(FieldElement, FieldElement)>>,
    pub r1: Vec<Vec<(FieldElement, FieldElement)>>,
    pub r2: Vec<Vec<(FieldElement, FieldElement)>>,
}

pub fn region_polygons(triple: &DensityTriple) -> RegionGeometry {
    let a = triple.alpha().value().clone();
    let b = triple.beta().value().clone();
    let g = triple.gamma().value().clone();
    let one = FieldElement::one(a.field());
    let ca = &one - &a; // 1 − α
    let cb = &one - &b; // 1 − β
    let r0 = vec![vec![
        (a.clone(), b.clone()),
        (cb.clone(), b.clone()),
        (a.clone(), ca.clone()),
    ]];
    let r1 = vec![vec![
        (cb.clone(), b.clone()),
        (one.clone(), b.clone()),
        (one.clone(), g.clone()),
        (g.clone(), one.clone()),
        (a.clone(), one.clone()),
        (a.clone(), ca.clone()),
    ]];
    let r2 = vec![
        vec![(g.clone(), one.clone()), (ca.clone(), one.clone()), (ca.clone(), cb.clone())],
        vec![(one.clone(), g.clone()), (one.clone(), cb.clone()), (ca.clone(), cb.clone())],
    ];
    RegionGeometry { r0, r1, r2 }
}

/// Unsigned polygon area by the shoelace formula, exactly.
pub fn polygon_area(vertices: &[(FieldElement, FieldElement)]) -> FieldElement {
    let field = vertices[0].0.field().clone();
    let mut twice = FieldElement::zero(&field);
    for i in 0..vertices.len() {
        let (x1, y1) = &vertices[i];
        let (x2, y2) = &vertices[(i + 1) % vertices.len()];
        twice = &twice + &(&(x1 * y2) - &(x2 * y1));
    }
    let half = BigRational::new(1.into(), 2.into());
    let area = twice.mul_rat(&half);
    if area.sign() < 0 {
        -&area
    } else {
        area
    }
}

/// Total exact area of a region given as a list of polygons.
pub fn region_area(polys: &[Vec<(FieldElement, FieldElement)>]) -> FieldElement {
    let field = polys[0][0].0.field().clone();
    polys
        .iter()
        .fold(FieldElement::zero(&field), |acc, p| &acc + &polygon_area(p))
}

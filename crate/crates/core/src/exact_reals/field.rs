//! Number fields Q(θ) and exact arithmetic on their elements.
//!
//! A field is described by an irreducible integer minimal polynomial together
//! with a rational isolating interval pinning down which real root θ is meant.
//! Elements are canonical coefficient vectors over Q of length `degree`, so
//! equality is coefficient equality and rationality is decidable. Sign, floor,
//! and comparisons refine the cached root window by bisection until the
//! interval evaluation of the element excludes the undecided case; refinement
//! terminates for nonzero (resp. non-integer) elements.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{z_factor, z_is_irreducible};
use super::poly::{
    count_roots_in_z, q_divrem, q_eval_interval, q_ext_gcd, q_interpolate, q_to_z_primitive,
    q_trim, z_deg, z_eval_q, z_primitive, z_resultant, z_to_q, QInterval, QPoly, ZPoly,
};
use super::ExactError;

/// Safety valve for runaway refinements; hitting it indicates a
/// representation bug (e.g. a "nonzero" element that is actually zero).
const MAX_BISECTIONS: u64 = 1_000_000;

pub struct NumberField {
    min_poly: ZPoly,
    degree: usize,
    /// Current enclosure of θ; shrinks monotonically, never moves the root.
    window: Mutex<(BigRational, BigRational)>,
    /// Sign of min_poly at the left endpoint (constant under bisection).
    sign_lo: i32,
    /// Exact value of θ for degree-1 fields.
    rational_root: Option<BigRational>,
}

fn rat_sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl NumberField {
    /// The trivial field Q, with generator 0.
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField {
            min_poly: vec![BigInt::zero(), BigInt::one()],
            degree: 1,
            window: Mutex::new((
                BigRational::from(BigInt::from(-1)),
                BigRational::from(BigInt::one()),
            )),
            sign_lo: -1,
            rational_root: Some(BigRational::zero()),
        })
    }

    /// Builds Q(θ) for the unique root θ of `min_poly` in `(lo, hi)`.
    pub fn new(
        min_poly: &ZPoly,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<Arc<NumberField>, ExactError> {
        let p = z_primitive(min_poly);
        if p.is_empty() || z_deg(&p) == 0 {
            return Err(ExactError::Domain("constant minimal polynomial".into()));
        }
        if !z_is_irreducible(&p) {
            return Err(ExactError::Reducible(
                "minimal polynomial is reducible over Q".into(),
            ));
        }
        Self::new_trusted(p, lo, hi)
    }

    /// As `new`, but the caller guarantees irreducibility.
    pub(crate) fn new_trusted(
        min_poly: ZPoly,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<Arc<NumberField>, ExactError> {
        let degree = z_deg(&min_poly);
        debug_assert!(z_is_irreducible(&min_poly));
        if degree == 1 {
            let root = -BigRational::new(min_poly[0].clone(), min_poly[1].clone());
            return Ok(Arc::new(NumberField {
                min_poly,
                degree,
                window: Mutex::new((root.clone(), root.clone())),
                sign_lo: 0,
                rational_root: Some(root),
            }));
        }
        if lo >= hi {
            return Err(ExactError::NotIsolating);
        }
        let flo = z_eval_q(&min_poly, lo);
        let fhi = z_eval_q(&min_poly, hi);
        if flo.is_zero() || fhi.is_zero() {
            return Err(ExactError::NotIsolating);
        }
        if count_roots_in_z(&min_poly, lo, hi) != 1 {
            return Err(ExactError::NotIsolating);
        }
        Ok(Arc::new(NumberField {
            sign_lo: rat_sign(&flo),
            min_poly,
            degree,
            window: Mutex::new((lo.clone(), hi.clone())),
            rational_root: None,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &ZPoly {
        &self.min_poly
    }

    pub fn isolating_interval(&self) -> (BigRational, BigRational) {
        self.window.lock().unwrap().clone()
    }

    /// Shrinks the cached window below `max_width` and returns it.
    fn refine_window(&self, max_width: &BigRational) -> (BigRational, BigRational) {
        if let Some(r) = &self.rational_root {
            return (r.clone(), r.clone());
        }
        let mut w = self.window.lock().unwrap();
        let mut steps = 0u64;
        while &(&w.1 - &w.0) > max_width {
            let mid = (&w.0 + &w.1) / BigRational::from(BigInt::from(2));
            let s = rat_sign(&z_eval_q(&self.min_poly, &mid));
            // Irreducible of degree >= 2 has no rational roots.
            assert!(s != 0, "rational root of irreducible polynomial");
            if s == self.sign_lo {
                w.0 = mid;
            } else {
                w.1 = mid;
            }
            steps += 1;
            assert!(steps < MAX_BISECTIONS, "bisection budget exhausted");
        }
        w.clone()
    }

    /// Whether `self` and `other` denote the same real generator.
    fn same_generator(self: &Arc<Self>, other: &Arc<NumberField>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.min_poly != other.min_poly {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.rational_root, &other.rational_root) {
            return a == b;
        }
        // Same polynomial: the roots coincide iff one's isolating window
        // contains the other's root; check via the window intersection.
        let wa = self.window.lock().unwrap().clone();
        let wb = other.window.lock().unwrap().clone();
        let lo = (&wa.0).max(&wb.0).clone();
        let hi = (&wa.1).min(&wb.1).clone();
        if lo >= hi {
            return false;
        }
        if !z_eval_q(&self.min_poly, &lo).is_zero() && !z_eval_q(&self.min_poly, &hi).is_zero() {
            return count_roots_in_z(&self.min_poly, &lo, &hi) == 1;
        }
        false
    }
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumberField(degree {}, min_poly {:?})", self.degree, self.min_poly)
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_rational(field: &Arc<NumberField>, value: BigRational) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); field.degree];
        coeffs[0] = value;
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn from_integer(field: &Arc<NumberField>, value: i64) -> FieldElement {
        Self::from_rational(field, BigRational::from(BigInt::from(value)))
    }

    pub(crate) fn from_coeffs(field: &Arc<NumberField>, mut coeffs: Vec<BigRational>) -> FieldElement {
        assert!(coeffs.len() <= field.degree);
        coeffs.resize(field.degree, BigRational::zero());
        FieldElement { field: field.clone(), coeffs }
    }

    /// The generator θ itself.
    pub fn generator(field: &Arc<NumberField>) -> FieldElement {
        if let Some(r) = &field.rational_root {
            return Self::from_rational(field, r.clone());
        }
        let mut coeffs = vec![BigRational::zero(); field.degree];
        coeffs[1] = BigRational::one();
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElement {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElement {
        Self::from_rational(field, BigRational::one())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().map_or(false, |r| r.is_integer())
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field.same_generator(&other.field),
            "elements of different number fields"
        );
    }

    fn reduce(field: &Arc<NumberField>, poly: QPoly) -> FieldElement {
        let mut poly = poly;
        q_trim(&mut poly);
        if poly.len() <= field.degree {
            return Self::from_coeffs(field, poly);
        }
        let (_, rem) = q_divrem(&poly, &z_to_q(&field.min_poly));
        Self::from_coeffs(field, rem)
    }

    pub fn mul_rat(&self, s: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_rat(&self, s: &BigRational) -> FieldElement {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += s;
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn checked_inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(&self.field, r.recip()));
        }
        let mut poly = self.coeffs.clone();
        q_trim(&mut poly);
        let (g, s) = q_ext_gcd(&poly, &z_to_q(&self.field.min_poly));
        assert_eq!(g.len(), 1, "element not invertible: min poly reducible?");
        debug_assert!(g[0].is_one());
        Some(Self::reduce(&self.field, s))
    }

    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Guaranteed enclosure of the element with width at most `max_width`.
    pub fn enclosure(&self, max_width: &BigRational) -> QInterval {
        if let Some(r) = self.as_rational() {
            return QInterval::point(r);
        }
        let mut poly = self.coeffs.clone();
        q_trim(&mut poly);
        let (mut wlo, mut whi) = self.field.window.lock().unwrap().clone();
        let mut target = &whi - &wlo;
        let shrink = BigRational::from(BigInt::from(256));
        for _ in 0..MAX_BISECTIONS {
            let iv = q_eval_interval(&poly, &QInterval { lo: wlo.clone(), hi: whi.clone() });
            if &iv.width() <= max_width {
                return iv;
            }
            target /= &shrink;
            let w = self.field.refine_window(&target);
            wlo = w.0;
            whi = w.1;
        }
        unreachable!("enclosure refinement budget exhausted")
    }

    /// Enclosure with width at most 2^-bits.
    pub fn enclosure_bits(&self, bits: u32) -> QInterval {
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        self.enclosure(&w)
    }

    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return rat_sign(&r);
        }
        let mut poly = self.coeffs.clone();
        q_trim(&mut poly);
        let (mut wlo, mut whi) = self.field.window.lock().unwrap().clone();
        let mut target = &whi - &wlo;
        let shrink = BigRational::from(BigInt::from(256));
        for _ in 0..MAX_BISECTIONS {
            let iv = q_eval_interval(&poly, &QInterval { lo: wlo.clone(), hi: whi.clone() });
            if iv.lo.is_positive() {
                return 1;
            }
            if iv.hi.is_negative() {
                return -1;
            }
            target /= &shrink;
            let w = self.field.refine_window(&target);
            wlo = w.0;
            whi = w.1;
        }
        unreachable!("sign refinement budget exhausted (element is zero?)")
    }

    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut width = BigRational::one();
        for _ in 0..MAX_BISECTIONS {
            let iv = self.enclosure(&width);
            let flo = iv.lo.floor().to_integer();
            let fhi = iv.hi.floor().to_integer();
            if flo == fhi {
                return flo;
            }
            width /= BigRational::from(BigInt::from(256));
        }
        unreachable!("floor refinement budget exhausted (element is an integer?)")
    }

    pub fn frac(&self) -> FieldElement {
        let f = BigRational::from(self.floor());
        self.add_rat(&-f)
    }

    pub fn cmp_exact(&self, other: &FieldElement) -> std::cmp::Ordering {
        match (self - other).sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Rational approximation within 10^-digits of the true value.
    pub fn approx_decimal(&self, digits: u32) -> BigRational {
        if let Some(r) = self.as_rational() {
            return r;
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits + 1));
        let iv = self.enclosure(&w);
        (&iv.lo + &iv.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.approx_decimal(18).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_generator(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldElement({:?} ~ {})", self.coeffs, self.to_f64())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.assert_same_field(rhs);
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    FieldElement {
        field: a.field.clone(),
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    }
});

binop!(Sub, sub, |a, b| {
    FieldElement {
        field: a.field.clone(),
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
    }
});

binop!(Mul, mul, |a, b| {
    let mut prod = vec![BigRational::zero(); 2 * a.field.degree.max(1)];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    FieldElement::reduce(&a.field, prod)
});

binop!(Div, div, |a, b| a * &b.inv());

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Fast scaled floors
// ---------------------------------------------------------------------------

/// Precomputed dyadic bounds `lo/2^bits <= x <= hi/2^bits` for a positive
/// element, giving `floor(n*x)` by integer shifts with an exact fallback.
#[derive(Clone, Debug)]
pub struct FloorBounds {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
    value: FieldElement,
}

impl FloorBounds {
    pub fn new(value: &FieldElement, bits: u32) -> FloorBounds {
        assert!(value.sign() > 0, "FloorBounds requires a positive value");
        let iv = value.enclosure_bits(bits);
        let scale = BigRational::from(BigInt::one() << bits);
        let lo = (&iv.lo * &scale).floor().to_integer();
        let hi = (&iv.hi * &scale).ceil().to_integer();
        FloorBounds { lo, hi, bits, value: value.clone() }
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }

    /// Exact `floor(n * x)`.
    pub fn floor_mul(&self, n: u64) -> u64 {
        let nn = BigInt::from(n);
        let a: BigInt = (&nn * &self.lo) >> self.bits;
        let b: BigInt = (&nn * &self.hi) >> self.bits;
        if a == b {
            return u64::try_from(a).expect("floor fits u64");
        }
        // Dyadic bounds straddle an integer; fall back to exact arithmetic.
        let exact = self.value.mul_rat(&BigRational::from(nn)).floor();
        u64::try_from(exact).expect("floor fits u64")
    }
}

// ---------------------------------------------------------------------------
// Polynomials with field-element coefficients (used for compositum gcds)
// ---------------------------------------------------------------------------

type FPoly = Vec<FieldElement>;

fn fp_trim(p: &mut FPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn fp_divrem(f: &FPoly, g: &FPoly) -> (FPoly, FPoly) {
    let mut r = f.clone();
    fp_trim(&mut r);
    let mut g = g.clone();
    fp_trim(&mut g);
    assert!(!g.is_empty());
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return (vec![], r);
    }
    let inv_lc = g.last().unwrap().inv();
    let field = inv_lc.field().clone();
    let mut q = vec![FieldElement::zero(&field); r.len() - dg];
    while !r.is_empty() && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let coef = r.last().unwrap() * &inv_lc;
        q[dr - dg] = coef.clone();
        for (i, gc) in g.iter().enumerate() {
            let v = gc * &coef;
            r[dr - dg + i] = &r[dr - dg + i] - &v;
        }
        fp_trim(&mut r);
        if r.is_empty() || dr == dg {
            break;
        }
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_gcd(f: &FPoly, g: &FPoly) -> FPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b);
        a = b;
        b = r;
    }
    assert!(!a.is_empty());
    let inv_lc = a.last().unwrap().inv();
    a.iter().map(|c| c * &inv_lc).collect()
}

// ---------------------------------------------------------------------------
// Field extension (compositum)
// ---------------------------------------------------------------------------

/// Result of adjoining a new algebraic number μ to a field F = Q(θ):
/// the compositum N = Q(λ) together with the images of θ and μ in N.
#[derive(Debug)]
pub struct Adjoined {
    pub field: Arc<NumberField>,
    pub old_gen: FieldElement,
    pub new_root: FieldElement,
}

/// Picks, from a set of pairwise-coprime candidate factors, the unique one
/// vanishing at the real number enclosed by `encloser(step)` (a shrinking
/// sequence of enclosures). Returns the winner and an interval isolating
/// that root of the winner.
pub(crate) fn select_factor_at(
    candidates: &[ZPoly],
    mut encloser: impl FnMut(u32) -> QInterval,
) -> (ZPoly, BigRational, BigRational) {
    let mut alive: Vec<usize> = (0..candidates.len()).collect();
    for step in 0..64 {
        let iv = encloser(step);
        alive.retain(|&i| {
            q_eval_interval(&z_to_q(&candidates[i]), &iv).contains_zero()
        });
        assert!(!alive.is_empty(), "no candidate factor vanishes at the target");
        if alive.len() == 1 {
            let h = &candidates[alive[0]];
            // Shrink further until the interval isolates the root of h.
            for step2 in step..step + 64 {
                let iv = encloser(step2);
                if z_eval_q(h, &iv.lo).is_zero() || z_eval_q(h, &iv.hi).is_zero() {
                    continue;
                }
                if count_roots_in_z(h, &iv.lo, &iv.hi) == 1 {
                    return (h.clone(), iv.lo, iv.hi);
                }
            }
            panic!("failed to isolate root of selected factor");
        }
    }
    panic!("factor selection did not converge");
}

/// Bisectable window around a fixed root of a squarefree polynomial.
pub(crate) struct RootWindow {
    poly: ZPoly,
    lo: BigRational,
    hi: BigRational,
    sign_lo: i32,
}

impl RootWindow {
    pub(crate) fn new(poly: &ZPoly, lo: &BigRational, hi: &BigRational) -> RootWindow {
        let s = rat_sign(&z_eval_q(poly, lo));
        assert!(s != 0 && !z_eval_q(poly, hi).is_zero());
        RootWindow { poly: poly.clone(), lo: lo.clone(), hi: hi.clone(), sign_lo: s }
    }

    pub(crate) fn halve(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        let s = rat_sign(&z_eval_q(&self.poly, &mid));
        if s == 0 {
            // Rational root hit mid-bisection: nudge by a third instead.
            let third = &self.lo + (&self.hi - &self.lo) / BigRational::from(BigInt::from(3));
            let s2 = rat_sign(&z_eval_q(&self.poly, &third));
            assert!(s2 != 0);
            if s2 == self.sign_lo {
                self.lo = third;
            } else {
                self.hi = third;
            }
            return;
        }
        if s == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub(crate) fn interval(&self) -> QInterval {
        QInterval { lo: self.lo.clone(), hi: self.hi.clone() }
    }
}

/// Adjoins the root μ of irreducible `g` isolated in `(glo, ghi)` to the
/// field `base`, producing the compositum Q(θ, μ) as a simple extension.
pub fn adjoin(
    base: &Arc<NumberField>,
    g: &ZPoly,
    glo: &BigRational,
    ghi: &BigRational,
    cap: usize,
) -> Result<Adjoined, ExactError> {
    let dg = z_deg(g);
    assert!(dg >= 2, "rational adjunction should be handled by the caller");
    if base.degree == 1 {
        let field = NumberField::new_trusted(g.clone(), glo, ghi)?;
        let old_gen =
            FieldElement::from_rational(&field, base.rational_root.clone().unwrap());
        let new_root = FieldElement::generator(&field);
        return Ok(Adjoined { field, old_gen, new_root });
    }
    let df = base.degree;
    if df * dg > 4 * cap {
        return Err(ExactError::FieldTooLarge { required: df * dg, cap });
    }
    let f = base.min_poly.clone();
    for k_abs in 1i64..=50 {
        for k in [k_abs, -k_abs] {
            match try_adjoin_with(base, &f, g, glo, ghi, k, cap)? {
                Some(adj) => return Ok(adj),
                None => continue,
            }
        }
    }
    panic!("no primitive element found for compositum");
}

fn try_adjoin_with(
    base: &Arc<NumberField>,
    f: &ZPoly,
    g: &ZPoly,
    glo: &BigRational,
    ghi: &BigRational,
    k: i64,
    cap: usize,
) -> Result<Option<Adjoined>, ExactError> {
    let df = z_deg(f);
    let dg = z_deg(g);
    // R(x) = Res_z(g(z), f(x - k z)) vanishes at λ = θ + kμ; compute it by
    // interpolation from integer sample points.
    let deg_r = df * dg;
    let mut points = Vec::with_capacity(deg_r + 1);
    for t in 0..=(deg_r as i64) {
        let ft = super::poly::z_compose_linear(f, &BigInt::from(t), &BigInt::from(-k));
        let r = z_resultant(g, &ft);
        points.push((
            BigRational::from(BigInt::from(t)),
            BigRational::from(r),
        ));
    }
    let r_poly = q_to_z_primitive(&q_interpolate(&points));
    // Candidate minimal polynomials: irreducible factors of R.
    let candidates: Vec<ZPoly> = z_factor(&r_poly).into_iter().map(|(p, _)| p).collect();
    // Locate λ numerically (but with exact rational enclosures).
    let mut theta_width = {
        let (lo, hi) = base.isolating_interval();
        &hi - &lo
    };
    let mut mu_win = RootWindow::new(g, glo, ghi);
    let kq = BigRational::from(BigInt::from(k));
    let mut lam_encloser = |step: u32| {
        for _ in 0..(8 * (step + 1)) {
            mu_win.halve();
        }
        theta_width /= BigRational::from(BigInt::from(1u64 << 32));
        let (tlo, thi) = base.refine_window(&theta_width);
        QInterval { lo: tlo, hi: thi }.add(&mu_win.interval().scale(&kq))
    };
    let (h, llo, lhi) = select_factor_at(&candidates, &mut lam_encloser);
    if z_deg(&h) == 1 {
        return Ok(None); // λ rational: not a primitive element, retry
    }
    if z_deg(&h) > cap {
        return Err(ExactError::FieldTooLarge { required: z_deg(&h), cap });
    }
    let field = NumberField::new_trusted(h, &llo, &lhi)?;
    let lambda = FieldElement::generator(&field);
    // μ is the unique common root of g(t) and f(λ - k t); recover it from the
    // gcd over the new field. A non-linear gcd means λ is not primitive.
    let g_fp: FPoly = g
        .iter()
        .map(|c| FieldElement::from_rational(&field, BigRational::from(c.clone())))
        .collect();
    let lin = vec![lambda.clone(), FieldElement::from_integer(&field, -k)];
    let mut f_of_lin: FPoly = vec![];
    for c in f.iter().rev() {
        // f_of_lin = f_of_lin * (λ - k t) + c
        let mut next = vec![FieldElement::zero(&field); f_of_lin.len() + 1];
        for (i, rc) in f_of_lin.iter().enumerate() {
            next[i] = &next[i] + &(rc * &lin[0]);
            next[i + 1] = &next[i + 1] + &(rc * &lin[1]);
        }
        next[0] = next[0].add_rat(&BigRational::from(c.clone()));
        f_of_lin = next;
        fp_trim(&mut f_of_lin);
    }
    let gcd = fp_gcd(&g_fp, &f_of_lin);
    if gcd.len() != 2 {
        return Ok(None);
    }
    let mu = -&gcd[0];
    let old_gen = &lambda - &mu.mul_rat(&BigRational::from(BigInt::from(k)));
    // Exact consistency checks on both embeddings.
    let eval = |p: &ZPoly, x: &FieldElement| -> FieldElement {
        let mut acc = FieldElement::zero(&field);
        for c in p.iter().rev() {
            acc = (&acc * x).add_rat(&BigRational::from(c.clone()));
        }
        acc
    };
    assert!(eval(f, &old_gen).is_zero(), "compositum embedding of θ is wrong");
    assert!(eval(g, &mu).is_zero(), "compositum embedding of μ is wrong");
    Ok(Some(Adjoined { field, old_gen, new_root: mu }))
}

/// Evaluates an element's defining polynomial at a target element; used to
/// transport elements along a field embedding given the generator's image.
pub fn map_along(elem: &FieldElement, gen_image: &FieldElement) -> FieldElement {
    let field = gen_image.field().clone();
    let mut acc = FieldElement::zero(&field);
    for c in elem.coeffs().iter().rev() {
        acc = (&acc * gen_image).add_rat(c);
    }
    acc
}

/// Rational enclosure of sqrt(x) for positive rational x, width 2^-bits.
pub fn rational_sqrt_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive());
    let a = x.numer();
    let b = x.denom();
    // sqrt(a/b) = sqrt(a*b)/b; floor-isqrt of a*b*4^k gives dyadic bounds.
    let n: BigInt = a * b << (2 * bits);
    let s = n.sqrt();
    let denom = BigRational::from(b * (BigInt::one() << bits));
    (
        BigRational::from(s.clone()) / denom.clone(),
        BigRational::from(s + 1) / denom,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_reals::poly::z_from_i64;

    fn phi_field() -> Arc<NumberField> {
        NumberField::new(
            &z_from_i64(&[-1, -1, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
        )
        .unwrap()
    }

    #[test]
    fn phi_satisfies_its_polynomial() {
        let f = phi_field();
        let phi = FieldElement::generator(&f);
        let lhs = &(&phi * &phi) - &phi;
        assert_eq!(lhs, FieldElement::one(&f));
    }

    #[test]
    fn sign_and_floor_of_phi() {
        let f = phi_field();
        let phi = FieldElement::generator(&f);
        assert_eq!(phi.sign(), 1);
        assert_eq!(phi.floor(), BigInt::from(1));
        // Φ - 8/5 > 0
        let x = phi.add_rat(&BigRational::new(BigInt::from(-8), BigInt::from(5)));
        assert_eq!(x.sign(), 1);
        // Φ^3 = 2Φ + 1, floor 4; 13 Φ^3 floor 55
        let phi3 = phi.pow(3);
        assert_eq!(phi3.floor(), BigInt::from(4));
        assert_eq!(
            phi3.mul_rat(&BigRational::from(BigInt::from(13))).floor(),
            BigInt::from(55)
        );
    }

    #[test]
    fn inverse_and_rationality() {
        let f = phi_field();
        let phi = FieldElement::generator(&f);
        let inv = phi.inv();
        assert_eq!(&phi * &inv, FieldElement::one(&f));
        assert!(!inv.is_rational());
        // 1/Φ + 1/Φ^2 = 1
        let s = &inv + &phi.pow(-2);
        assert_eq!(s.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn frac_of_phi_is_phi_minus_one() {
        let f = phi_field();
        let phi = FieldElement::generator(&f);
        let fr = phi.frac();
        assert_eq!(fr, phi.add_rat(&BigRational::from(BigInt::from(-1))));
        assert_eq!(fr.sign(), 1);
        assert_eq!((&fr - &FieldElement::one(&f)).sign(), -1);
    }

    #[test]
    fn floor_bounds_match_exact_floors() {
        let f = phi_field();
        let phi = FieldElement::generator(&f);
        let fb = FloorBounds::new(&phi, 80);
        for n in 0..2000u64 {
            let exact = phi.mul_rat(&BigRational::from(BigInt::from(n))).floor();
            assert_eq!(BigInt::from(fb.floor_mul(n)), exact);
        }
    }

    #[test]
    fn adjoin_sqrt3_to_sqrt2() {
        let q2 = NumberField::new(
            &z_from_i64(&[-2, 0, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
        )
        .unwrap();
        let adj = adjoin(
            &q2,
            &z_from_i64(&[-3, 0, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
            8,
        )
        .unwrap();
        assert_eq!(adj.field.degree(), 4);
        let two = FieldElement::from_integer(&adj.field, 2);
        let three = FieldElement::from_integer(&adj.field, 3);
        assert_eq!(&adj.old_gen * &adj.old_gen, two);
        assert_eq!(&adj.new_root * &adj.new_root, three);
        // sqrt2 * sqrt3 = sqrt6: squares to 6
        let s6 = &adj.old_gen * &adj.new_root;
        assert_eq!(&s6 * &s6, FieldElement::from_integer(&adj.field, 6));
        assert_eq!(s6.floor(), BigInt::from(2));
    }

    #[test]
    fn adjoin_same_generator_again() {
        let f = phi_field();
        let adj = adjoin(
            &f,
            &z_from_i64(&[-1, -1, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
            8,
        )
        .unwrap();
        assert_eq!(adj.field.degree(), 2);
        assert_eq!(adj.old_gen, adj.new_root);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let q2 = NumberField::new(
            &z_from_i64(&[-2, 0, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
        )
        .unwrap();
        let err = adjoin(
            &q2,
            &z_from_i64(&[-3, 0, 1]),
            &BigRational::from(BigInt::from(1)),
            &BigRational::from(BigInt::from(2)),
            2,
        )
        .unwrap_err();
        matches!(err, ExactError::FieldTooLarge { .. });
    }

    #[test]
    fn sqrt_bounds_bracket_the_root() {
        let x = BigRational::new(BigInt::from(2), BigInt::from(1));
        let (lo, hi) = rational_sqrt_bounds(&x, 40);
        assert!(&lo * &lo <= x && x <= &hi * &hi);
        assert!(&hi - &lo < BigRational::new(BigInt::one(), BigInt::from(1u64 << 39)));
    }
}

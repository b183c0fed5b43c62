//! Polynomial utilities over the integers and rationals.
//!
//! Polynomials are coefficient vectors in ascending order of degree with no
//! trailing zero coefficients (the zero polynomial is the empty vector).
//! Provides arithmetic, Sturm chains for real-root counting, interval
//! evaluation, and resultants; these back the number-field layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn z_trim(p: &mut ZPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn z_is_zero(p: &ZPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Degree of a nonzero polynomial.
pub fn z_deg(p: &ZPoly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub fn z_from_i64(coeffs: &[i64]) -> ZPoly {
    let mut p: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    z_trim(&mut p);
    p
}

pub fn z_derivative(p: &ZPoly) -> ZPoly {
    let mut d: ZPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    z_trim(&mut d);
    d
}

pub fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if z_is_zero(a) || z_is_zero(b) {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    z_trim(&mut out);
    out
}

pub fn z_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = num_integer::gcd(g, c.clone());
    }
    g
}

/// Primitive part with positive leading coefficient.
pub fn z_primitive(p: &ZPoly) -> ZPoly {
    let mut p = p.clone();
    z_trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let mut g = z_content(&p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

pub fn z_eval_q(p: &ZPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

pub fn z_to_q(p: &ZPoly) -> QPoly {
    p.iter().map(|c| BigRational::from(c.clone())).collect()
}

/// Clears denominators and returns the primitive integer polynomial.
pub fn q_to_z_primitive(p: &QPoly) -> ZPoly {
    let mut den = BigInt::one();
    for c in p {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let z: ZPoly = p.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
    z_primitive(&z)
}

/// Coefficients of `f(c0 + c1*t)` as a polynomial in `t`.
pub fn z_compose_linear(f: &ZPoly, c0: &BigInt, c1: &BigInt) -> ZPoly {
    let mut r: ZPoly = vec![];
    for c in f.iter().rev() {
        let mut nr = vec![BigInt::zero(); r.len() + 1];
        for (i, rc) in r.iter().enumerate() {
            nr[i] += rc * c0;
            nr[i + 1] += rc * c1;
        }
        nr[0] += c;
        r = nr;
    }
    z_trim(&mut r);
    r
}

/// Exact division over the integers; `None` if `g` does not divide `f`.
pub fn z_divexact(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let (q, r) = q_divrem(&z_to_q(f), &z_to_q(g));
    if !q_is_zero(&r) {
        return None;
    }
    let mut out = Vec::with_capacity(q.len());
    for c in q {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Gcd over the integers: primitive with positive leading coefficient.
pub fn z_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if z_is_zero(f) {
        return z_primitive(g);
    }
    if z_is_zero(g) {
        return z_primitive(f);
    }
    q_to_z_primitive(&q_gcd(&z_to_q(f), &z_to_q(g)))
}

// ---------------------------------------------------------------------------
// Rational polynomials
// ---------------------------------------------------------------------------

pub fn q_trim(p: &mut QPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn q_is_zero(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn q_deg(p: &QPoly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub fn q_neg(p: &QPoly) -> QPoly {
    p.iter().map(|c| -c).collect()
}

pub fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    q_trim(&mut out);
    out
}

pub fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    q_add(a, &q_neg(b))
}

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if q_is_zero(a) || q_is_zero(b) {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    q_trim(&mut out);
    out
}

pub fn q_scale(p: &QPoly, s: &BigRational) -> QPoly {
    let mut out: QPoly = p.iter().map(|c| c * s).collect();
    q_trim(&mut out);
    out
}

/// Euclidean division; panics if `g` is zero.
pub fn q_divrem(f: &QPoly, g: &QPoly) -> (QPoly, QPoly) {
    let mut g = g.clone();
    q_trim(&mut g);
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = f.clone();
    q_trim(&mut r);
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dg];
    let lg = g.last().unwrap().clone();
    while !r.is_empty() && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let coef = r.last().unwrap() / &lg;
        q[dr - dg] = coef.clone();
        for (i, gc) in g.iter().enumerate() {
            let v = gc * &coef;
            r[dr - dg + i] -= v;
        }
        q_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    q_trim(&mut q);
    (q, r)
}

/// Monic gcd.
pub fn q_gcd(f: &QPoly, g: &QPoly) -> QPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    q_trim(&mut a);
    q_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = q_divrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lc = a.last().unwrap().clone();
    q_scale(&a, &lc.recip())
}

/// Extended gcd: returns `(g, s)` with `s*f ≡ g (mod m)` and `g` monic.
pub fn q_ext_gcd(f: &QPoly, m: &QPoly) -> (QPoly, QPoly) {
    let mut r0 = f.clone();
    let mut r1 = m.clone();
    q_trim(&mut r0);
    q_trim(&mut r1);
    let mut s0: QPoly = vec![BigRational::one()];
    let mut s1: QPoly = vec![];
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let ns = q_sub(&s0, &q_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
    }
    let lc = r0.last().expect("gcd of zero polynomials").clone();
    (q_scale(&r0, &lc.recip()), q_scale(&s0, &lc.recip()))
}

pub fn q_eval(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn q_derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect();
    q_trim(&mut d);
    d
}

// ---------------------------------------------------------------------------
// Interval arithmetic
// ---------------------------------------------------------------------------

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct QInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl QInterval {
    pub fn point(x: BigRational) -> Self {
        QInterval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, other: &QInterval) -> QInterval {
        QInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn add_scalar(&self, s: &BigRational) -> QInterval {
        QInterval { lo: &self.lo + s, hi: &self.hi + s }
    }

    pub fn mul(&self, other: &QInterval) -> QInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        QInterval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> QInterval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            QInterval { lo: a, hi: b }
        } else {
            QInterval { lo: b, hi: a }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Horner evaluation of `p` over the interval enclosure of its argument.
pub fn q_eval_interval(p: &QPoly, x: &QInterval) -> QInterval {
    let mut acc = QInterval::point(BigRational::zero());
    for c in p.iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}

// ---------------------------------------------------------------------------
// Sturm chains
// ---------------------------------------------------------------------------

/// Sturm chain of a nonzero polynomial.
pub fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![];
    let mut p0 = p.clone();
    q_trim(&mut p0);
    assert!(!p0.is_empty());
    let p1 = q_derivative(&p0);
    chain.push(p0);
    if !p1.is_empty() {
        chain.push(p1);
        loop {
            let n = chain.len();
            let (_, r) = q_divrem(&chain[n - 2], &chain[n - 1]);
            if q_is_zero(&r) {
                break;
            }
            chain.push(q_neg(&r));
        }
    }
    chain
}

fn sign_variations_at(chain: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut v = 0usize;
    for p in chain {
        let s = {
            let val = q_eval(p, x);
            if val.is_positive() {
                1
            } else if val.is_negative() {
                -1
            } else {
                0
            }
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
/// Requires `p(lo) != 0` and `p(hi) != 0`.
pub fn count_roots_in(p: &QPoly, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(lo < hi, "empty root-count interval");
    assert!(!q_eval(p, lo).is_zero() && !q_eval(p, hi).is_zero(), "endpoint is a root");
    let chain = sturm_chain(p);
    sign_variations_at(&chain, lo) - sign_variations_at(&chain, hi)
}

pub fn count_roots_in_z(p: &ZPoly, lo: &BigRational, hi: &BigRational) -> usize {
    count_roots_in(&z_to_q(p), lo, hi)
}

/// Lagrange interpolation through distinct points.
pub fn q_interpolate(points: &[(BigRational, BigRational)]) -> QPoly {
    let mut acc: QPoly = vec![];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis_i(x) = Π_{j≠i} (x - x_j) / (x_i - x_j)
        let mut basis: QPoly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            basis = q_mul(&basis, &vec![-xj.clone(), BigRational::one()]);
            denom *= xi - xj;
        }
        acc = q_add(&acc, &q_scale(&basis, &(yi / denom)));
    }
    acc
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

/// Resultant of two integer polynomials via the Sylvester matrix.
pub fn z_resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    let mut f = f.clone();
    let mut g = g.clone();
    z_trim(&mut f);
    z_trim(&mut g);
    if f.is_empty() || g.is_empty() {
        return BigInt::zero();
    }
    let df = f.len() - 1;
    let dg = g.len() - 1;
    if df == 0 {
        return f[0].pow(dg as u32);
    }
    if dg == 0 {
        return g[0].pow(df as u32);
    }
    let n = df + dg;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for row in 0..dg {
        for (j, c) in f.iter().rev().enumerate() {
            m[row][row + j] = BigRational::from(c.clone());
        }
    }
    for row in 0..df {
        for (j, c) in g.iter().rev().enumerate() {
            m[dg + row][row + j] = BigRational::from(c.clone());
        }
    }
    let det = q_det(m);
    assert!(det.is_integer(), "resultant must be an integer");
    det.to_integer()
}

fn q_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let v = &m[col][c] * &factor;
                m[r][c] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn divrem_roundtrip() {
        let f = z_to_q(&z_from_i64(&[-1, -1, -1, 1])); // x^3 - x^2 - x - 1
        let g = z_to_q(&z_from_i64(&[-1, 1])); // x - 1
        let (quo, rem) = q_divrem(&f, &g);
        let back = q_add(&q_mul(&quo, &g), &rem);
        assert_eq!(back, f);
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = z_from_i64(&[-2, 0, 1]); // x^2 - 2
        let b = z_from_i64(&[-3, 0, 1]); // x^2 - 3
        let prod_a = z_mul(&a, &z_from_i64(&[1, 1]));
        let prod_b = z_mul(&a, &b);
        assert_eq!(z_gcd(&prod_a, &prod_b), a);
    }

    #[test]
    fn sturm_counts_roots_of_quadratic() {
        let p = z_to_q(&z_from_i64(&[-1, -1, 1])); // x^2 - x - 1, roots -0.618, 1.618
        assert_eq!(count_roots_in(&p, &q(-2, 1), &q(2, 1)), 2);
        assert_eq!(count_roots_in(&p, &q(1, 1), &q(2, 1)), 1);
        assert_eq!(count_roots_in(&p, &q(2, 1), &q(3, 1)), 0);
    }

    #[test]
    fn sturm_counts_tribonacci_root() {
        let p = z_to_q(&z_from_i64(&[-1, -1, -1, 1]));
        assert_eq!(count_roots_in(&p, &q(9, 5), &q(19, 10)), 1);
        assert_eq!(count_roots_in(&p, &q(-10, 1), &q(10, 1)), 1);
    }

    #[test]
    fn resultant_of_coprime_quadratics() {
        // res(x^2-2, x^2-3) = (2-3)^2 = 1
        let a = z_from_i64(&[-2, 0, 1]);
        let b = z_from_i64(&[-3, 0, 1]);
        assert_eq!(z_resultant(&a, &b), BigInt::from(1));
        // res(x^2-2, x^2-2) = 0
        assert_eq!(z_resultant(&a, &a), BigInt::zero());
    }

    #[test]
    fn compose_linear_matches_direct_eval() {
        let f = z_from_i64(&[1, -2, 0, 3]);
        let c0 = BigInt::from(5);
        let c1 = BigInt::from(-7);
        let g = z_compose_linear(&f, &c0, &c1);
        for t in -3i64..=3 {
            let arg = q(5 - 7 * t, 1);
            assert_eq!(z_eval_q(&g, &q(t, 1)), z_eval_q(&f, &arg));
        }
    }

    #[test]
    fn interval_eval_encloses_point_values() {
        let p = z_to_q(&z_from_i64(&[-1, -1, 1]));
        let iv = QInterval { lo: q(3, 2), hi: q(2, 1) };
        let out = q_eval_interval(&p, &iv);
        for num in 15..=20 {
            let x = q(num, 10);
            let v = q_eval(&p, &x);
            assert!(out.lo <= v && v <= out.hi);
        }
    }
}

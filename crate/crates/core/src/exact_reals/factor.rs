//! Factorization of integer polynomials into irreducible factors over Q.
//!
//! Classical Zassenhaus pipeline: reduce to a monic squarefree polynomial,
//! factor modulo a small prime with Berlekamp's algorithm, lift the modular
//! factorization with linear Hensel steps past a Mignotte-style coefficient
//! bound, and recombine modular factors by trial division over the integers.
//! Degrees in this crate stay small (the number-field layer caps compositum
//! degrees), so the simple quadratic-time variants are sufficient.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{
    z_compose_linear, z_deg, z_derivative, z_divexact, z_gcd, z_mul, z_primitive,
    z_trim, ZPoly,
};

// ---------------------------------------------------------------------------
// Arithmetic modulo a small prime (coefficients in [0, p))
// ---------------------------------------------------------------------------

type PmPoly = Vec<i64>;

fn pm_trim(a: &mut PmPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pm_deg(a: &PmPoly) -> usize {
    a.len().saturating_sub(1)
}

fn modinv(a: i64, p: i64) -> i64 {
    // Fermat inverse; p is prime and a != 0 mod p.
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn pm_from_z(f: &ZPoly, p: i64) -> PmPoly {
    let bp = BigInt::from(p);
    let mut out: PmPoly = f
        .iter()
        .map(|c| {
            let r = c.clone() % &bp;
            let r = if r.is_negative() { r + &bp } else { r };
            i64::try_from(r).expect("residue fits i64")
        })
        .collect();
    pm_trim(&mut out);
    out
}

fn pm_mul(a: &PmPoly, b: &PmPoly, p: i64) -> PmPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ca * cb) % p;
        }
    }
    pm_trim(&mut out);
    out
}

fn pm_divrem(f: &PmPoly, g: &PmPoly, p: i64) -> (PmPoly, PmPoly) {
    let mut r = f.clone();
    pm_trim(&mut r);
    assert!(!g.is_empty(), "mod-p division by zero");
    let dg = pm_deg(g);
    if r.len() < g.len() {
        return (vec![], r);
    }
    let inv_lc = modinv(*g.last().unwrap(), p);
    let mut q = vec![0i64; r.len() - dg];
    while !r.is_empty() && pm_deg(&r) >= dg {
        let dr = pm_deg(&r);
        let coef = r.last().unwrap() * inv_lc % p;
        q[dr - dg] = coef;
        for (i, &gc) in g.iter().enumerate() {
            r[dr - dg + i] = (r[dr - dg + i] - coef * gc).rem_euclid(p);
        }
        pm_trim(&mut r);
        if dr == dg {
            break;
        }
    }
    pm_trim(&mut q);
    (q, r)
}

fn pm_monic(a: &PmPoly, p: i64) -> PmPoly {
    if a.is_empty() {
        return vec![];
    }
    let inv = modinv(*a.last().unwrap(), p);
    let mut out: PmPoly = a.iter().map(|&c| c * inv % p).collect();
    pm_trim(&mut out);
    out
}

fn pm_gcd(a: &PmPoly, b: &PmPoly, p: i64) -> PmPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    pm_trim(&mut x);
    pm_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = pm_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    pm_monic(&x, p)
}

fn pm_add(a: &PmPoly, b: &PmPoly, p: i64) -> PmPoly {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    pm_trim(&mut out);
    out
}

/// Extended gcd mod p: returns `(s, t)` with `s*a + t*b = 1`;
/// requires `gcd(a, b) = 1`.
fn pm_bezout(a: &PmPoly, b: &PmPoly, p: i64) -> (PmPoly, PmPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (PmPoly, PmPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (PmPoly, PmPoly) = (vec![], vec![1]);
    pm_trim(&mut r0);
    pm_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = pm_divrem(&r0, &r1, p);
        let ns = sub_mul(&s0, &q, &s1, p);
        let nt = sub_mul(&t0, &q, &t1, p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(pm_deg(&r0), 0, "inputs not coprime mod p");
    let inv = modinv(r0[0], p);
    let scale = |v: &PmPoly| -> PmPoly {
        let mut out: PmPoly = v.iter().map(|&c| c * inv % p).collect();
        pm_trim(&mut out);
        out
    };
    (scale(&s0), scale(&t0))
}

fn sub_mul(a: &PmPoly, q: &PmPoly, b: &PmPoly, p: i64) -> PmPoly {
    let qb = pm_mul(q, b, p);
    let mut out = vec![0i64; a.len().max(qb.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    for (i, &c) in qb.iter().enumerate() {
        out[i] = (out[i] - c).rem_euclid(p);
    }
    pm_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// Berlekamp factorization mod p
// ---------------------------------------------------------------------------

fn pm_powmod(base: &PmPoly, mut e: u64, m: &PmPoly, p: i64) -> PmPoly {
    let mut acc: PmPoly = vec![1];
    let mut b = pm_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = pm_divrem(&pm_mul(&acc, &b, p), m, p).1;
        }
        b = pm_divrem(&pm_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

/// Berlekamp's algorithm: monic irreducible factors of a monic squarefree
/// polynomial mod p.
fn berlekamp(f: &PmPoly, p: i64) -> Vec<PmPoly> {
    let n = pm_deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix: row i holds the coefficients of x^(p*i) mod f.
    let xp = pm_powmod(&vec![0, 1], p as u64, f, p);
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut cur: PmPoly = vec![1];
    for _ in 0..n {
        let mut padded = cur.clone();
        padded.resize(n, 0);
        rows.push(padded);
        cur = pm_divrem(&pm_mul(&cur, &xp, p), f, p).1;
    }
    // Nullspace of (Q - I) acting on coefficient vectors v (v Q = v).
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = (rows[j][i] - i64::from(i == j)).rem_euclid(p);
        }
    }
    let basis = nullspace_mod_p(a, p);
    let r = basis.len();
    assert!(r >= 1);
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let mut vpoly: PmPoly = v.clone();
        pm_trim(&mut vpoly);
        if pm_deg(&vpoly) == 0 {
            continue; // constant basis vector splits nothing
        }
        let mut next = vec![];
        for u in factors {
            if pm_deg(&u) <= 1 {
                next.push(u);
                continue;
            }
            let mut w = u;
            for s in 0..p {
                if pm_deg(&w) == 0 {
                    break;
                }
                let mut shifted = vpoly.clone();
                if shifted.is_empty() {
                    shifted.push(0);
                }
                shifted[0] = (shifted[0] - s).rem_euclid(p);
                pm_trim(&mut shifted);
                let d = pm_gcd(&w, &shifted, p);
                if pm_deg(&d) >= 1 && pm_deg(&d) < pm_deg(&w) {
                    let (q, rem) = pm_divrem(&w, &d, p);
                    debug_assert!(rem.is_empty());
                    next.push(d);
                    w = pm_monic(&q, p);
                }
            }
            if pm_deg(&w) >= 1 {
                next.push(w);
            }
        }
        factors = next;
    }
    assert_eq!(factors.len(), r, "Berlekamp split incomplete");
    factors
}

fn nullspace_mod_p(mut a: Vec<Vec<i64>>, p: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        let pr = (row..n).find(|&r| a[r][col] % p != 0);
        if let Some(pr) = pr {
            a.swap(row, pr);
            let inv = modinv(a[row][col], p);
            for c in 0..n {
                a[row][c] = a[row][c] * inv % p;
            }
            for r in 0..n {
                if r != row && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..n {
                        a[r][c] = (a[r][c] - factor * a[row][c]).rem_euclid(p);
                    }
                }
            }
            pivot_col_of_row[row] = col;
            row += 1;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = vec![];
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0i64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (-a[r][free]).rem_euclid(p);
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting (linear steps, monic polynomials)
// ---------------------------------------------------------------------------

fn z_mod_reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = f
        .iter()
        .map(|c| {
            let r = c.clone() % m;
            if r.is_negative() {
                r + m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

fn pm_to_z(a: &PmPoly) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|&c| BigInt::from(c)).collect();
    z_trim(&mut out);
    out
}

/// Lifts `f ≡ g0*h0 (mod p)` to a factorization mod `pk` (a power of p).
/// All polynomials are monic; returns `(g, h)` with coefficients in `[0, pk)`.
fn hensel_pair(f: &ZPoly, g0: &PmPoly, h0: &PmPoly, p: i64, pk: &BigInt) -> (ZPoly, ZPoly) {
    let (s, t) = pm_bezout(g0, h0, p);
    let mut g = pm_to_z(g0);
    let mut h = pm_to_z(h0);
    let mut pj = BigInt::from(p);
    while &pj < pk {
        // f ≡ g*h (mod pj) over the integers; push the defect one step up.
        let mut e = f.clone();
        let gh = z_mul(&g, &h);
        e.resize(e.len().max(gh.len()), BigInt::zero());
        for (i, c) in gh.iter().enumerate() {
            e[i] -= c;
        }
        z_trim(&mut e);
        let d: ZPoly = e.iter().map(|c| c / &pj).collect();
        let d = pm_from_z(&d, p);
        let td = pm_mul(&t, &d, p);
        let (q, u) = pm_divrem(&td, g0, p);
        let w = pm_add(&pm_mul(&s, &d, p), &pm_mul(&q, h0, p), p);
        for (i, &c) in u.iter().enumerate() {
            if i >= g.len() {
                g.resize(i + 1, BigInt::zero());
            }
            g[i] += &pj * BigInt::from(c);
        }
        for (i, &c) in w.iter().enumerate() {
            if i >= h.len() {
                h.resize(i + 1, BigInt::zero());
            }
            h[i] += &pj * BigInt::from(c);
        }
        pj *= p;
    }
    (z_mod_reduce(&g, &pj), z_mod_reduce(&h, &pj))
}

fn hensel_multi(f: &ZPoly, facs: &[PmPoly], p: i64, pk: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![z_mod_reduce(f, pk)];
    }
    let mid = facs.len() / 2;
    let mut g0: PmPoly = vec![1];
    for fac in &facs[..mid] {
        g0 = pm_mul(&g0, fac, p);
    }
    let mut h0: PmPoly = vec![1];
    for fac in &facs[mid..] {
        h0 = pm_mul(&h0, fac, p);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, p, pk);
    let mut out = hensel_multi(&g, &facs[..mid], p, pk);
    out.extend(hensel_multi(&h, &facs[mid..], p, pk));
    out
}

// ---------------------------------------------------------------------------
// Recombination
// ---------------------------------------------------------------------------

fn symmetric(f: &ZPoly, pk: &BigInt) -> ZPoly {
    let half = pk / 2;
    let mut out: ZPoly = f
        .iter()
        .map(|c| {
            if c > &half {
                c - pk
            } else {
                c.clone()
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, pool: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool {
            cur.push(i);
            rec(i + 1, pool, k, cur, out);
            cur.pop();
        }
    }
    rec(0, pool, k, &mut cur, &mut out);
    out
}

/// Zassenhaus recombination: true irreducible factors of a monic `f` from its
/// lifted modular factors.
fn recombine(mut f: ZPoly, lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = vec![];
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        'combo: for combo in combinations(remaining.len(), size) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &pos in &combo {
                cand = z_mod_reduce(&z_mul(&cand, &lifted[remaining[pos]]), pk);
            }
            let cand = symmetric(&cand, pk);
            // Cheap screen: the constant term must divide f's constant term.
            if !f[0].is_zero() && !cand[0].is_zero() && !(f[0].clone() % &cand[0]).is_zero() {
                continue 'combo;
            }
            if let Some(q) = z_divexact(&f, &cand) {
                out.push(cand);
                f = q;
                for &pos in combo.iter().rev() {
                    remaining.remove(pos);
                }
                found = true;
                break 'combo;
            }
        }
        if !found {
            size += 1;
        }
    }
    if !f.is_empty() && z_deg(&f) >= 1 {
        out.push(f);
    }
    out
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

fn small_primes() -> impl Iterator<Item = i64> {
    (3i64..100_000).filter(|&n| {
        if n % 2 == 0 {
            return false;
        }
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

/// Monic transform: returns `(g, a)` with `g(y) = a^(n-1) f(y/a)` monic and
/// `a = lc(f)`.
fn monicize(f: &ZPoly) -> (ZPoly, BigInt) {
    let n = z_deg(f);
    let a = f.last().unwrap().clone();
    let mut g = Vec::with_capacity(f.len());
    for (i, c) in f.iter().enumerate() {
        g.push(c * a.pow((n - 1 - i.min(n - 1)) as u32));
    }
    // The transform above would scale the leading term too; fix it to 1.
    g[n] = BigInt::one();
    (g, a)
}

/// Irreducible factors of a primitive squarefree polynomial of degree >= 1.
fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = z_deg(f);
    if n == 1 {
        return vec![f.clone()];
    }
    let (g, a) = monicize(f);
    let gp_der = z_derivative(&g);
    let p = small_primes()
        .find(|&p| {
            let fp = pm_from_z(&g, p);
            if pm_deg(&fp) != n {
                return false;
            }
            let dp = pm_from_z(&gp_der, p);
            pm_deg(&pm_gcd(&fp, &dp, p)) == 0
        })
        .expect("no squarefree prime found");
    let fp = pm_from_z(&g, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficient bound for monic factors of g (loose Mignotte-style bound).
    let norm: BigInt = g.iter().map(|c| c.abs()).sum::<BigInt>() + 1;
    let bound: BigInt = (BigInt::one() << n) * norm * 2 + 1;
    let mut pk = BigInt::from(p);
    while pk < bound {
        pk *= p;
    }
    let lifted = hensel_multi(&z_mod_reduce(&g, &pk), &modular, p, &pk);
    let g_factors = recombine(g, lifted, &pk);
    g_factors
        .iter()
        .map(|h| z_primitive(&z_compose_linear(h, &BigInt::zero(), &a)))
        .collect()
}

/// Irreducible factorization over Q: primitive positive-lc factors with
/// multiplicities. The rational content is discarded.
pub fn z_factor(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut f = z_primitive(f);
    z_trim(&mut f);
    assert!(!f.is_empty(), "cannot factor the zero polynomial");
    if z_deg(&f) == 0 {
        return vec![];
    }
    let der = z_derivative(&f);
    let sq = z_primitive(&z_divexact(&f, &z_gcd(&f, &der)).expect("squarefree part"));
    let irr = factor_squarefree(&sq);
    let mut out = vec![];
    let mut rest = f.clone();
    for u in irr {
        let mut mult = 0u32;
        while let Some(q) = z_divexact(&rest, &u) {
            rest = q;
            mult += 1;
        }
        assert!(mult >= 1);
        out.push((u, mult));
    }
    debug_assert_eq!(z_deg(&rest), 0);
    debug_assert_eq!(
        {
            let mut prod: ZPoly = vec![BigInt::one()];
            for (u, m) in &out {
                for _ in 0..*m {
                    prod = z_mul(&prod, u);
                }
            }
            z_primitive(&prod)
        },
        z_primitive(&f)
    );
    out
}

pub fn z_is_irreducible(f: &ZPoly) -> bool {
    let fp = z_primitive(f);
    if fp.is_empty() || z_deg(&fp) == 0 {
        return false;
    }
    let facs = z_factor(&fp);
    facs.len() == 1 && facs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_reals::poly::z_from_i64;

    fn sorted(mut v: Vec<(ZPoly, u32)>) -> Vec<(ZPoly, u32)> {
        v.sort();
        v
    }

    #[test]
    fn irreducible_quadratics_and_cubics() {
        assert!(z_is_irreducible(&z_from_i64(&[-1, -1, 1]))); // x^2-x-1
        assert!(z_is_irreducible(&z_from_i64(&[-1, -1, -1, 1]))); // tribonacci
        assert!(z_is_irreducible(&z_from_i64(&[-2, 0, 1])));
        assert!(!z_is_irreducible(&z_from_i64(&[-1, 0, 1]))); // (x-1)(x+1)
        assert!(!z_is_irreducible(&z_from_i64(&[2]))); // constant
    }

    #[test]
    fn irreducible_despite_reducibility_mod_every_prime() {
        // x^4+1 and the minimal polynomial of sqrt(2)+sqrt(3) both factor mod
        // every prime, so a modular certificate alone cannot decide them.
        assert!(z_is_irreducible(&z_from_i64(&[1, 0, 0, 0, 1])));
        assert!(z_is_irreducible(&z_from_i64(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn splits_product_of_quadratics() {
        let a = z_from_i64(&[-2, 0, 1]);
        let b = z_from_i64(&[-3, 0, 1]);
        let f = z_mul(&a, &b);
        let facs = sorted(z_factor(&f));
        assert_eq!(facs, sorted(vec![(a, 1), (b, 1)]));
    }

    #[test]
    fn linear_factors_and_multiplicity() {
        // (x-1)^2 (x+2)
        let f = z_mul(
            &z_mul(&z_from_i64(&[-1, 1]), &z_from_i64(&[-1, 1])),
            &z_from_i64(&[2, 1]),
        );
        let facs = sorted(z_factor(&f));
        assert_eq!(
            facs,
            sorted(vec![(z_from_i64(&[-1, 1]), 2), (z_from_i64(&[2, 1]), 1)])
        );
    }

    #[test]
    fn nonmonic_content_and_sign() {
        // -6x^2 + 6 = -6 (x-1)(x+1)
        let facs = sorted(z_factor(&z_from_i64(&[6, 0, -6])));
        assert_eq!(
            facs,
            sorted(vec![(z_from_i64(&[-1, 1]), 1), (z_from_i64(&[1, 1]), 1)])
        );
        // 2x^2 - 3 is irreducible with non-unit leading coefficient
        assert!(z_is_irreducible(&z_from_i64(&[-3, 0, 2])));
    }

    #[test]
    fn factors_products_of_random_small_polys() {
        let pool = [
            z_from_i64(&[-1, -1, 1]),
            z_from_i64(&[-2, 0, 1]),
            z_from_i64(&[-3, 0, 1]),
            z_from_i64(&[1, 1]),
            z_from_i64(&[-5, 1]),
            z_from_i64(&[1, 0, -10, 0, 1]),
            z_from_i64(&[-1, -1, -1, 1]),
        ];
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let f = z_mul(&pool[i], &pool[j]);
                let facs = sorted(z_factor(&f));
                assert_eq!(
                    facs,
                    sorted(vec![(pool[i].clone(), 1), (pool[j].clone(), 1)]),
                    "failed on product {i} * {j}"
                );
            }
        }
    }
}

//! Constant-expression language for specifying exact algebraic numbers.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' int)?
//! base   := rational | 'phi' | 'tribonacci' | 'sqrt' '(' expr ')'
//!         | 'root' '(' poly ',' '[' rational ',' rational ']' ')' | '(' expr ')'
//! ```
//!
//! Polynomials use the single variable `x` with integer coefficients.
//! Every constant evaluated through one context lands in a single common
//! number field, built up by adjoining generators as they appear (compositum,
//! bounded by a degree cap).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{
    adjoin, map_along, rational_sqrt_bounds, select_factor_at, FieldElement, NumberField,
};
use super::poly::{
    count_roots_in_z, q_interpolate, q_to_z_primitive, z_deg, z_derivative,
    z_divexact, z_eval_q, z_gcd, z_primitive, z_resultant, z_trim, QInterval, ZPoly,
};
use super::ExactError;

pub const DEFAULT_DEGREE_CAP: usize = 8;

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(text: &str) -> Result<Vec<Tok>, ExactError> {
    let mut toks = vec![];
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '[' => {
                toks.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int_part: String = bytes[start..i].iter().collect();
                let mut value = BigRational::from(int_part.parse::<BigInt>().unwrap());
                if i < bytes.len() && bytes[i] == '.' {
                    i += 1;
                    let fstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == fstart {
                        return Err(ExactError::Parse("digits expected after '.'".into()));
                    }
                    let frac: String = bytes[fstart..i].iter().collect();
                    let den = BigInt::from(10).pow((i - fstart) as u32);
                    value += BigRational::new(frac.parse::<BigInt>().unwrap(), den);
                }
                toks.push(Tok::Num(value));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Ident(bytes[start..i].iter().collect()));
            }
            other => {
                return Err(ExactError::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Ast {
    Rat(BigRational),
    Phi,
    Tribonacci,
    Sqrt(Box<Ast>),
    Root(ZPoly, BigRational, BigRational),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExactError> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(ExactError::Parse(format!("expected {t:?}, got {got:?}"))),
        }
    }

    fn parse_expr(&mut self) -> Result<Ast, ExactError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ExactError> {
        let mut lhs = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.parse_factor()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.parse_factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Ast, ExactError> {
        let base = self.parse_base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let e = self.parse_int()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn parse_int(&mut self) -> Result<i64, ExactError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(r)) if r.is_integer() => {
                let v = i64::try_from(r.to_integer())
                    .map_err(|_| ExactError::Parse("exponent too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            got => Err(ExactError::Parse(format!("integer expected, got {got:?}"))),
        }
    }

    fn parse_signed_rational(&mut self) -> Result<BigRational, ExactError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        let mut v = match self.next() {
            Some(Tok::Num(r)) => r,
            got => return Err(ExactError::Parse(format!("rational expected, got {got:?}"))),
        };
        if self.peek() == Some(&Tok::Slash) {
            self.next();
            match self.next() {
                Some(Tok::Num(d)) if !d.is_zero() => v /= d,
                got => {
                    return Err(ExactError::Parse(format!(
                        "nonzero denominator expected, got {got:?}"
                    )))
                }
            }
        }
        Ok(if neg { -v } else { v })
    }

    fn parse_base(&mut self) -> Result<Ast, ExactError> {
        match self.next() {
            Some(Tok::Num(r)) => Ok(Ast::Rat(r)),
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "phi" => Ok(Ast::Phi),
                "tribonacci" => Ok(Ast::Tribonacci),
                "sqrt" => {
                    self.expect(Tok::LParen)?;
                    let inner = self.parse_expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Ast::Sqrt(Box::new(inner)))
                }
                "root" => {
                    self.expect(Tok::LParen)?;
                    let poly = self.parse_poly()?;
                    self.expect(Tok::Comma)?;
                    self.expect(Tok::LBracket)?;
                    let lo = self.parse_signed_rational()?;
                    self.expect(Tok::Comma)?;
                    let hi = self.parse_signed_rational()?;
                    self.expect(Tok::RBracket)?;
                    self.expect(Tok::RParen)?;
                    Ok(Ast::Root(poly, lo, hi))
                }
                other => Err(ExactError::Parse(format!("unknown constant '{other}'"))),
            },
            got => Err(ExactError::Parse(format!("unexpected token {got:?}"))),
        }
    }

    /// Polynomial in `x` with integer coefficients, e.g. `x^3 - x^2 - 2*x - 1`.
    fn parse_poly(&mut self) -> Result<ZPoly, ExactError> {
        let mut coeffs: Vec<BigInt> = vec![];
        let mut sign = BigInt::one();
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            sign = -sign;
        }
        loop {
            let (coef, pow) = self.parse_monomial()?;
            let idx = pow as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, BigInt::zero());
            }
            coeffs[idx] += &sign * coef;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = BigInt::one();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -BigInt::one();
                }
                _ => break,
            }
        }
        z_trim(&mut coeffs);
        if coeffs.is_empty() {
            return Err(ExactError::Parse("zero polynomial".into()));
        }
        Ok(coeffs)
    }

    fn parse_monomial(&mut self) -> Result<(BigInt, u32), ExactError> {
        let mut coef: Option<BigInt> = None;
        if let Some(Tok::Num(r)) = self.peek() {
            if !r.is_integer() {
                return Err(ExactError::Parse("integer coefficient expected".into()));
            }
            coef = Some(r.to_integer());
            self.next();
            if self.peek() == Some(&Tok::Star) {
                self.next();
            }
        }
        match self.peek() {
            Some(Tok::Ident(v)) if v == "x" => {
                self.next();
                let pow = if self.peek() == Some(&Tok::Caret) {
                    self.next();
                    let e = self.parse_int()?;
                    u32::try_from(e)
                        .map_err(|_| ExactError::Parse("negative power in polynomial".into()))?
                } else {
                    1
                };
                Ok((coef.unwrap_or_else(BigInt::one), pow))
            }
            _ => match coef {
                Some(c) => Ok((c, 0)),
                None => Err(ExactError::Parse("monomial expected".into())),
            },
        }
    }
}

fn parse_text(text: &str) -> Result<Ast, ExactError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// Evaluation in a shared field context
// ---------------------------------------------------------------------------

struct Leaf {
    poly: ZPoly,
    lo: BigRational,
    hi: BigRational,
    element: FieldElement,
}

/// Accumulates a tower of field extensions so that every constant evaluated
/// through the same context ends up in one common number field.
pub struct ConstantPool {
    cap: usize,
    fields: Vec<Arc<NumberField>>,
    /// `embeds[i]` is the image of `fields[i]`'s generator in `fields[i+1]`.
    embeds: Vec<FieldElement>,
    leaves: Vec<Leaf>,
}

impl ConstantPool {
    pub fn new() -> ConstantPool {
        Self::with_cap(DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(cap: usize) -> ConstantPool {
        ConstantPool {
            cap,
            fields: vec![NumberField::rationals()],
            embeds: vec![],
            leaves: vec![],
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.fields.last().unwrap()
    }

    /// Re-expresses an element produced earlier by this pool in the current
    /// (largest) field.
    pub fn lift(&self, elem: &FieldElement) -> FieldElement {
        let idx = self
            .fields
            .iter()
            .position(|f| Arc::ptr_eq(f, elem.field()))
            .expect("element does not belong to this pool");
        let mut e = elem.clone();
        for emb in &self.embeds[idx..] {
            e = map_along(&e, emb);
        }
        e
    }

    pub fn parse(&mut self, text: &str) -> Result<FieldElement, ExactError> {
        let ast = parse_text(text)?;
        self.eval(&ast)
    }

    fn eval(&mut self, ast: &Ast) -> Result<FieldElement, ExactError> {
        match ast {
            Ast::Rat(r) => Ok(FieldElement::from_rational(self.field(), r.clone())),
            Ast::Phi => self.adjoin_root(
                &[-1i64, -1, 1].iter().map(|&c| BigInt::from(c)).collect(),
                &BigRational::from(BigInt::one()),
                &BigRational::from(BigInt::from(2)),
            ),
            Ast::Tribonacci => self.adjoin_root(
                &[-1i64, -1, -1, 1].iter().map(|&c| BigInt::from(c)).collect(),
                &BigRational::from(BigInt::one()),
                &BigRational::from(BigInt::from(2)),
            ),
            Ast::Add(a, b) => {
                let ea = self.eval(a)?;
                let eb = self.eval(b)?;
                Ok(&self.lift(&ea) + &eb)
            }
            Ast::Sub(a, b) => {
                let ea = self.eval(a)?;
                let eb = self.eval(b)?;
                Ok(&self.lift(&ea) - &eb)
            }
            Ast::Mul(a, b) => {
                let ea = self.eval(a)?;
                let eb = self.eval(b)?;
                Ok(&self.lift(&ea) * &eb)
            }
            Ast::Div(a, b) => {
                let ea = self.eval(a)?;
                let eb = self.eval(b)?;
                if eb.is_zero() {
                    return Err(ExactError::Domain("division by zero".into()));
                }
                Ok(&self.lift(&ea) / &eb)
            }
            Ast::Pow(a, e) => {
                let ea = self.eval(a)?;
                if *e < 0 && ea.is_zero() {
                    return Err(ExactError::Domain("negative power of zero".into()));
                }
                Ok(ea.pow(*e))
            }
            Ast::Sqrt(a) => {
                let ea = self.eval(a)?;
                self.sqrt_of(&ea)
            }
            Ast::Root(p, lo, hi) => self.root_of(p, lo, hi),
        }
    }

    /// Adjoins the root of an irreducible polynomial isolated in `(lo, hi)`,
    /// reusing a previously-adjoined identical generator when possible.
    fn adjoin_root(
        &mut self,
        poly: &ZPoly,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<FieldElement, ExactError> {
        for leaf in &self.leaves {
            if &leaf.poly == poly && same_root(poly, (&leaf.lo, &leaf.hi), (lo, hi)) {
                return Ok(self.lift(&leaf.element));
            }
        }
        let adj = adjoin(self.field(), poly, lo, hi, self.cap)?;
        if adj.field.degree() > self.cap {
            return Err(ExactError::FieldTooLarge { required: adj.field.degree(), cap: self.cap });
        }
        if !Arc::ptr_eq(&adj.field, self.field()) {
            self.embeds.push(adj.old_gen);
            self.fields.push(adj.field);
        }
        self.leaves.push(Leaf {
            poly: poly.clone(),
            lo: lo.clone(),
            hi: hi.clone(),
            element: adj.new_root.clone(),
        });
        Ok(adj.new_root)
    }

    fn sqrt_of(&mut self, e: &FieldElement) -> Result<FieldElement, ExactError> {
        match e.sign() {
            s if s < 0 => {
                return Err(ExactError::Domain("sqrt of a negative value".into()));
            }
            0 => return Ok(FieldElement::zero(self.field())),
            _ => {}
        }
        if let Some(r) = e.as_rational() {
            let pq = r.numer() * r.denom();
            let s = num_integer::Roots::sqrt(&pq);
            if &s * &s == pq {
                return Ok(FieldElement::from_rational(
                    self.field(),
                    BigRational::new(s, r.denom().clone()),
                ));
            }
            // Minimal polynomial q x^2 - p, positive root isolated in (0, B).
            let poly = z_primitive(&vec![-r.numer().clone(), BigInt::zero(), r.denom().clone()]);
            let bound = BigRational::from(BigInt::one()).max(r.clone()) + BigRational::one();
            return self.adjoin_root(&poly, &BigRational::zero(), &bound);
        }
        // Irrational radicand: resultant eliminates θ from D y^2 - C(θ).
        let f = self.field().min_poly().clone();
        let df = z_deg(&f);
        let mut den = BigInt::one();
        for c in e.coeffs() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let c_poly: ZPoly = {
            let mut p: ZPoly = e
                .coeffs()
                .iter()
                .map(|c| (c * BigRational::from(den.clone())).to_integer())
                .collect();
            z_trim(&mut p);
            p
        };
        let deg_p = 2 * df;
        let mut points = Vec::with_capacity(deg_p + 1);
        for t in 0..=(deg_p as i64) {
            let mut h: ZPoly = c_poly.iter().map(|c| -c).collect();
            let shift = &den * BigInt::from(t) * BigInt::from(t);
            if h.is_empty() {
                h.push(shift);
            } else {
                h[0] += shift;
            }
            z_trim(&mut h);
            points.push((
                BigRational::from(BigInt::from(t)),
                BigRational::from(z_resultant(&f, &h)),
            ));
        }
        let r_poly = q_to_z_primitive(&q_interpolate(&points));
        let sq = squarefree_part(&r_poly);
        let candidates: Vec<ZPoly> =
            super::factor::z_factor(&sq).into_iter().map(|(p, _)| p).collect();
        let target = e.clone();
        let encloser = |step: u32| {
            let mut bits = 24 * (step + 1);
            loop {
                let iv = target.enclosure_bits(bits);
                if iv.lo.is_positive() {
                    let (slo, _) = rational_sqrt_bounds(&iv.lo, bits);
                    let (_, shi) = rational_sqrt_bounds(&iv.hi, bits);
                    return QInterval { lo: slo, hi: shi };
                }
                bits += 24;
            }
        };
        let (h, slo, shi) = select_factor_at(&candidates, encloser);
        if z_deg(&h) == 1 {
            // sqrt collapsed to a rational (cannot happen for irrational e).
            return Ok(FieldElement::from_rational(
                self.field(),
                -BigRational::new(h[0].clone(), h[1].clone()),
            ));
        }
        let root = self.adjoin_root(&h, &slo, &shi)?;
        let e_lifted = self.lift(e);
        assert_eq!(&root * &root, e_lifted, "sqrt adjunction is inconsistent");
        Ok(root)
    }

    fn root_of(
        &mut self,
        poly: &ZPoly,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<FieldElement, ExactError> {
        let p = z_primitive(poly);
        if p.is_empty() || z_deg(&p) == 0 {
            return Err(ExactError::Parse("constant polynomial in root(...)".into()));
        }
        if lo >= hi {
            return Err(ExactError::NotIsolating);
        }
        let sq = squarefree_part(&p);
        if z_eval_q(&sq, lo).is_zero() || z_eval_q(&sq, hi).is_zero() {
            return Err(ExactError::NotIsolating);
        }
        let factors = super::factor::z_factor(&p);
        let mut hits: Vec<(&ZPoly, usize)> = vec![];
        for (fac, _) in &factors {
            let n = count_roots_in_z(fac, lo, hi);
            if n > 0 {
                hits.push((fac, n));
            }
        }
        let total: usize = hits.iter().map(|(_, n)| n).sum();
        match total {
            0 => Err(ExactError::NotIsolating),
            1 => {
                let fac = hits[0].0;
                if z_deg(fac) == 1 {
                    return Ok(FieldElement::from_rational(
                        self.field(),
                        -BigRational::new(fac[0].clone(), fac[1].clone()),
                    ));
                }
                self.adjoin_root(&fac.clone(), lo, hi)
            }
            _ if hits.len() == 1 => Err(ExactError::NotIsolating),
            _ => Err(ExactError::Reducible(
                "interval spans roots of several irreducible factors".into(),
            )),
        }
    }
}

fn squarefree_part(p: &ZPoly) -> ZPoly {
    let der = z_derivative(p);
    if der.is_empty() {
        return p.clone();
    }
    z_primitive(&z_divexact(p, &z_gcd(p, &der)).expect("squarefree part"))
}

fn same_root(
    poly: &ZPoly,
    a: (&BigRational, &BigRational),
    b: (&BigRational, &BigRational),
) -> bool {
    if a.0 == b.0 && a.1 == b.1 {
        return true;
    }
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    if lo >= hi {
        return false;
    }
    if z_eval_q(poly, lo).is_zero() || z_eval_q(poly, hi).is_zero() {
        return false;
    }
    count_roots_in_z(poly, lo, hi) == 1
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// Parses several constants into one common field.
pub fn parse_constants_with_cap(
    texts: &[&str],
    cap: usize,
) -> Result<Vec<FieldElement>, ExactError> {
    let mut pool = ConstantPool::with_cap(cap);
    let mut elems = vec![];
    for t in texts {
        elems.push(pool.parse(t)?);
    }
    Ok(elems.iter().map(|e| pool.lift(e)).collect())
}

pub fn parse_constants(texts: &[&str]) -> Result<Vec<FieldElement>, ExactError> {
    parse_constants_with_cap(texts, DEFAULT_DEGREE_CAP)
}

pub fn parse_constant(text: &str) -> Result<FieldElement, ExactError> {
    Ok(parse_constants(&[text])?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn close(x: &FieldElement, expected: f64) {
        assert!(
            (x.to_f64() - expected).abs() < 1e-9,
            "expected {expected}, got {}",
            x.to_f64()
        );
    }

    #[test]
    fn rational_arithmetic() {
        let e = parse_constant("1/2 + 1/2").unwrap();
        assert_eq!(e.as_rational(), Some(BigRational::one()));
        let e = parse_constant("(2 + 3) * 4 / 10").unwrap();
        assert_eq!(e.as_rational().unwrap().to_f64().unwrap(), 2.0);
    }

    #[test]
    fn phi_and_inverse_powers() {
        let e = parse_constant("1/phi^3").unwrap();
        assert_eq!(e.field().degree(), 2);
        close(&e, 0.23606797749978969);
        let phi = parse_constant("phi").unwrap();
        let check = &(&phi * &phi) - &phi;
        assert_eq!(check.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn tribonacci_reciprocal_identity() {
        let elems = parse_constants(&["1/tribonacci", "1/tribonacci^2", "1/tribonacci^3"]).unwrap();
        let sum = &(&elems[0] + &elems[1]) + &elems[2];
        assert_eq!(sum.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn root_syntax_matches_named_constant() {
        let both = parse_constants(&["root(x^3 - x^2 - x - 1, [1.8, 1.9])", "tribonacci"]).unwrap();
        assert_eq!(both[0], both[1]);
        close(&both[0], 1.8392867552141612);
    }

    #[test]
    fn sqrt_compositum() {
        let elems = parse_constants(&["sqrt(2)/4", "sqrt(3)/6"]).unwrap();
        assert_eq!(elems[0].field().degree(), 4);
        close(&elems[0], 0.35355339059327373);
        close(&elems[1], 0.2886751345948129);
        let s2 = parse_constant("sqrt(2) + sqrt(8)").unwrap();
        close(&s2, 3.0 * 1.4142135623730951);
        // sqrt(4) stays rational
        let four = parse_constant("sqrt(4)").unwrap();
        assert_eq!(four.as_rational(), Some(BigRational::from(BigInt::from(2))));
    }

    #[test]
    fn sqrt_of_irrational_value() {
        let e = parse_constant("sqrt(phi)").unwrap();
        assert_eq!(e.field().degree(), 4);
        close(&e, 1.2720196495140689);
        let sq = &e * &e;
        let phi_again = parse_constant("phi").unwrap();
        close(&sq, phi_again.to_f64());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_constant("1 +"), Err(ExactError::Parse(_))));
        assert!(matches!(parse_constant("tau"), Err(ExactError::Parse(_))));
        assert!(matches!(parse_constant("sqrt(0-2)"), Err(ExactError::Domain(_))));
        assert!(matches!(parse_constant("1/0"), Err(ExactError::Domain(_))));
    }

    #[test]
    fn root_interval_errors() {
        // two roots of x^2-2 in (-2,2)
        assert!(matches!(
            parse_constant("root(x^2 - 2, [-2, 2])"),
            Err(ExactError::NotIsolating)
        ));
        // no roots
        assert!(matches!(
            parse_constant("root(x^2 - 2, [2, 3])"),
            Err(ExactError::NotIsolating)
        ));
        // reducible with roots of two distinct factors inside
        assert!(matches!(
            parse_constant("root(x^2 - 3*x + 2, [1/2, 5/2])"),
            Err(ExactError::Reducible(_))
        ));
        // reducible but unambiguous: reduce internally
        let e = parse_constant("root(x^3 - 2*x, [1, 2])").unwrap();
        close(&e, std::f64::consts::SQRT_2);
        // rational root of a reducible polynomial
        let e = parse_constant("root(x^2 - 3*x + 2, [1/2, 3/2])").unwrap();
        assert_eq!(e.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn field_too_large() {
        assert!(matches!(
            parse_constants_with_cap(&["sqrt(2) + sqrt(3) + sqrt(5)"], 4),
            Err(ExactError::FieldTooLarge { .. })
        ));
        let ok = parse_constants_with_cap(&["sqrt(2) + sqrt(3) + sqrt(5)"], 8).unwrap();
        close(&ok[0], 1.4142135623730951 + 1.7320508075688772 + 2.23606797749979);
    }
}

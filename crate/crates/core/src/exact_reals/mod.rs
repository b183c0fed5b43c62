//! Exact real arithmetic over algebraic number fields.
//!
//! The submodules build up, in order: integer and rational polynomial
//! arithmetic with Sturm root isolation ([`poly`]), factorization of integer
//! polynomials into irreducibles ([`factor`]), number fields with exact
//! element arithmetic, comparison, and floors ([`field`]), and a small
//! expression language for writing down algebraic constants ([`expr`]).

pub mod expr;
pub mod factor;
pub mod field;
pub mod poly;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("compositum degree {required} exceeds cap {cap}")]
    FieldTooLarge { required: usize, cap: usize },
    #[error("interval does not isolate a single root")]
    NotIsolating,
    #[error("reducible polynomial: {0}")]
    Reducible(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub use expr::{parse_constant, parse_constants, parse_constants_with_cap, ConstantPool};
pub use field::{FieldElement, FloorBounds, NumberField};

/// The carry indicator for floor identities: 1 if `s + t >= 1`, else 0.
/// Both arguments must be fractional parts, i.e. lie in `[0, 1)`.
pub fn delta(s: &FieldElement, t: &FieldElement) -> Result<u8, ExactError> {
    for x in [s, t] {
        let in_range = x.sign() >= 0 && x.add_rat(&-num_rational::BigRational::one()).sign() < 0;
        if !in_range {
            return Err(ExactError::Domain("delta argument outside [0, 1)".into()));
        }
    }
    let shifted = (s + t).add_rat(&-num_rational::BigRational::one());
    Ok(u8::from(shifted.sign() >= 0))
}

use num_traits::One;

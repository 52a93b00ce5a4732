use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::snf::{smith_normal_form, IntMatrix};
use crate::exactmath::Rational;

/// Homomorphism from a free group `Z^n` into `Q*`, stored by its values on
/// the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Rational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("character value must be nonzero (basis element {0})")]
    ZeroValue(usize),
    #[error("embedding is not injective")]
    NotInjective,
    #[error("extension needs a {exponent}-th root of {value}, which is not rational")]
    Obstructed { exponent: BigInt, value: Rational },
}

impl Character {
    pub fn new(values: Vec<Rational>) -> Result<Self, CharacterError> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(CharacterError::ZeroValue(i));
        }
        Ok(Character { values })
    }

    pub fn trivial(rank: usize) -> Self {
        Character { values: vec![Rational::one(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, x: &[BigInt]) -> Rational {
        assert_eq!(x.len(), self.values.len());
        self.values.iter().zip(x).fold(Rational::one(), |acc, (v, e)| acc * pow_rational(v, e))
    }

    pub fn eval_i64(&self, x: &[i64]) -> Rational {
        let x: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
        self.eval(&x)
    }

    /// Values on the columns of an integer matrix.
    pub fn restrict(&self, embedding: &IntMatrix) -> Character {
        Character { values: (0..embedding.cols()).map(|j| self.eval(&embedding.column(j))).collect() }
    }
}

pub fn pow_rational(v: &Rational, e: &BigInt) -> Rational {
    let k = e.abs().to_i32().expect("exponent too large");
    let p = num_traits::pow(v.clone(), k as usize);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// Exact `d`-th root in `Q`, choosing the positive root for even `d`.
pub fn rational_root(x: &Rational, d: &BigInt) -> Option<Rational> {
    let d = d.to_u32()?;
    if d == 1 {
        return Some(x.clone());
    }
    if x.is_negative() && d % 2 == 0 {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(d);
        (num_traits::pow(r.clone(), d as usize) == n.abs()).then(|| if n.is_negative() { -r } else { r })
    };
    Some(Rational::new(root_int(x.numer())?, root_int(x.denom())?))
}

/// Extends a character given on the columns of `embedding` (a basis of a
/// sublattice of `Z^n`) to all of `Z^n`.
///
/// Over `Q` this can fail: the sublattice `2Z` with value 2 would need a
/// square root of 2. The failure carries the exponent and the value that has
/// no rational root. On saturated sublattices every invariant factor is 1 and
/// the extension always exists.
pub fn extend_character(values: &Character, embedding: &IntMatrix) -> Result<Character, CharacterError> {
    let n = embedding.rows();
    let k = embedding.cols();
    assert_eq!(values.rank(), k);
    let snf = smith_normal_form(embedding);
    if snf.rank() < k {
        return Err(CharacterError::NotInjective);
    }
    // basis b_j = columns of u^{-1}; the sublattice has basis d_j b_j = (embedding v)_j
    let transformed = values.restrict(&snf.v);
    let diag = snf.diagonal();
    let mut on_b = vec![Rational::one(); n];
    for j in 0..k {
        on_b[j] = rational_root(&transformed.values[j], &diag[j]).ok_or_else(|| CharacterError::Obstructed {
            exponent: diag[j].clone(),
            value: transformed.values[j].clone(),
        })?;
    }
    // e_i = sum_j u_{ji} b_j
    let chi_b = Character { values: on_b };
    let ext = chi_b.restrict(&snf.u);
    debug_assert_eq!(&ext.restrict(embedding), values);
    Ok(ext)
}

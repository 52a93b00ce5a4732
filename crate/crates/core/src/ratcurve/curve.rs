use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::CurveError;
use crate::exactmath::Rational;

/// A point of the projective line: a rational value or infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum P1Point {
    Finite(Rational),
    Infinity,
}

impl P1Point {
    pub fn finite(n: i64) -> Self {
        P1Point::Finite(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(a) => write!(f, "{a}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for P1Point {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, CurveError> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞" | "oo") {
            return Ok(P1Point::Infinity);
        }
        t.parse::<Rational>().map(P1Point::Finite).map_err(|_| CurveError::BadPoint(s.to_string()))
    }
}

/// One copy of a point on a glued line. Ordinary points have the single copy 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CurvePoint {
    pub base: P1Point,
    pub copy: u32,
}

impl CurvePoint {
    pub fn new(base: P1Point, copy: u32) -> Self {
        CurvePoint { base, copy }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, "'".repeat(self.copy as usize))
    }
}

/// The projective line with finitely many points replaced by several copies:
/// `m` copies of the line glued along the complement of the special points.
///
/// The special points keep their input order, which fixes the order of point
/// copies everywhere downstream. The anchor is the special point that absorbs
/// ordinary points when divisors are moved onto special support, and whose
/// copies are all kept in the canonical Picard basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GluedCurve {
    special: Vec<(P1Point, u32)>,
    anchor: usize,
}

impl GluedCurve {
    /// Anchor defaults to the first special point.
    pub fn new(special: Vec<(P1Point, u32)>) -> Result<Self, CurveError> {
        if special.is_empty() {
            return Err(CurveError::NoSpecialPoints);
        }
        for (i, (p, m)) in special.iter().enumerate() {
            if *m == 0 {
                return Err(CurveError::ZeroMultiplicity(p.clone()));
            }
            if special[..i].iter().any(|(q, _)| q == p) {
                return Err(CurveError::DuplicatePoint(p.clone()));
            }
        }
        Ok(GluedCurve { special, anchor: 0 })
    }

    pub fn with_anchor(mut self, anchor: &P1Point) -> Result<Self, CurveError> {
        self.anchor = self
            .special
            .iter()
            .position(|(p, _)| p == anchor)
            .ok_or_else(|| CurveError::AnchorNotSpecial(anchor.clone()))?;
        Ok(self)
    }

    /// The ordinary projective line, with infinity as its marked point.
    pub fn projective_line() -> Self {
        GluedCurve { special: vec![(P1Point::Infinity, 1)], anchor: 0 }
    }

    /// The line with 0, 1 and infinity doubled, anchored at 1.
    pub fn tripled_line() -> Self {
        GluedCurve::new(vec![(P1Point::finite(0), 2), (P1Point::finite(1), 2), (P1Point::Infinity, 2)])
            .and_then(|c| c.with_anchor(&P1Point::finite(1)))
            .expect("valid curve")
    }

    /// The line with 0 doubled and infinity marked.
    pub fn doubled_line() -> Self {
        GluedCurve::new(vec![(P1Point::finite(0), 2), (P1Point::Infinity, 1)]).expect("valid curve")
    }

    pub fn special(&self) -> &[(P1Point, u32)] {
        &self.special
    }

    pub fn anchor(&self) -> &P1Point {
        &self.special[self.anchor].0
    }

    pub fn anchor_index(&self) -> usize {
        self.anchor
    }

    pub fn multiplicity(&self, p: &P1Point) -> u32 {
        self.special.iter().find(|(q, _)| q == p).map_or(1, |(_, m)| *m)
    }

    pub fn is_special(&self, p: &P1Point) -> bool {
        self.special.iter().any(|(q, _)| q == p)
    }

    pub fn is_valid_point(&self, cp: &CurvePoint) -> bool {
        cp.copy < self.multiplicity(&cp.base)
    }

    /// All copies of all special points, in curve order.
    pub fn special_copies(&self) -> Vec<CurvePoint> {
        self.special.iter().flat_map(|(p, m)| (0..*m).map(move |i| CurvePoint::new(p.clone(), i))).collect()
    }

    pub fn copies_of(&self, p: &P1Point) -> Vec<CurvePoint> {
        (0..self.multiplicity(p)).map(|i| CurvePoint::new(p.clone(), i)).collect()
    }

    /// Smallest nonnegative integer that is not a special point.
    pub fn ordinary_point(&self) -> P1Point {
        (0..).map(P1Point::finite).find(|p| !self.is_special(p)).expect("finitely many special points")
    }

    /// Least common multiple of all multiplicities.
    pub fn multiplicity_lcm(&self) -> u64 {
        self.special.iter().fold(1u64, |acc, (_, m)| acc.lcm(&(*m as u64)))
    }

    /// `1 + sum (m_s - 1)`
    pub fn expected_picard_rank(&self) -> usize {
        1 + self.special.iter().map(|(_, m)| *m as usize - 1).sum::<usize>()
    }
}

/// Integer divisor on a glued line; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Divisor {
    coeffs: BTreeMap<CurvePoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(cp: CurvePoint) -> Self {
        Self::from_terms([(cp, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in terms {
            d.add_at(p, c);
        }
        d
    }

    pub fn add_at(&mut self, p: CurvePoint, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(p.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &CurvePoint) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePoint, &i64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.coeffs.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in &other.coeffs {
            d.add_at(p.clone(), *c);
        }
        d
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    /// Checks that every copy index is valid on the curve.
    pub fn validate(&self, curve: &GluedCurve) -> Result<(), CurveError> {
        match self.coeffs.keys().find(|p| !curve.is_valid_point(p)) {
            Some(p) => Err(CurveError::InvalidCopy(p.clone())),
            None => Ok(()),
        }
    }

    pub fn is_special_supported(&self, curve: &GluedCurve) -> bool {
        self.coeffs.keys().all(|p| curve.is_special(&p.base))
    }

    /// `sum c_i basis_i`
    pub fn combination(basis: &[Divisor], coeffs: &[i64]) -> Divisor {
        assert_eq!(basis.len(), coeffs.len());
        basis.iter().zip(coeffs).fold(Divisor::zero(), |acc, (b, &c)| acc.add(&b.scale(c)))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.coeffs.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "[{p}]")?;
        }
        Ok(())
    }
}

/// Divisor on the underlying projective line (no copies).
pub type LineDivisor = BTreeMap<P1Point, i64>;

pub fn line_divisor_degree(d: &LineDivisor) -> i64 {
    d.values().sum()
}

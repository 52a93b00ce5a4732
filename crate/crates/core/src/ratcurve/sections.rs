use std::collections::BTreeMap;

use num_traits::Zero;

use super::curve::{CurvePoint, Divisor, GluedCurve, LineDivisor, P1Point};
use super::CurveError;
use crate::exactmath::{Rational, RationalFunction, UniPoly};

/// Order of vanishing of `f` at `p` (negative for poles).
pub fn order_at(f: &RationalFunction, p: &P1Point) -> Result<i64, CurveError> {
    if f.is_zero() {
        return Err(CurveError::ZeroFunction);
    }
    Ok(match p {
        P1Point::Finite(a) => f.num().root_multiplicity(a) as i64 - f.den().root_multiplicity(a) as i64,
        P1Point::Infinity => poly_degree(f.den()) - poly_degree(f.num()),
    })
}

fn poly_degree(p: &UniPoly) -> i64 {
    p.degree().expect("nonzero polynomial") as i64
}

/// Divisor of zeros and poles of `f`, with equal coefficients on every copy
/// of a special point.
pub fn principal_divisor(f: &RationalFunction, curve: &GluedCurve) -> Result<Divisor, CurveError> {
    if f.is_zero() {
        return Err(CurveError::ZeroFunction);
    }
    let split = |p: &UniPoly| p.split_rational().ok_or_else(|| CurveError::NonRationalSupport(f.to_string()));
    let mut line = LineDivisor::new();
    for (a, m) in split(f.num())? {
        *line.entry(P1Point::Finite(a)).or_insert(0) += m as i64;
    }
    for (a, m) in split(f.den())? {
        *line.entry(P1Point::Finite(a)).or_insert(0) -= m as i64;
    }
    line.insert(P1Point::Infinity, order_at(f, &P1Point::Infinity)?);
    Ok(pull_back(&line, curve))
}

/// Puts the coefficient of each base point on every one of its copies.
pub fn pull_back(line: &LineDivisor, curve: &GluedCurve) -> Divisor {
    Divisor::from_terms(line.iter().flat_map(|(p, &c)| curve.copies_of(p).into_iter().map(move |cp| (cp, c))))
}

/// Coefficient at each base point is the minimum over all of its copies,
/// with copies outside the support counting as 0.
pub fn min_divisor(d: &Divisor, curve: &GluedCurve) -> LineDivisor {
    let mut per_base: BTreeMap<&P1Point, Vec<i64>> = BTreeMap::new();
    for (cp, &c) in d.terms() {
        per_base.entry(&cp.base).or_default().push(c);
    }
    per_base
        .into_iter()
        .filter_map(|(p, cs)| {
            let full = cs.len() as u32 == curve.multiplicity(p);
            let m = cs.into_iter().min().unwrap();
            let m = if full { m } else { m.min(0) };
            (m != 0).then(|| (p.clone(), m))
        })
        .collect()
}

/// Global sections of `O(D)` on a glued line.
///
/// A function is a section exactly when `div(f) + Dmin >= 0` on the line.
/// Writing `N = prod (z-p)^{-Dmin(p)}` over finite negative points and
/// `P = prod (z-p)^{Dmin(p)}` over finite positive points, sections are
/// `h N / P` with `deg h <= deg Dmin`, and the basis is `z^k N / P`.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    divisor: Divisor,
    dmin: LineDivisor,
    zeros: UniPoly,
    poles: UniPoly,
    basis: Vec<RationalFunction>,
}

impl SectionSpace {
    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn min_divisor(&self) -> &LineDivisor {
        &self.dmin
    }

    pub fn basis(&self) -> &[RationalFunction] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis, or `None` if `f` is not a section.
    pub fn coordinates(&self, f: &RationalFunction) -> Option<Vec<Rational>> {
        if f.is_zero() {
            return Some(vec![Rational::zero(); self.dim()]);
        }
        let num = f.num() * &self.poles;
        let den = f.den() * &self.zeros;
        let h = num.exact_div(&den)?;
        let deg = h.degree().unwrap();
        (deg < self.dim()).then(|| (0..self.dim()).map(|k| h.coeff(k)).collect())
    }

    pub fn contains(&self, f: &RationalFunction) -> bool {
        self.coordinates(f).is_some()
    }

    pub fn element(&self, coords: &[Rational]) -> RationalFunction {
        assert_eq!(coords.len(), self.dim());
        let h = UniPoly::new(coords.to_vec());
        RationalFunction::new(&h * &self.zeros, self.poles.clone())
    }
}

pub fn section_space(curve: &GluedCurve, d: &Divisor) -> SectionSpace {
    let dmin = min_divisor(d, curve);
    let mut zeros = UniPoly::one();
    let mut poles = UniPoly::one();
    for (p, &c) in &dmin {
        if let P1Point::Finite(a) = p {
            let lin = UniPoly::linear(a).pow(c.unsigned_abs() as u32);
            if c < 0 {
                zeros = &zeros * &lin;
            } else {
                poles = &poles * &lin;
            }
        }
    }
    let deg: i64 = dmin.values().sum();
    let basis =
        (0..=deg).map(|k| RationalFunction::new(&UniPoly::monomial(k as usize) * &zeros, poles.clone())).collect();
    SectionSpace { divisor: d.clone(), dmin, zeros, poles, basis }
}

/// Independent membership test through the divisor of `f`.
pub fn satisfies_order_conditions(curve: &GluedCurve, d: &Divisor, f: &RationalFunction) -> Result<bool, CurveError> {
    if f.is_zero() {
        return Ok(true);
    }
    let div = principal_divisor(f, curve)?;
    let mut points: Vec<&CurvePoint> = div.terms().map(|(p, _)| p).collect();
    points.extend(d.terms().map(|(p, _)| p));
    Ok(points.into_iter().all(|p| div.coeff(p) + d.coeff(p) >= 0))
}

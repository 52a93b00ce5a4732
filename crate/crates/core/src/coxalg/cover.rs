use num_traits::Zero;

use super::graded::{add_degrees, GradedAlgebra};
use super::pic::PicGradedAlgebra;
use super::presentation::Generator;
use super::CoxError;
use crate::exactmath::{solve_in_span, MonomialEnumerator, MultiPoly, Rational, RationalFunction, SpanSolution};
use crate::ratcurve::{principal_divisor, CurvePoint, Divisor, P1Point};

/// An affine chart of a glued line: the complement of one base point and of
/// all but one copy of every other base point. It is the non-vanishing
/// locus of `section`, a section of `O(divisor)` written in the component of
/// the class of `divisor`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub removed: P1Point,
    pub kept: Vec<CurvePoint>,
    pub divisor: Divisor,
    pub degree: Vec<i64>,
    pub section: RationalFunction,
}

/// Charts covering the curve. Each copy of a point lies in some chart,
/// because every chart keeps one copy of each base point it does not remove.
/// With a single special point an ordinary point is added as a second base
/// point.
pub fn irrelevant_cover(algebra: &PicGradedAlgebra) -> Result<Vec<Chart>, CoxError> {
    let curve = algebra.curve();
    let picard = algebra.lattice().picard();
    let mut bases: Vec<(P1Point, u32)> = curve.special().to_vec();
    if bases.len() == 1 {
        bases.push((curve.ordinary_point(), 1));
    }
    let mut charts = Vec::new();
    for (b, mb) in &bases {
        let others: Vec<&(P1Point, u32)> = bases.iter().filter(|(p, _)| p != b).collect();
        let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
        for (_, m) in &others {
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    (0..*m).map(move |i| {
                        let mut c = c.clone();
                        c.push(i);
                        c
                    })
                })
                .collect();
        }
        for choice in choices {
            let mut s = Divisor::from_terms((0..*mb).map(|i| (CurvePoint::new(b.clone(), i), 1)));
            let mut kept = Vec::new();
            for ((p, m), &k) in others.iter().zip(&choice) {
                kept.push(CurvePoint::new(p.clone(), k));
                for i in (0..*m).filter(|&i| i != k) {
                    s.add_at(CurvePoint::new(p.clone(), i), 1);
                }
            }
            let (class, ws) = picard.decompose(&s)?;
            let rep = algebra.representative_divisor(&class);
            let (_, wr) = picard.decompose(&rep)?;
            let section = &ws / &wr;
            if principal_divisor(&section, curve)? != s.sub(&rep) || !algebra.pic_component(&class).contains(&section) {
                return Err(CoxError::InternalInconsistency(format!("chart section for {s} is wrong")));
            }
            charts.push(Chart { removed: b.clone(), kept, divisor: s, degree: class, section });
        }
    }
    Ok(charts)
}

/// Writes a homogeneous element as a polynomial in the generators,
/// returning a single monic monomial whenever one evaluates to a nonzero
/// multiple of the element.
pub fn express_in_generators<A: GradedAlgebra>(
    algebra: &A,
    generators: &[Generator<A::Elem>],
    degree: &[i64],
    x: &A::Elem,
) -> Result<MultiPoly, CoxError> {
    let n = generators.len();
    let target = algebra.coordinates(degree, x).ok_or_else(|| CoxError::NotASection(degree.to_vec()))?;
    let en = MonomialEnumerator::new(algebra.layout(), generators.iter().map(|g| g.degree.clone()).collect(), None)?;
    let monos = en.enumerate(degree);
    let mut vectors = Vec::with_capacity(monos.len());
    for e in &monos {
        let mut d = vec![0; degree.len()];
        let mut v = algebra.one();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                v = algebra.mul(&d, &v, &generators[i].degree, &generators[i].element);
                d = add_degrees(&algebra.layout(), &d, &generators[i].degree);
            }
        }
        let coords = algebra
            .coordinates(degree, &v)
            .ok_or_else(|| CoxError::InternalInconsistency("monomial outside its degree".into()))?;
        if proportional(&coords, &target) {
            return Ok(MultiPoly::monomial(e.clone(), Rational::from_integer(1.into())));
        }
        vectors.push(coords);
    }
    match solve_in_span(&vectors, &target) {
        SpanSolution::Coefficients(c) => Ok(MultiPoly::from_terms(n, monos.into_iter().zip(c))),
        SpanSolution::NotInSpan => Err(CoxError::GeneratorsIncomplete(degree.to_vec())),
    }
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let c = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| x * &c == *y)
}

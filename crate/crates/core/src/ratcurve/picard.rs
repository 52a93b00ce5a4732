use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::curve::{CurvePoint, Divisor, GluedCurve, P1Point};
use super::sections::principal_divisor;
use super::CurveError;
use crate::exactmath::RationalFunction;
use crate::grading::{FGAbelianGroup, IntMatrix};

/// A function whose divisor on the line is `[p] - [q]`.
pub fn point_ratio(p: &P1Point, q: &P1Point) -> RationalFunction {
    match (p, q) {
        (P1Point::Finite(a), P1Point::Finite(b)) => &RationalFunction::linear(a) / &RationalFunction::linear(b),
        (P1Point::Finite(a), P1Point::Infinity) => RationalFunction::linear(a),
        (P1Point::Infinity, P1Point::Finite(b)) => RationalFunction::linear(b).recip(),
        (P1Point::Infinity, P1Point::Infinity) => RationalFunction::one(),
    }
}

/// Outcome of a principality test.
#[derive(Clone, Debug, PartialEq)]
pub enum Principality {
    /// `div(witness) = D`
    Principal(RationalFunction),
    /// The nonzero class of `D`.
    NotPrincipal(Vec<i64>),
}

/// Picard group of a glued line, which is always free.
///
/// Classes are written in the basis of point copies: every copy of the
/// anchor, and every copy but the last of the other special points. The
/// principal divisors supported on special points are generated by
/// `C_p - C_anchor`, where `C_p` is the sum of all copies of `p`; together
/// with the basis they form a unimodular matrix, whose inverse reads off
/// classes and principal parts at once.
#[derive(Clone, Debug)]
pub struct Picard {
    curve: GluedCurve,
    group: FGAbelianGroup,
    copies: Vec<CurvePoint>,
    basis: Vec<CurvePoint>,
    relations: Vec<(Divisor, RationalFunction)>,
    inverse: IntMatrix,
    principal_lattice: FGAbelianGroup,
}

pub fn picard_group(curve: &GluedCurve) -> Result<Picard, CurveError> {
    let copies = curve.special_copies();
    let anchor = curve.anchor().clone();
    let mut basis = Vec::new();
    let mut relations = Vec::new();
    for (p, m) in curve.special() {
        let kept = if *p == anchor { *m } else { m - 1 };
        basis.extend((0..kept).map(|i| CurvePoint::new(p.clone(), i)));
        if *p != anchor {
            let d = Divisor::from_terms(
                curve
                    .copies_of(p)
                    .into_iter()
                    .map(|c| (c, 1))
                    .chain(curve.copies_of(&anchor).into_iter().map(|c| (c, -1))),
            );
            relations.push((d, point_ratio(p, &anchor)));
        }
    }
    let n = copies.len();
    let to_vec = |d: &Divisor| -> Vec<i64> { copies.iter().map(|c| d.coeff(c)).collect() };
    let mut cols: Vec<Vec<i64>> = basis.iter().map(|b| to_vec(&Divisor::point(b.clone()))).collect();
    let rel_cols: Vec<Vec<i64>> = relations.iter().map(|(d, _)| to_vec(d)).collect();
    cols.extend(rel_cols.iter().cloned());
    let inverse = IntMatrix::from_i64_columns(&cols, n)
        .unimodular_inverse()
        .ok_or(CurveError::PicardCertificate("basis and relations are not unimodular"))?;
    let principal_lattice = FGAbelianGroup::new(IntMatrix::from_i64_columns(&rel_cols, n));
    if !principal_lattice.is_free() || principal_lattice.rank() != basis.len() {
        return Err(CurveError::PicardCertificate("quotient by principal lattice has unexpected shape"));
    }
    for (d, f) in &relations {
        if principal_divisor(f, curve)? != *d {
            return Err(CurveError::PicardCertificate("relation witness has the wrong divisor"));
        }
    }
    Ok(Picard {
        curve: curve.clone(),
        group: FGAbelianGroup::free(basis.len()),
        copies,
        basis,
        relations,
        inverse,
        principal_lattice,
    })
}

impl Picard {
    pub fn curve(&self) -> &GluedCurve {
        &self.curve
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Special divisors modulo the principal ones, computed by Smith form.
    pub fn principal_quotient(&self) -> &FGAbelianGroup {
        &self.principal_lattice
    }

    pub fn basis_points(&self) -> &[CurvePoint] {
        &self.basis
    }

    pub fn basis_divisors(&self) -> Vec<Divisor> {
        self.basis.iter().map(|b| Divisor::point(b.clone())).collect()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| format!("D_{b}")).collect()
    }

    /// Relation divisors `C_p - C_anchor` with their witnesses.
    pub fn relations(&self) -> &[(Divisor, RationalFunction)] {
        &self.relations
    }

    /// The divisor `sum c_i D_i` in the basis.
    pub fn representative(&self, class: &[i64]) -> Divisor {
        Divisor::combination(&self.basis_divisors(), class)
    }

    pub fn class_of(&self, d: &Divisor) -> Result<Vec<i64>, CurveError> {
        Ok(self.decompose(d)?.0)
    }

    /// Class of `d` together with `g` such that
    /// `d = representative(class) + div(g)`.
    pub fn decompose(&self, d: &Divisor) -> Result<(Vec<i64>, RationalFunction), CurveError> {
        d.validate(&self.curve)?;
        let anchor = self.curve.anchor();
        let mut moved = d.clone();
        let mut witness = RationalFunction::one();
        for (cp, &c) in d.terms() {
            if self.curve.is_special(&cp.base) {
                continue;
            }
            let g = point_ratio(&cp.base, anchor);
            moved.add_at(cp.clone(), -c);
            for a in self.curve.copies_of(anchor) {
                moved.add_at(a, c);
            }
            witness = &witness * &g.powi(c);
        }
        let x: Vec<BigInt> = self.copies.iter().map(|c| BigInt::from(moved.coeff(c))).collect();
        let y = self.inverse.mul_vec(&x);
        let k = self.basis.len();
        for ((_, w), t) in self.relations.iter().zip(&y[k..]) {
            if !t.is_zero() {
                witness = &witness * &w.powi(t.to_i64().ok_or(CurveError::Overflow)?);
            }
        }
        let class = y[..k].iter().map(|v| v.to_i64().ok_or(CurveError::Overflow)).collect::<Result<_, _>>()?;
        Ok((class, witness))
    }

    pub fn is_principal(&self, d: &Divisor) -> Result<Principality, CurveError> {
        let (class, witness) = self.decompose(d)?;
        if class.iter().all(|&c| c == 0) {
            Ok(Principality::Principal(witness))
        } else {
            Ok(Principality::NotPrincipal(class))
        }
    }

    /// `lcm(m) / m_p`; positive on every effective nonzero class.
    pub fn point_weight(&self, cp: &CurvePoint) -> i64 {
        (self.curve.multiplicity_lcm() / self.curve.multiplicity(&cp.base) as u64) as i64
    }

    pub fn weight(&self, class: &[i64]) -> i64 {
        self.basis.iter().zip(class).map(|(b, c)| self.point_weight(b) * c).sum()
    }
}

pub fn is_principal(curve: &GluedCurve, d: &Divisor) -> Result<Principality, CurveError> {
    picard_group(curve)?.is_principal(d)
}

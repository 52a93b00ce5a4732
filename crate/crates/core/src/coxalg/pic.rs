use std::collections::BTreeSet;
use std::sync::Arc;

use super::graded::GradedAlgebra;
use super::lattice::LineBundleLattice;
use super::sections::GradedSectionAlgebra;
use super::shifting::ShiftingFamily;
use super::CoxError;
use crate::exactmath::{EchelonSpan, Rational, RationalFunction};
use crate::grading::FGAbelianGroup;
use crate::ratcurve::{Divisor, GluedCurve, SectionSpace};

/// The Picard-graded algebra `A = R / I`.
///
/// The component of a class `[L]` is the component of `R` at the chosen
/// representative of `[L]`; the projection `R_L → A_[L]` is an isomorphism,
/// so no cosets are ever formed.
#[derive(Debug)]
pub struct PicGradedAlgebra {
    base: GradedSectionAlgebra,
    family: ShiftingFamily,
}

impl PicGradedAlgebra {
    pub fn new(lattice: LineBundleLattice) -> Result<Self, CoxError> {
        let family = ShiftingFamily::build(&lattice)?;
        Ok(Self::with_family(lattice, family))
    }

    pub fn with_family(lattice: LineBundleLattice, family: ShiftingFamily) -> Self {
        PicGradedAlgebra { base: GradedSectionAlgebra::new(Arc::new(lattice)), family }
    }

    pub fn base(&self) -> &GradedSectionAlgebra {
        &self.base
    }

    pub fn lattice(&self) -> &LineBundleLattice {
        self.base.lattice()
    }

    pub fn family(&self) -> &ShiftingFamily {
        &self.family
    }

    pub fn curve(&self) -> &GluedCurve {
        self.lattice().curve()
    }

    pub fn representative(&self, class: &[i64]) -> Vec<i64> {
        self.lattice().lift(class)
    }

    pub fn representative_divisor(&self, class: &[i64]) -> Divisor {
        self.lattice().divisor(&self.representative(class))
    }

    pub fn pic_component(&self, class: &[i64]) -> Arc<SectionSpace> {
        self.base.component(&self.representative(class))
    }

    /// The component of `[l]` computed through `l` instead of the chosen
    /// representative: the basis at `l`, shifted to the representative.
    /// Errors unless it spans the same space as `pic_component`.
    pub fn component_via(&self, l: &[i64]) -> Result<Vec<RationalFunction>, CoxError> {
        let class = self.lattice().pic_class(l);
        let rep = self.representative(&class);
        let e: Vec<i64> = rep.iter().zip(l).map(|(a, b)| a - b).collect();
        let target = self.base.component(&rep);
        let shifted: Vec<RationalFunction> = self
            .base
            .component(l)
            .basis()
            .iter()
            .map(|f| self.family.shift(&self.base, l, &e, f))
            .collect::<Result<_, _>>()?;
        let mut span = EchelonSpan::new(target.dim());
        for f in &shifted {
            let c = target.coordinates(f).ok_or_else(|| CoxError::NotASection(rep.clone()))?;
            span.insert(&c);
        }
        if span.rank() != target.dim() {
            return Err(CoxError::InternalInconsistency(format!("{l:?} and {rep:?} give different components")));
        }
        Ok(shifted)
    }

    /// Lattice elements `rep(c) + sum t_j E_j` with `|t_j| <= shift_radius`,
    /// for every class `c` in `classes`.
    pub fn lattice_box(&self, classes: &[Vec<i64>], shift_radius: i64) -> BTreeSet<Vec<i64>> {
        let mut shifts = vec![self.lattice().zero()];
        for e in self.family.kernel_basis() {
            shifts = shifts
                .into_iter()
                .flat_map(|s| {
                    (-shift_radius..=shift_radius).map(move |t| s.iter().zip(e).map(|(a, b)| a + t * b).collect())
                })
                .collect();
        }
        classes
            .iter()
            .flat_map(|c| {
                let rep = self.representative(c);
                shifts.iter().map(move |s| rep.iter().zip(s).map(|(a, b)| a + b).collect::<Vec<i64>>())
            })
            .collect()
    }
}

impl GradedAlgebra for PicGradedAlgebra {
    type Elem = RationalFunction;

    fn grading(&self) -> &FGAbelianGroup {
        self.lattice().picard().group()
    }

    fn dim(&self, degree: &[i64]) -> usize {
        self.pic_component(degree).dim()
    }

    fn basis(&self, degree: &[i64]) -> Vec<RationalFunction> {
        self.pic_component(degree).basis().to_vec()
    }

    fn coordinates(&self, degree: &[i64], x: &RationalFunction) -> Option<Vec<Rational>> {
        self.pic_component(degree).coordinates(x)
    }

    fn mul(&self, a: &[i64], x: &RationalFunction, b: &[i64], y: &RationalFunction) -> RationalFunction {
        let sum: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
        let (ra, rb, rs) = (self.representative(a), self.representative(b), self.representative(&sum));
        let e: Vec<i64> = (0..ra.len()).map(|i| rs[i] - ra[i] - rb[i]).collect();
        let product = x * y;
        if e.iter().all(|&v| v == 0) {
            product
        } else {
            &product * &self.family.witness(&e).expect("representatives differ by a kernel element")
        }
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }

    fn render(&self, x: &RationalFunction) -> String {
        x.to_string()
    }

    fn weight(&self, degree: &[i64]) -> Option<Rational> {
        Some(Rational::from_integer(self.lattice().picard().weight(degree).into()))
    }

    fn combine(&self, degree: &[i64], coords: &[Rational]) -> RationalFunction {
        self.pic_component(degree).element(coords)
    }
}

/// `⊕_{n ∈ Z} H⁰(X, O(nD))` for a single divisor `D`, graded by `Z`.
///
/// With `D = [inf] - [0]` on the line this is the Laurent polynomial ring
/// `K[z, 1/z]`, which has nonconstant homogeneous units.
#[derive(Debug)]
pub struct CyclicSectionAlgebra {
    curve: GluedCurve,
    divisor: Divisor,
    grading: FGAbelianGroup,
}

impl CyclicSectionAlgebra {
    pub fn new(curve: GluedCurve, divisor: Divisor) -> Self {
        CyclicSectionAlgebra { curve, divisor, grading: FGAbelianGroup::free(1) }
    }

    pub fn laurent() -> Self {
        use crate::ratcurve::{CurvePoint, P1Point};
        let d = Divisor::from_terms([
            (CurvePoint::new(P1Point::Infinity, 0), 1),
            (CurvePoint::new(P1Point::finite(0), 0), -1),
        ]);
        Self::new(GluedCurve::projective_line(), d)
    }

    fn component(&self, n: i64) -> SectionSpace {
        crate::ratcurve::section_space(&self.curve, &self.divisor.scale(n))
    }
}

impl GradedAlgebra for CyclicSectionAlgebra {
    type Elem = RationalFunction;

    fn grading(&self) -> &FGAbelianGroup {
        &self.grading
    }

    fn dim(&self, degree: &[i64]) -> usize {
        self.component(degree[0]).dim()
    }

    fn basis(&self, degree: &[i64]) -> Vec<RationalFunction> {
        self.component(degree[0]).basis().to_vec()
    }

    fn coordinates(&self, degree: &[i64], x: &RationalFunction) -> Option<Vec<Rational>> {
        self.component(degree[0]).coordinates(x)
    }

    fn mul(&self, _: &[i64], x: &RationalFunction, _: &[i64], y: &RationalFunction) -> RationalFunction {
        x * y
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }

    fn render(&self, x: &RationalFunction) -> String {
        x.to_string()
    }

    fn weight(&self, degree: &[i64]) -> Option<Rational> {
        let deg = self.divisor.degree();
        (deg > 0).then(|| Rational::from_integer((deg * degree[0]).into()))
    }

    fn combine(&self, degree: &[i64], coords: &[Rational]) -> RationalFunction {
        self.component(degree[0]).element(coords)
    }
}

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::lattice::LineBundleLattice;
use super::sections::GradedSectionAlgebra;
use super::CoxError;
use crate::exactmath::{EchelonSpan, Rational, RationalFunction};
use crate::grading::{solve_integer, IntMatrix};
use crate::ratcurve::{principal_divisor, Principality};

/// Witnesses `g_1, …, g_k` with `div(g_j) = -E_j` for a basis `E_j` of the
/// kernel `Λ₀` of `Λ → Pic`. For `E = sum t_j E_j` the shift
/// `ϱ_E(f) = f · prod g_j^{t_j}` maps sections of `L` onto sections of
/// `L + E`.
#[derive(Clone, Debug)]
pub struct ShiftingFamily {
    kernel_basis: Vec<Vec<i64>>,
    witnesses: Vec<RationalFunction>,
    kernel_matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    InIdeal,
    NotInIdeal,
}

impl ShiftingFamily {
    pub fn build(lattice: &LineBundleLattice) -> Result<Self, CoxError> {
        let kernel_basis = lattice.kernel_basis();
        let witnesses = kernel_basis
            .iter()
            .map(|e| {
                let target = lattice.divisor(e).scale(-1);
                match lattice.picard().is_principal(&target)? {
                    Principality::Principal(g) => Ok(g),
                    Principality::NotPrincipal(class) => Err(CoxError::InternalInconsistency(format!(
                        "kernel element {e:?} has nonzero class {class:?}"
                    ))),
                }
            })
            .collect::<Result<Vec<_>, CoxError>>()?;
        let family = Self::from_parts(lattice, kernel_basis, witnesses);
        family.verify(lattice)?;
        Ok(family)
    }

    fn from_parts(lattice: &LineBundleLattice, kernel_basis: Vec<Vec<i64>>, witnesses: Vec<RationalFunction>) -> Self {
        let kernel_matrix = IntMatrix::from_i64_columns(&kernel_basis, lattice.rank());
        ShiftingFamily { kernel_basis, witnesses, kernel_matrix }
    }

    /// Checks every witness against its kernel element.
    pub fn verify(&self, lattice: &LineBundleLattice) -> Result<(), CoxError> {
        for (e, g) in self.kernel_basis.iter().zip(&self.witnesses) {
            if principal_divisor(g, lattice.curve())? != lattice.divisor(e).scale(-1) {
                return Err(CoxError::InternalInconsistency(format!("witness {g} does not match {e:?}")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn kernel_basis(&self) -> &[Vec<i64>] {
        &self.kernel_basis
    }

    pub fn witnesses(&self) -> &[RationalFunction] {
        &self.witnesses
    }

    /// Coordinates of `e` in the kernel basis.
    pub fn kernel_coords(&self, e: &[i64]) -> Option<Vec<i64>> {
        if e.iter().all(|&x| x == 0) {
            return Some(vec![0; self.rank()]);
        }
        if self.rank() == 0 {
            return None;
        }
        let b: Vec<BigInt> = e.iter().map(|&x| x.into()).collect();
        solve_integer(&self.kernel_matrix, &b).map(|t| t.iter().map(|v| v.to_i64().expect("fits i64")).collect())
    }

    /// `g_E = prod g_j^{t_j}`, assembled from the basis witnesses.
    pub fn witness(&self, e: &[i64]) -> Result<RationalFunction, CoxError> {
        let t = self.kernel_coords(e).ok_or_else(|| CoxError::NotInKernel(e.to_vec()))?;
        Ok(t.iter()
            .zip(&self.witnesses)
            .filter(|(&t, _)| t != 0)
            .fold(RationalFunction::one(), |acc, (&t, g)| &acc * &g.powi(t)))
    }

    /// `ϱ_E(f)` for `f` a section of `L`; the result is checked to be a
    /// section of `L + E`.
    pub fn shift(
        &self,
        algebra: &GradedSectionAlgebra,
        l: &[i64],
        e: &[i64],
        f: &RationalFunction,
    ) -> Result<RationalFunction, CoxError> {
        let g = self.witness(e)?;
        if !algebra.component(l).contains(f) {
            return Err(CoxError::NotASection(l.to_vec()));
        }
        let target: Vec<i64> = l.iter().zip(e).map(|(a, b)| a + b).collect();
        let shifted = f * &g;
        if !algebra.component(&target).contains(&shifted) {
            return Err(CoxError::InternalInconsistency(format!("shift of {f} leaves the component")));
        }
        Ok(shifted)
    }

    /// Multiplies witness `j` by `c_j`, giving another shifting family.
    pub fn rescale(&self, factors: &[Rational]) -> Result<Self, CoxError> {
        if factors.len() != self.rank() {
            return Err(CoxError::DegreeMismatch(format!("{} factors for {} witnesses", factors.len(), self.rank())));
        }
        if let Some(j) = factors.iter().position(Zero::is_zero) {
            return Err(CoxError::Character(crate::grading::CharacterError::ZeroValue(j)));
        }
        let mut out = self.clone();
        for (g, c) in out.witnesses.iter_mut().zip(factors) {
            *g = g.scale(c);
        }
        Ok(out)
    }
}

/// Decides whether `sum f_L` (sections `f_L` of `L`) lies in the ideal
/// generated by the `f - ϱ_E(f)`, using only ideal generators whose degrees
/// stay in `lattice_box`.
///
/// The ideal is homogeneous for the coarser grading by `Λ/Λ₀`, so each Picard
/// class is handled separately: inside a fiber the truncated ideal is spanned
/// by `m - ϱ_{L''-L'}(m)` for basis elements `m` of `R_{L'}` and pairs of
/// fiber degrees `L'`, `L''`.
pub fn ideal_membership(
    algebra: &GradedSectionAlgebra,
    family: &ShiftingFamily,
    candidate: &[(Vec<i64>, RationalFunction)],
    lattice_box: &BTreeSet<Vec<i64>>,
) -> Result<Membership, CoxError> {
    let lattice = algebra.lattice();
    let mut by_class: BTreeMap<Vec<i64>, BTreeMap<Vec<i64>, RationalFunction>> = BTreeMap::new();
    for (l, f) in candidate {
        if !lattice_box.contains(l) {
            return Err(CoxError::BoxTooSmall(l.clone()));
        }
        if !algebra.component(l).contains(f) {
            return Err(CoxError::NotASection(l.clone()));
        }
        let slot =
            by_class.entry(lattice.pic_class(l)).or_default().entry(l.clone()).or_insert_with(RationalFunction::zero);
        *slot = &*slot + f;
    }
    for (class, parts) in by_class {
        if parts.values().all(RationalFunction::is_zero) {
            continue;
        }
        let fiber: Vec<&Vec<i64>> = lattice_box.iter().filter(|l| lattice.pic_class(l) == class).collect();
        let dims: Vec<usize> = fiber.iter().map(|l| algebra.component(l).dim()).collect();
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = dims.iter().sum();
        let dim = dims.first().copied().unwrap_or(0);
        if dims.iter().any(|&d| d != dim) {
            return Err(CoxError::InternalInconsistency(format!("fiber over {class:?} has unequal dimensions")));
        }
        let mut span = EchelonSpan::new(total);
        let target_rank = (fiber.len() - 1) * dim;
        'pairs: for (a, la) in fiber.iter().enumerate() {
            for (b, lb) in fiber.iter().enumerate().skip(a + 1) {
                let e: Vec<i64> = lb.iter().zip(la.iter()).map(|(x, y)| x - y).collect();
                let g = family.witness(&e)?;
                let space_b = algebra.component(lb);
                for (k, m) in algebra.component(la).basis().iter().enumerate() {
                    let mut v = vec![Rational::zero(); total];
                    v[offsets[a] + k] = Rational::from_integer(1.into());
                    let shifted = space_b.coordinates(&(m * &g)).ok_or_else(|| {
                        CoxError::InternalInconsistency(format!("shift from {la:?} to {lb:?} is not a section"))
                    })?;
                    for (i, c) in shifted.into_iter().enumerate() {
                        v[offsets[b] + i] -= c;
                    }
                    span.insert(&v);
                    if span.rank() == target_rank {
                        break 'pairs;
                    }
                }
            }
        }
        let mut v = vec![Rational::zero(); total];
        for (l, f) in &parts {
            let idx = fiber.iter().position(|m| *m == l).expect("candidate degree in fiber");
            let coords = algebra.component(l).coordinates(f).expect("checked above");
            for (i, c) in coords.into_iter().enumerate() {
                v[offsets[idx] + i] = c;
            }
        }
        if !span.contains(&v) {
            return Ok(Membership::NotInIdeal);
        }
    }
    Ok(Membership::InIdeal)
}

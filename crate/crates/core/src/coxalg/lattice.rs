use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::CoxError;
use crate::grading::{integer_kernel, smith_normal_form, solve_integer, FGAbelianGroup, GroupHom, IntMatrix};
use crate::ratcurve::{picard_group, CurvePoint, Divisor, GluedCurve, Picard};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaKind {
    /// Lifts of the Picard basis; the map to Pic is an isomorphism.
    Canonical,
    /// All copies of special points; the kernel is the principal lattice.
    Full,
}

/// A free group of divisors with a surjection onto the Picard group.
#[derive(Clone, Debug)]
pub struct LineBundleLattice {
    picard: Arc<Picard>,
    kind: LambdaKind,
    basis: Vec<Divisor>,
    to_pic: GroupHom,
    splitting: Vec<Vec<i64>>,
}

pub fn canonical_lambda(curve: &GluedCurve) -> Result<LineBundleLattice, CoxError> {
    let picard = picard_group(curve)?;
    let basis = picard.basis_divisors();
    LineBundleLattice::new(Arc::new(picard), LambdaKind::Canonical, basis)
}

pub fn full_lambda(curve: &GluedCurve) -> Result<LineBundleLattice, CoxError> {
    let picard = picard_group(curve)?;
    let basis = curve.special_copies().into_iter().map(Divisor::point).collect();
    LineBundleLattice::new(Arc::new(picard), LambdaKind::Full, basis)
}

impl LineBundleLattice {
    fn new(picard: Arc<Picard>, kind: LambdaKind, basis: Vec<Divisor>) -> Result<Self, CoxError> {
        let n = basis.len();
        let copies: Vec<CurvePoint> = picard.curve().special_copies();
        let coeffs: Vec<Vec<i64>> = basis.iter().map(|d| copies.iter().map(|c| d.coeff(c)).collect()).collect();
        if !basis.iter().all(|d| d.is_special_supported(picard.curve()))
            || smith_normal_form(&IntMatrix::from_i64_columns(&coeffs, copies.len())).rank() != n
        {
            return Err(CoxError::InternalInconsistency("lattice basis is not independent".into()));
        }
        let images: Vec<Vec<i64>> = basis.iter().map(|d| picard.class_of(d)).collect::<Result<_, _>>()?;
        let k = picard.rank();
        let to_pic =
            GroupHom::new(FGAbelianGroup::free(n), picard.group().clone(), IntMatrix::from_i64_columns(&images, k))?;
        if !to_pic.is_surjective() {
            return Err(CoxError::InternalInconsistency("lattice does not map onto Pic".into()));
        }
        // prefer a basis vector that maps to e_i; otherwise any integer lift
        let splitting = (0..k)
            .map(|i| {
                let target: Vec<i64> = (0..k).map(|j| (i == j) as i64).collect();
                if let Some(pos) = images.iter().position(|v| *v == target) {
                    return Ok((0..n).map(|j| (j == pos) as i64).collect());
                }
                let t: Vec<BigInt> = target.iter().map(|&v| v.into()).collect();
                let lift = solve_integer(to_pic.matrix(), &t)
                    .ok_or_else(|| CoxError::InternalInconsistency("no lift of a Pic basis vector".into()))?;
                Ok(lift.iter().map(|v| v.to_i64().expect("small lift")).collect())
            })
            .collect::<Result<Vec<Vec<i64>>, CoxError>>()?;
        Ok(LineBundleLattice { picard, kind, basis, to_pic, splitting })
    }

    pub fn picard(&self) -> &Picard {
        &self.picard
    }

    pub fn curve(&self) -> &GluedCurve {
        self.picard.curve()
    }

    pub fn kind(&self) -> LambdaKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Divisor] {
        &self.basis
    }

    pub fn to_pic(&self) -> &GroupHom {
        &self.to_pic
    }

    pub fn divisor(&self, l: &[i64]) -> Divisor {
        Divisor::combination(&self.basis, l)
    }

    pub fn pic_class(&self, l: &[i64]) -> Vec<i64> {
        self.to_pic.matrix().mul_vec_i64(l).iter().map(|v| v.to_i64().expect("class fits i64")).collect()
    }

    /// A basis of `ker(Λ → Pic)`, as lattice vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let ker = integer_kernel(self.to_pic.matrix());
        (0..ker.cols()).map(|j| ker.column(j).iter().map(|v| v.to_i64().expect("kernel fits i64")).collect()).collect()
    }

    /// Lattice vectors lifting the Picard basis; the splitting `Pic → Λ` is
    /// the homomorphism sending `e_i` to the `i`-th lift.
    pub fn splitting(&self) -> &[Vec<i64>] {
        &self.splitting
    }

    pub fn lift(&self, class: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (c, s) in class.iter().zip(&self.splitting) {
            for (o, x) in out.iter_mut().zip(s) {
                *o += c * x;
            }
        }
        out
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }
}

//! Enumeration of monomials of a prescribed multidegree.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::simplex::feasible_point;
use super::Rational;

/// Coordinate layout of a finitely generated abelian group: `free_rank`
/// integer coordinates followed by one residue coordinate per torsion modulus.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeLayout {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl DegreeLayout {
    pub fn free(rank: usize) -> Self {
        DegreeLayout { free_rank: rank, torsion: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn normalize(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for (k, d) in self.torsion.iter().enumerate() {
            out[self.free_rank + k] = out[self.free_rank + k].mod_floor(d);
        }
        out
    }

    pub fn equal(&self, a: &[i64], b: &[i64]) -> bool {
        self.normalize(a) == self.normalize(b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("degree map is not pointed (nonnegative relation {witness:?}) and no total-degree bound was given")]
    UnboundedEnumeration { witness: Vec<u64> },
}

/// Verdict of the pointedness test on a list of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pointedness {
    /// A rational functional taking value at least 1 on every degree's free part.
    Pointed { functional: Vec<Rational> },
    /// A nonzero nonnegative integer combination of the degrees that is zero
    /// in the group.
    NotPointed { witness: Vec<u64> },
}

/// Decides whether some nonzero nonnegative combination of `degrees` vanishes.
///
/// Torsion coordinates are ignored: a combination with zero free part becomes
/// zero after multiplying by the group exponent, so only the free parts matter.
pub fn pointedness(layout: &DegreeLayout, degrees: &[Vec<i64>]) -> Pointedness {
    let k = layout.free_rank;
    let r = degrees.len();
    let q = |v: i64| Rational::from_integer(v.into());
    if r == 0 {
        return Pointedness::Pointed { functional: vec![Rational::zero(); k] };
    }
    // y = y+ - y-, rows: <a_i, y> - s_i = 1
    let a: Vec<Vec<Rational>> = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut row = Vec::with_capacity(2 * k + r);
            row.extend(d[..k].iter().map(|&x| q(x)));
            row.extend(d[..k].iter().map(|&x| q(-x)));
            row.extend((0..r).map(|j| if i == j { q(-1) } else { q(0) }));
            row
        })
        .collect();
    if let Some(sol) = feasible_point(&a, &vec![q(1); r]) {
        let functional = (0..k).map(|j| &sol[j] - &sol[k + j]).collect();
        return Pointedness::Pointed { functional };
    }
    // Gordan alternative: sum e_i a_i = 0, sum e_i = 1, e >= 0
    let mut rows: Vec<Vec<Rational>> = (0..k).map(|j| degrees.iter().map(|d| q(d[j])).collect()).collect();
    rows.push(vec![q(1); r]);
    let mut rhs = vec![Rational::zero(); k];
    rhs.push(q(1));
    let e = feasible_point(&rows, &rhs).expect("Gordan alternative must be feasible");
    let lcm = e.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let mut witness: Vec<u64> = e.iter().map(|x| (x * &lcm).to_integer().to_u64().unwrap()).collect();
    // kill the torsion part
    let exponent = layout.torsion.iter().fold(1i64, |acc, d| acc.lcm(d)) as u64;
    for w in witness.iter_mut() {
        *w *= exponent;
    }
    Pointedness::NotPointed { witness }
}

/// All exponent vectors `e` with `sum e_i * degree_map[i] = target` in the
/// group described by `layout`, optionally with `sum e_i <= bound`.
///
/// Without a bound the degree map must be pointed; this is checked first.
/// Output is sorted lexicographically (first variable slowest).
pub fn enumerate_monomials(
    layout: &DegreeLayout,
    degree_map: &[Vec<i64>],
    target: &[i64],
    bound: Option<u32>,
) -> Result<Vec<Vec<u32>>, MonomialError> {
    Ok(MonomialEnumerator::new(layout.clone(), degree_map.to_vec(), bound)?.enumerate(target))
}

/// Reusable enumerator that runs the pointedness test once.
#[derive(Clone, Debug)]
pub struct MonomialEnumerator {
    layout: DegreeLayout,
    degree_map: Vec<Vec<i64>>,
    functional: Option<Vec<Rational>>,
    weights: Vec<Rational>,
    bound: Option<u32>,
}

impl MonomialEnumerator {
    pub fn new(layout: DegreeLayout, degree_map: Vec<Vec<i64>>, bound: Option<u32>) -> Result<Self, MonomialError> {
        assert!(degree_map.iter().all(|d| d.len() == layout.len()));
        let functional = match pointedness(&layout, &degree_map) {
            Pointedness::Pointed { functional } => Some(functional),
            Pointedness::NotPointed { witness } => {
                if bound.is_none() {
                    return Err(MonomialError::UnboundedEnumeration { witness });
                }
                None
            }
        };
        let mut e = MonomialEnumerator { layout, degree_map, functional, weights: Vec::new(), bound };
        e.weights = e.degree_map.iter().map(|d| e.weigh(d)).collect();
        Ok(e)
    }

    pub fn degree_map(&self) -> &[Vec<i64>] {
        &self.degree_map
    }

    pub fn layout(&self) -> &DegreeLayout {
        &self.layout
    }

    /// The positive functional on free parts, when the degrees are pointed.
    pub fn functional(&self) -> Option<&[Rational]> {
        self.functional.as_deref()
    }

    fn weigh(&self, d: &[i64]) -> Rational {
        let k = self.layout.free_rank;
        self.functional
            .as_ref()
            .map(|y| y.iter().zip(&d[..k]).map(|(a, &b)| a * Rational::from_integer(b.into())).sum())
            .unwrap_or_else(Rational::zero)
    }

    pub fn enumerate(&self, target: &[i64]) -> Vec<Vec<u32>> {
        assert_eq!(target.len(), self.layout.len());
        let mut out = Vec::new();
        let mut current = vec![0u32; self.degree_map.len()];
        search(
            &self.layout,
            &self.degree_map,
            &self.weights,
            self.functional.is_some(),
            0,
            target.to_vec(),
            self.weigh(target),
            self.bound.map(|b| b as u64),
            &mut current,
            &mut out,
        );
        out.sort();
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    layout: &DegreeLayout,
    degree_map: &[Vec<i64>],
    weights: &[Rational],
    weighted: bool,
    i: usize,
    remaining: Vec<i64>,
    budget: Rational,
    total_left: Option<u64>,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if i == degree_map.len() {
        if layout.normalize(&remaining).iter().all(|&x| x == 0) {
            out.push(current.clone());
        }
        return;
    }
    if weighted && budget < Rational::zero() {
        return;
    }
    let mut cap = total_left.unwrap_or(u64::MAX);
    if weighted {
        // weights are >= 1, so the budget bounds every exponent
        let by_weight = (&budget / &weights[i]).floor().to_integer().to_u64().unwrap_or(0);
        cap = cap.min(by_weight);
    }
    let mut rem = remaining;
    let mut bud = budget;
    for e in 0..=cap {
        current[i] = e as u32;
        search(
            layout,
            degree_map,
            weights,
            weighted,
            i + 1,
            rem.clone(),
            bud.clone(),
            total_left.map(|t| t - e),
            current,
            out,
        );
        for (x, d) in rem.iter_mut().zip(&degree_map[i]) {
            *x -= d;
        }
        bud -= &weights[i];
    }
    current[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variables_of_degree_one() {
        let l = DegreeLayout::free(1);
        let m = enumerate_monomials(&l, &[vec![1], vec![1]], &[2], None).unwrap();
        assert_eq!(m, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn zero_target_only_constant_when_pointed() {
        let l = DegreeLayout::free(2);
        let degs = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(enumerate_monomials(&l, &degs, &[0, 0], None).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn non_pointed_needs_bound() {
        let l = DegreeLayout::free(1);
        let degs = vec![vec![1], vec![-1]];
        let err = enumerate_monomials(&l, &degs, &[0], None).unwrap_err();
        let MonomialError::UnboundedEnumeration { witness } = err;
        assert_eq!(witness[0], witness[1]);
        let bounded = enumerate_monomials(&l, &degs, &[0], Some(4)).unwrap();
        assert_eq!(bounded, vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn torsion_degree_is_not_pointed() {
        let l = DegreeLayout { free_rank: 0, torsion: vec![2] };
        match pointedness(&l, &[vec![1]]) {
            Pointedness::NotPointed { witness } => assert_eq!(witness, vec![2]),
            other => panic!("{other:?}"),
        }
        let m = enumerate_monomials(&l, &[vec![1]], &[1], Some(5)).unwrap();
        assert_eq!(m, vec![vec![1], vec![3], vec![5]]);
    }
}

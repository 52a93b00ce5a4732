use std::cmp::Ordering;

use crate::exactmath::{DegreeLayout, Rational};
use crate::grading::FGAbelianGroup;

/// A graded algebra with finite-dimensional homogeneous components.
///
/// Degrees are canonical coordinates of the grading group. Each component
/// carries a fixed basis, and elements can be converted to coordinates in
/// it; `coordinates` returns `None` for elements outside the component.
pub trait GradedAlgebra {
    type Elem: Clone;

    fn grading(&self) -> &FGAbelianGroup;
    fn dim(&self, degree: &[i64]) -> usize;
    fn basis(&self, degree: &[i64]) -> Vec<Self::Elem>;
    fn coordinates(&self, degree: &[i64], x: &Self::Elem) -> Option<Vec<Rational>>;
    fn mul(&self, a: &[i64], x: &Self::Elem, b: &[i64], y: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn render(&self, x: &Self::Elem) -> String;
    /// A functional positive on every nonzero degree with a nonzero
    /// component, when one is known.
    fn weight(&self, degree: &[i64]) -> Option<Rational>;

    fn layout(&self) -> DegreeLayout {
        self.grading().layout()
    }

    /// `sum c_k b_k` over the component basis.
    fn combine(&self, degree: &[i64], coords: &[Rational]) -> Self::Elem;
}

pub fn add_degrees(layout: &DegreeLayout, a: &[i64], b: &[i64]) -> Vec<i64> {
    layout.normalize(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
}

pub fn neg_degree(layout: &DegreeLayout, a: &[i64]) -> Vec<i64> {
    layout.normalize(&a.iter().map(|x| -x).collect::<Vec<_>>())
}

pub fn scale_degree(layout: &DegreeLayout, a: &[i64], k: i64) -> Vec<i64> {
    layout.normalize(&a.iter().map(|x| x * k).collect::<Vec<_>>())
}

/// Free coordinates in `[-radius, radius]`, torsion coordinates over all
/// residues; lexicographic order.
pub fn degree_box(layout: &DegreeLayout, radius: u32) -> Vec<Vec<i64>> {
    let r = radius as i64;
    let ranges: Vec<(i64, i64)> =
        (0..layout.free_rank).map(|_| (-r, r)).chain(layout.torsion.iter().map(|&d| (0, d - 1))).collect();
    let mut out = vec![Vec::new()];
    for (lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Order used for degree-by-degree searches: weight, then L1 norm, then
/// reverse lexicographic on the coordinates.
pub fn degree_order(wa: &Rational, a: &[i64], wb: &Rational, b: &[i64]) -> Ordering {
    let l1 = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    wa.cmp(wb).then(l1(a).cmp(&l1(b))).then_with(|| b.cmp(a))
}

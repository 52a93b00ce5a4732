use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::graded::{add_degrees, neg_degree, scale_degree, GradedAlgebra};
use super::presentation::Presentation;
use super::CoxError;
use crate::exactmath::{EchelonSpan, MultiPoly, Rational, RationalFunction};
use crate::grading::{integer_kernel, pow_rational, solve_integer, Character, FGAbelianGroup, GroupSummary, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WeightMonoid {
    Pass,
    /// The grading group modulo the subgroup generated by the degrees.
    Fail {
        cokernel: GroupSummary,
    },
}

/// Whether the generator degrees generate the grading group.
pub fn weight_monoid_check(grading: &FGAbelianGroup, degrees: &[Vec<i64>]) -> WeightMonoid {
    if grading.generated_by(degrees) {
        WeightMonoid::Pass
    } else {
        WeightMonoid::Fail { cokernel: grading.quotient_by(degrees).summary() }
    }
}

/// Generators that become units after inverting one irrelevant element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartUnits {
    pub element: String,
    /// `(generator index, n)` with `f^n` in the ideal generated by `T_j`
    pub units: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FreelyGraded {
    Pass { witnesses: Vec<ChartUnits> },
    Inconclusive { element: usize, uncovered: GroupSummary },
}

/// Checks that each localization `A_f` has a homogeneous unit in every
/// degree. A generator `T_j` is a unit in `A_f` once `f^n ∈ T_j · A`; the
/// test passes for `f` when the degrees of such generators, for
/// `n <= power_bound`, generate the grading group.
pub fn freely_graded_check(
    p: &Presentation,
    irrelevant: &[MultiPoly],
    power_bound: u32,
) -> Result<FreelyGraded, CoxError> {
    let algebra = p.algebra()?;
    let layout = algebra.layout();
    let n = p.num_generators();
    let mut witnesses = Vec::new();
    for (i, f) in irrelevant.iter().enumerate() {
        let df = p.degree_of(f).ok_or_else(|| CoxError::DegreeMismatch("zero irrelevant element".into()))?;
        let mut units: Vec<(usize, u32)> = Vec::new();
        let degrees_of =
            |units: &[(usize, u32)]| units.iter().map(|(j, _)| p.degrees()[*j].clone()).collect::<Vec<_>>();
        let mut fpow = MultiPoly::one(n);
        for k in 1..=power_bound {
            if p.grading().generated_by(&degrees_of(&units)) {
                break;
            }
            fpow = fpow.mul(f);
            let d = scale_degree(&layout, &df, k as i64);
            let target = algebra
                .coordinates(&d, &fpow)
                .ok_or_else(|| CoxError::InternalInconsistency("power leaves its degree".into()))?;
            for j in 0..n {
                if units.iter().any(|(u, _)| *u == j) {
                    continue;
                }
                let rest = add_degrees(&layout, &d, &neg_degree(&layout, &p.degrees()[j]));
                let tj = MultiPoly::var(n, j);
                let mut span = EchelonSpan::new(target.len());
                for b in algebra.basis(&rest) {
                    let v = algebra
                        .coordinates(&d, &tj.mul(&b))
                        .ok_or_else(|| CoxError::InternalInconsistency("product leaves its degree".into()))?;
                    span.insert(&v);
                }
                if span.contains(&target) {
                    units.push((j, k));
                }
            }
        }
        if !p.grading().generated_by(&degrees_of(&units)) {
            return Ok(FreelyGraded::Inconclusive {
                element: i,
                uncovered: p.grading().quotient_by(&degrees_of(&units)).summary(),
            });
        }
        witnesses.push(ChartUnits { element: f.to_string(), units });
    }
    Ok(FreelyGraded::Pass { witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UnitsVerdict {
    /// No nonconstant homogeneous unit with degree and inverse degree in the
    /// box; flagged when the box has no such pair of degrees at all.
    Pass {
        inconclusive_at_boundary: bool,
    },
    NonconstantUnit {
        degree: Vec<i64>,
        unit: String,
        inverse: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedReport {
    pub a0_dim: usize,
    pub a0_is_field: bool,
    pub units: UnitsVerdict,
}

/// `A_0 = K` and a search for homogeneous units `f ∈ A_L`, `g ∈ A_{-L}`
/// with `fg` a nonzero constant.
pub fn is_pointed<A: GradedAlgebra>(algebra: &A, degrees: &[Vec<i64>]) -> PointedReport {
    let layout = algebra.layout();
    let zero = vec![0; layout.len()];
    let a0_dim = algebra.dim(&zero);
    let normalized: Vec<Vec<i64>> = degrees.iter().map(|d| layout.normalize(d)).collect();
    let mut examined = false;
    for d in &normalized {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let minus = neg_degree(&layout, d);
        if !normalized.contains(&minus) {
            continue;
        }
        examined = true;
        if algebra.dim(d) == 0 || algebra.dim(&minus) == 0 {
            continue;
        }
        for f in algebra.basis(d) {
            for g in algebra.basis(&minus) {
                let fg = algebra.mul(d, &f, &minus, &g);
                let c = algebra.coordinates(&zero, &fg).expect("product lands in degree zero");
                if c.iter().any(|x| !x.is_zero()) && a0_dim == 1 {
                    let inverse = algebra.mul(&zero, &algebra.combine(&zero, &[c[0].recip()]), &minus, &g);
                    return PointedReport {
                        a0_dim,
                        a0_is_field: true,
                        units: UnitsVerdict::NonconstantUnit {
                            degree: d.clone(),
                            unit: algebra.render(&f),
                            inverse: algebra.render(&inverse),
                        },
                    };
                }
            }
        }
    }
    PointedReport {
        a0_dim,
        a0_is_field: a0_dim == 1,
        units: UnitsVerdict::Pass { inconclusive_at_boundary: !examined },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Separatedness {
    Separated {
        levels: u32,
    },
    /// `numerator / (f_i f_j)^level` is not in the image of
    /// `A_(f_i) ⊗ A_(f_j)` at this level nor at the next one.
    NotSeparated {
        charts: (usize, usize),
        level: u32,
        degree: Vec<i64>,
        numerator: String,
    },
    Inconclusive {
        charts: (usize, usize),
        level: u32,
    },
}

fn product_span<A: GradedAlgebra>(algebra: &A, a: &[i64], b: &[i64]) -> (Vec<i64>, EchelonSpan) {
    let c = add_degrees(&algebra.layout(), a, b);
    let mut span = EchelonSpan::new(algebra.dim(&c));
    let bb = algebra.basis(b);
    'outer: for x in algebra.basis(a) {
        for y in &bb {
            let v = algebra.coordinates(&c, &algebra.mul(a, &x, b, y)).expect("product lands in the sum degree");
            span.insert(&v);
            if span.is_full() {
                break 'outer;
            }
        }
    }
    (c, span)
}

/// Tests surjectivity of `A_(f_i) ⊗ A_(f_j) → A_(f_i f_j)` at truncation
/// levels `1..=levels`. Level `n` compares `A_{n d_i} · A_{n d_j}` with
/// `A_{n (d_i + d_j)}`; a gap only counts when the element times `f_i f_j`
/// still misses the image at level `n + 1`.
pub fn separatedness_check<A: GradedAlgebra>(
    algebra: &A,
    charts: &[(Vec<i64>, A::Elem)],
    levels: u32,
) -> Separatedness {
    let layout = algebra.layout();
    let mut inconclusive = None;
    for i in 0..charts.len() {
        for j in i + 1..charts.len() {
            let (di, fi) = &charts[i];
            let (dj, fj) = &charts[j];
            let dij = add_degrees(&layout, di, dj);
            let fij = algebra.mul(di, fi, dj, fj);
            for n in 1..=levels {
                let (a, b) = (scale_degree(&layout, di, n as i64), scale_degree(&layout, dj, n as i64));
                let (c, span) = product_span(algebra, &a, &b);
                if span.is_full() {
                    continue;
                }
                let dim = algebra.dim(&c);
                let k = (0..dim)
                    .find(|&k| {
                        let mut e = vec![Rational::zero(); dim];
                        e[k] = Rational::one();
                        !span.contains(&e)
                    })
                    .expect("span is not full");
                let h = algebra.basis(&c).swap_remove(k);
                let (a1, b1) = (scale_degree(&layout, di, n as i64 + 1), scale_degree(&layout, dj, n as i64 + 1));
                let (c1, span1) = product_span(algebra, &a1, &b1);
                let lifted = algebra.mul(&c, &h, &dij, &fij);
                let v = algebra.coordinates(&c1, &lifted).expect("lift lands in the next level");
                if !span1.contains(&v) {
                    return Separatedness::NotSeparated {
                        charts: (i, j),
                        level: n,
                        degree: c,
                        numerator: algebra.render(&h),
                    };
                }
                inconclusive.get_or_insert((i, j, n));
            }
        }
    }
    match inconclusive {
        Some((i, j, n)) => Separatedness::Inconclusive { charts: (i, j), level: n },
        None => Separatedness::Separated { levels },
    }
}

/// Elements that can be compared up to a scalar factor.
pub trait Proportional {
    fn is_zero_elem(&self) -> bool;
    /// `c` with `other = c · self`, if it exists.
    fn ratio_to(&self, other: &Self) -> Option<Rational>;
}

impl Proportional for RationalFunction {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        (other / self).as_constant()
    }
}

impl Proportional for MultiPoly {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let (e, c) = self.leading_term()?;
        let r = other.coeff(e) / c;
        (self.scale(&r) == *other).then_some(r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HomEquivalence {
    /// `ν(g) = c(deg g) · μ(g)`; `values` lists `c` on the distinct generator
    /// degrees, `character` its values on the group basis when the group is
    /// free and generated by those degrees.
    Equivalent {
        values: Vec<(Vec<i64>, Rational)>,
        character: Option<Character>,
    },
    NotEquivalent {
        reason: String,
    },
}

/// Whether two graded homomorphisms, given by the images of the same
/// generators, differ by a character of the grading group.
pub fn graded_homs_equivalent<E: Proportional>(
    grading: &FGAbelianGroup,
    degrees: &[Vec<i64>],
    mu: &[E],
    nu: &[E],
) -> Result<HomEquivalence, CoxError> {
    let layout = grading.layout();
    if mu.len() != degrees.len() || nu.len() != degrees.len() {
        return Err(CoxError::DegreeMismatch(format!(
            "{} degrees, {} and {} images",
            degrees.len(),
            mu.len(),
            nu.len()
        )));
    }
    let not = |reason: String| Ok(HomEquivalence::NotEquivalent { reason });
    let mut values: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (i, ((d, m), v)) in degrees.iter().zip(mu).zip(nu).enumerate() {
        if d.len() != layout.len() {
            return Err(CoxError::DegreeMismatch(format!("degree {d:?} has the wrong length")));
        }
        if m.is_zero_elem() {
            if !v.is_zero_elem() {
                return not(format!("generator {i}: first image is zero, second is not"));
            }
            continue;
        }
        let Some(c) = m.ratio_to(v) else {
            return not(format!("generator {i}: images are not proportional"));
        };
        if c.is_zero() {
            return not(format!("generator {i}: second image is zero"));
        }
        let d = layout.normalize(d);
        match values.get(&d) {
            Some(prev) if *prev != c => return not(format!("degree {d:?} gets factors {prev} and {c}")),
            _ => {
                values.insert(d, c);
            }
        }
    }
    let distinct: Vec<(Vec<i64>, Rational)> = values.into_iter().collect();
    let s = distinct.len();
    let mut columns: Vec<Vec<i64>> = distinct.iter().map(|(d, _)| d.clone()).collect();
    for (k, t) in layout.torsion.iter().enumerate() {
        let mut col = vec![0; layout.len()];
        col[layout.free_rank + k] = *t;
        columns.push(col);
    }
    if !columns.is_empty() {
        let kernel = integer_kernel(&IntMatrix::from_i64_columns(&columns, layout.len()));
        for j in 0..kernel.cols() {
            let t = kernel.column(j);
            let product =
                distinct.iter().zip(&t[..s]).fold(Rational::one(), |acc, ((_, c), e)| acc * pow_rational(c, e));
            if !product.is_one() {
                return not(format!("factors violate the degree relation {:?}", &t[..s]));
            }
        }
    }
    let character = if layout.torsion.is_empty() && s > 0 {
        let degree_matrix =
            IntMatrix::from_i64_columns(&distinct.iter().map(|(d, _)| d.clone()).collect::<Vec<_>>(), layout.len());
        (0..layout.free_rank)
            .map(|i| {
                let e: Vec<BigInt> = (0..layout.free_rank).map(|j| BigInt::from((i == j) as i64)).collect();
                solve_integer(&degree_matrix, &e)
                    .map(|x| distinct.iter().zip(&x).fold(Rational::one(), |acc, ((_, c), k)| acc * pow_rational(c, k)))
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| Character::new(v).expect("nonzero values"))
    } else {
        None
    };
    Ok(HomEquivalence::Equivalent { values: distinct, character })
}

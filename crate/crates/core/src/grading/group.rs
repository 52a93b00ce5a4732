use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::snf::{row_hermite, smith_normal_form, IntMatrix, Snf};
use crate::exactmath::DegreeLayout;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("matrix does not map the source relations into the target relations (column {column})")]
    NotWellDefined { column: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("surjectivity certificate failed: cokernel has rank {rank} and invariant factors {factors:?}")]
    NotSurjective { rank: usize, factors: Vec<BigInt> },
}

/// Finitely generated abelian group `Z^n / L`, where `L` is spanned by the
/// columns of `relations`.
///
/// Elements are ambient integer vectors. Every group also carries canonical
/// coordinates: `free_rank` integers followed by one residue per invariant
/// factor `d > 1`. The canonical coordinate map is a unimodular change of
/// basis read off the Smith form, with the free rows put into Hermite form so
/// that gradings come out in their familiar shape.
#[derive(Clone, Debug)]
pub struct FGAbelianGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    snf: Snf,
    free_rank: usize,
    torsion: Vec<BigInt>,
    /// `free_rank + torsion.len()` rows, `ambient_rank` columns
    coords: IntMatrix,
    /// ambient representatives of the canonical generators, as columns
    generators: IntMatrix,
}

/// The `{rank, invariant_factors}` summary used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub rank: usize,
    pub invariant_factors: Vec<String>,
}

impl FGAbelianGroup {
    /// `Z^n` modulo the column span of `relations` (an `n x m` matrix).
    pub fn new(relations: IntMatrix) -> Self {
        let n = relations.rows();
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let s = snf.rank();
        let torsion_rows: Vec<usize> = (0..s).filter(|&i| diag[i] > BigInt::one()).collect();
        let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
        let free_rows: Vec<usize> = (s..n).collect();

        // Hermite-normalize the free block of u
        let mut free_block = IntMatrix::zeros(free_rows.len(), n);
        for (k, &i) in free_rows.iter().enumerate() {
            for j in 0..n {
                free_block[(k, j)] = snf.u[(i, j)].clone();
            }
        }
        let (free_block, _) = row_hermite(&free_block);
        let mut u = snf.u.clone();
        for (k, &i) in free_rows.iter().enumerate() {
            for j in 0..n {
                u[(i, j)] = free_block[(k, j)].clone();
            }
        }
        let u_inv = u.unimodular_inverse().expect("Smith transform is unimodular");

        let order: Vec<usize> = free_rows.iter().chain(torsion_rows.iter()).copied().collect();
        let mut coords = IntMatrix::zeros(order.len(), n);
        let mut generators = IntMatrix::zeros(n, order.len());
        for (k, &i) in order.iter().enumerate() {
            for j in 0..n {
                coords[(k, j)] = u[(i, j)].clone();
                generators[(j, k)] = u_inv[(j, i)].clone();
            }
        }
        FGAbelianGroup { ambient_rank: n, relations, snf, free_rank: free_rows.len(), torsion, coords, generators }
    }

    /// `Z^n` with no relations.
    pub fn free(n: usize) -> Self {
        Self::new(IntMatrix::zeros(n, 0))
    }

    /// `Z/d_1 + ... + Z/d_k + Z^r`.
    pub fn from_invariants(rank: usize, factors: &[i64]) -> Self {
        let n = rank + factors.len();
        let mut rel = IntMatrix::zeros(n, factors.len());
        for (k, &d) in factors.iter().enumerate() {
            rel[(k, k)] = d.into();
        }
        Self::new(rel)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.ambient_rank, other.ambient_rank);
        let (m1, m2) = (self.relations.cols(), other.relations.cols());
        let mut rel = IntMatrix::zeros(n1 + n2, m1 + m2);
        for i in 0..n1 {
            for j in 0..m1 {
                rel[(i, j)] = self.relations[(i, j)].clone();
            }
        }
        for i in 0..n2 {
            for j in 0..m2 {
                rel[(n1 + i, m1 + j)] = other.relations[(i, j)].clone();
            }
        }
        Self::new(rel)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of canonical coordinates (minimal number of generators).
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Isomorphism test by structure theory: same rank and invariant factors.
    pub fn isomorphic(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    pub fn layout(&self) -> DegreeLayout {
        DegreeLayout {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(|d| d.to_i64().expect("torsion exceeds i64")).collect(),
        }
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { rank: self.free_rank, invariant_factors: self.torsion.iter().map(|d| d.to_string()).collect() }
    }

    /// Canonical coordinates of an ambient vector, torsion part reduced into `[0, d)`.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "ambient dimension mismatch");
        let mut c = self.coords.mul_vec(x);
        for (k, d) in self.torsion.iter().enumerate() {
            c[self.free_rank + k] = c[self.free_rank + k].mod_floor(d);
        }
        c
    }

    pub fn canonical_i64(&self, x: &[i64]) -> Vec<i64> {
        let x: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
        self.canonical(&x).iter().map(|v| v.to_i64().expect("coordinate exceeds i64")).collect()
    }

    /// An ambient vector with the given canonical coordinates.
    pub fn representative(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.num_generators());
        self.generators.mul_vec(c)
    }

    /// Ambient representatives of the canonical generators, as columns.
    pub fn generator_matrix(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.canonical(x) == self.canonical(y)
    }

    /// Whether the given canonical-coordinate elements generate the group.
    pub fn generated_by(&self, elements: &[Vec<i64>]) -> bool {
        let cols: Vec<Vec<BigInt>> =
            elements.iter().map(|c| self.representative(&c.iter().map(|&v| v.into()).collect::<Vec<_>>())).collect();
        let quotient = Self::new(self.relations.hstack(&IntMatrix::from_columns(&cols, self.ambient_rank)));
        quotient.is_trivial()
    }

    /// The quotient of this group by the subgroup generated by `elements`
    /// (given in canonical coordinates).
    pub fn quotient_by(&self, elements: &[Vec<i64>]) -> FGAbelianGroup {
        let cols: Vec<Vec<BigInt>> =
            elements.iter().map(|c| self.representative(&c.iter().map(|&v| v.into()).collect::<Vec<_>>())).collect();
        Self::new(self.relations.hstack(&IntMatrix::from_columns(&cols, self.ambient_rank)))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homomorphism between two presented groups, given on ambient coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that source relations land in the target relation lattice.
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self, GradingError> {
        if matrix.rows() != target.ambient_rank {
            return Err(GradingError::DimensionMismatch { expected: target.ambient_rank, got: matrix.rows() });
        }
        if matrix.cols() != source.ambient_rank {
            return Err(GradingError::DimensionMismatch { expected: source.ambient_rank, got: matrix.cols() });
        }
        let images = matrix.mul(source.relations());
        for j in 0..images.cols() {
            if !target.is_zero(&images.column(j)) {
                return Err(GradingError::NotWellDefined { column: j });
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of an ambient source vector, as an ambient target vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// Image in canonical target coordinates.
    pub fn apply_canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.canonical(&self.apply(x))
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom, GradingError> {
        GroupHom::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix))
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).0.is_trivial()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero(&self.matrix.column(j)))
    }
}

/// `target / image(f)` together with the projection from the target.
pub fn cokernel(f: &GroupHom) -> (FGAbelianGroup, GroupHom) {
    let rel = f.target.relations().hstack(f.matrix());
    let cok = FGAbelianGroup::new(rel);
    let n = f.target.ambient_rank();
    let proj = GroupHom::new(f.target.clone(), cok.clone(), IntMatrix::identity(n))
        .expect("identity onto a quotient is well defined");
    (cok, proj)
}

/// A free group of minimal rank mapping onto `g`, with a certified surjection.
pub fn lift_onto_free(g: &FGAbelianGroup) -> Result<(FGAbelianGroup, GroupHom), GradingError> {
    let k = g.num_generators();
    let lambda = FGAbelianGroup::free(k);
    let onto = GroupHom::new(lambda.clone(), g.clone(), g.generator_matrix().clone())?;
    let (cok, _) = cokernel(&onto);
    if !cok.is_trivial() {
        return Err(GradingError::NotSurjective { rank: cok.rank(), factors: cok.invariant_factors().to_vec() });
    }
    Ok((lambda, onto))
}

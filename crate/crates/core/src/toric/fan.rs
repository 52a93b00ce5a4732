use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ToricError;
use crate::coxalg::{CertificateRow, Presentation};
use crate::exactmath::{int, MonomialEnumerator, MultiPoly};
use crate::grading::{smith_normal_form, FGAbelianGroup, IntMatrix};

/// A fan in `Z^rank` given by primitive rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Validates rays and cones. Cone index lists are sorted; duplicate
    /// cones are merged.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self, ToricError> {
        let bad = |m: String| Err(ToricError::MalformedFan(m));
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return bad(format!("ray {i} has length {}, expected {rank}", r.len()));
            }
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return bad(format!("ray {i} = {r:?} is not primitive"));
            }
        }
        if rays.iter().collect::<BTreeSet<_>>().len() != rays.len() {
            return bad("rays are not distinct".into());
        }
        if max_cones.is_empty() {
            return bad("no cones".into());
        }
        let mut cones = BTreeSet::new();
        for c in &max_cones {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if set.len() != c.len() {
                return bad(format!("cone {c:?} repeats a ray"));
            }
            if let Some(&i) = set.iter().find(|&&i| i >= rays.len()) {
                return bad(format!("cone {c:?} refers to missing ray {i}"));
            }
            cones.insert(set.into_iter().collect::<Vec<_>>());
        }
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        if used.len() != rays.len() {
            let missing = (0..rays.len()).find(|i| !used.contains(i)).unwrap_or_default();
            return bad(format!("ray {missing} lies in no cone"));
        }
        Ok(Fan { rank, rays, max_cones: cones.into_iter().collect() })
    }

    /// The fan of a point: rank 0, one zero cone.
    pub fn point() -> Self {
        Fan { rank: 0, rays: Vec::new(), max_cones: vec![Vec::new()] }
    }

    /// The fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, cones).expect("projective space fan is valid")
    }

    /// The Hirzebruch surface `F_a`.
    pub fn hirzebruch(a: i64) -> Self {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .expect("Hirzebruch fan is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// The `n x d` matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_with_cols(&self.rays, self.rank)
    }

    pub fn to_json(&self) -> FanJson {
        FanJson { rank: self.rank, rays: self.rays.clone(), max_cones: self.max_cones.clone() }
    }
}

impl TryFrom<FanJson> for Fan {
    type Error = ToricError;

    fn try_from(j: FanJson) -> Result<Self, ToricError> {
        Fan::new(j.rank, j.rays, j.max_cones)
    }
}

pub fn parse_fan(text: &str) -> Result<Fan, ToricError> {
    let json: FanJson = serde_json::from_str(text).map_err(|e| ToricError::Json(e.to_string()))?;
    Fan::try_from(json)
}

/// Class group, ray degrees and irrelevant monomials of a fan.
#[derive(Clone, Debug)]
pub struct ToricCoxData {
    pub class_group: FGAbelianGroup,
    /// canonical coordinates of each ray's class
    pub degree_of_ray: Vec<Vec<i64>>,
    /// one exponent vector per maximal cone: the product of the rays outside it
    pub irrelevant_monomials: Vec<Vec<u32>>,
}

/// `Z^rays` modulo the image of the character lattice `m -> (<m, v_i>)_i`.
pub fn class_group(fan: &Fan) -> (FGAbelianGroup, Vec<Vec<i64>>) {
    let n = fan.num_rays();
    let group = FGAbelianGroup::new(fan.ray_matrix());
    let degrees = (0..n)
        .map(|i| {
            let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            group.canonical_i64(&e)
        })
        .collect();
    (group, degrees)
}

pub fn toric_cox_data(fan: &Fan) -> ToricCoxData {
    let (class_group, degree_of_ray) = class_group(fan);
    let n = fan.num_rays();
    let irrelevant_monomials =
        fan.max_cones.iter().map(|c| (0..n).map(|i| u32::from(!c.contains(&i))).collect()).collect();
    ToricCoxData { class_group, degree_of_ray, irrelevant_monomials }
}

/// Certifies `0 -> M -> Z^rays -> Cl -> 0` at `Z^rays` and `Cl`: every
/// character has degree zero, the ray degrees generate `Cl`, and a fresh
/// cokernel computation has the same invariants. A surjection between
/// isomorphic finitely generated abelian groups is an isomorphism.
pub fn verify_exactness(fan: &Fan, data: &ToricCoxData) -> Result<(), ToricError> {
    let p = fan.ray_matrix();
    let layout = data.class_group.layout();
    for j in 0..p.cols() {
        let mut total = vec![0i64; layout.len()];
        for (i, d) in data.degree_of_ray.iter().enumerate() {
            let c = i64::try_from(&p[(i, j)]).map_err(|_| ToricError::NotExact("entry overflow".into()))?;
            for (t, x) in total.iter_mut().zip(d) {
                *t += c * x;
            }
        }
        if layout.normalize(&total).iter().any(|&x| x != 0) {
            return Err(ToricError::NotExact(format!("character {j} has nonzero degree")));
        }
    }
    if !data.class_group.generated_by(&data.degree_of_ray) {
        return Err(ToricError::NotExact("ray degrees do not generate the class group".into()));
    }
    let snf = smith_normal_form(&p);
    let free_rank = fan.num_rays() - snf.rank();
    let torsion: Vec<BigInt> = snf.diagonal().into_iter().filter(|d| *d > BigInt::one()).collect();
    if free_rank != data.class_group.rank() || torsion.as_slice() != data.class_group.invariant_factors() {
        return Err(ToricError::NotExact("cokernel invariants differ".into()));
    }
    Ok(())
}

/// The polynomial Cox ring: one variable per ray, no relations, and the
/// irrelevant monomials as covering elements. When `degree_box` is given,
/// a certificate row with the monomial count is recorded for each degree.
pub fn cox_presentation(fan: &Fan, degree_box: Option<&[Vec<i64>]>) -> Result<Presentation, ToricError> {
    let data = toric_cox_data(fan);
    verify_exactness(fan, &data)?;
    let sections =
        fan.rays.iter().map(|r| format!("({})", r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect();
    let irrelevant = data.irrelevant_monomials.iter().map(|e| MultiPoly::monomial(e.clone(), int(1))).collect();
    let layout = data.class_group.layout();
    let p = Presentation::polynomial_ring(data.class_group, data.degree_of_ray.clone(), sections, irrelevant)?;
    let Some(degree_box) = degree_box else { return Ok(p) };
    let enumerator = MonomialEnumerator::new(layout.clone(), data.degree_of_ray, None)?;
    let certificate = degree_box
        .iter()
        .map(|d| {
            let count = enumerator.enumerate(d).len();
            CertificateRow { degree: layout.normalize(d), monomials: count, dim: count, kernel_dim: 0, ideal_dim: 0 }
        })
        .collect();
    Ok(p.with_certificate(degree_box.iter().map(|d| layout.normalize(d)).collect(), certificate))
}

/// Number of monomials of the given class. `bound` caps the total degree and
/// is required when some monomial has degree zero.
pub fn hilbert_toric(fan: &Fan, class: &[i64], bound: Option<u32>) -> Result<usize, ToricError> {
    let (group, degrees) = class_group(fan);
    if class.len() != group.num_generators() {
        return Err(ToricError::MalformedFan(format!(
            "class {class:?} has {} coordinates, the class group needs {}",
            class.len(),
            group.num_generators()
        )));
    }
    let enumerator = MonomialEnumerator::new(group.layout(), degrees, bound)?;
    Ok(enumerator.enumerate(class).len())
}

/// Rays and cones of `X x Y` in the direct-sum lattice.
pub fn product_fan(a: &Fan, b: &Fan) -> Fan {
    let rank = a.rank + b.rank;
    let rays = a
        .rays
        .iter()
        .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, b.rank)).collect())
        .chain(b.rays.iter().map(|r| std::iter::repeat_n(0, a.rank).chain(r.iter().copied()).collect()))
        .collect();
    let offset = a.num_rays();
    let cones = a
        .max_cones
        .iter()
        .flat_map(|s| b.max_cones.iter().map(move |t| s.iter().copied().chain(t.iter().map(|i| i + offset)).collect()))
        .collect();
    Fan::new(rank, rays, cones).expect("product of valid fans is valid")
}

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::graded::{add_degrees, degree_order, GradedAlgebra};
use super::CoxError;
use crate::exactmath::{
    exponent_degree, grlex_cmp, rank_kernel, DegreeLayout, EchelonSpan, Exponent, MonomialEnumerator, MultiPoly,
    QMatrix, Rational,
};
use crate::grading::{FGAbelianGroup, GroupSummary};

/// A homogeneous generator of a graded algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator<E> {
    pub degree: Vec<i64>,
    pub element: E,
}

/// Per-degree bookkeeping of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub degree: Vec<i64>,
    pub monomials: usize,
    pub dim: usize,
    pub kernel_dim: usize,
    pub ideal_dim: usize,
}

/// Sorts the degrees by weight, L1 norm and reverse lexicographic order,
/// rejecting nonzero components of nonpositive weight.
fn ordered_degrees<A: GradedAlgebra>(algebra: &A, degrees: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, CoxError> {
    let layout = algebra.layout();
    let mut seen: Vec<Vec<i64>> = degrees.iter().map(|d| layout.normalize(d)).collect();
    seen.sort();
    seen.dedup();
    let mut keyed = Vec::with_capacity(seen.len());
    for d in seen {
        let zero = d.iter().all(|&x| x == 0);
        let dim = algebra.dim(&d);
        match algebra.weight(&d) {
            Some(w) if w > Rational::zero() || zero => {
                if zero && dim != 1 {
                    return Err(CoxError::NonPointedMonoid(d));
                }
                keyed.push((w, d));
            }
            _ if dim == 0 => {}
            _ => return Err(CoxError::NonPointedMonoid(d)),
        }
    }
    keyed.sort_by(|(wa, a), (wb, b)| degree_order(wa, a, wb, b));
    Ok(keyed.into_iter().map(|(_, d)| d).collect())
}

/// Evaluates monomials in the generators, memoizing every prefix product.
struct Evaluator<'a, A: GradedAlgebra> {
    algebra: &'a A,
    generators: &'a [Generator<A::Elem>],
    layout: DegreeLayout,
    memo: HashMap<Exponent, (Vec<i64>, A::Elem)>,
}

impl<'a, A: GradedAlgebra> Evaluator<'a, A> {
    fn new(algebra: &'a A, generators: &'a [Generator<A::Elem>]) -> Self {
        Evaluator { algebra, generators, layout: algebra.layout(), memo: HashMap::new() }
    }

    fn eval(&mut self, e: &[u32]) -> (Vec<i64>, A::Elem) {
        if let Some(v) = self.memo.get(e) {
            return v.clone();
        }
        let out = match e.iter().position(|&x| x > 0) {
            None => (vec![0; self.layout.len()], self.algebra.one()),
            Some(i) => {
                let mut rest = e.to_vec();
                rest[i] -= 1;
                let (d, x) = self.eval(&rest);
                let g = &self.generators[i];
                let y = self.algebra.mul(&d, &x, &g.degree, &g.element);
                (add_degrees(&self.layout, &d, &g.degree), y)
            }
        };
        self.memo.insert(e.to_vec(), out.clone());
        out
    }

    fn coordinates(&mut self, degree: &[i64], e: &[u32]) -> Result<Vec<Rational>, CoxError> {
        let (_, x) = self.eval(e);
        self.algebra
            .coordinates(degree, &x)
            .ok_or_else(|| CoxError::InternalInconsistency(format!("monomial {e:?} is not in degree {degree:?}")))
    }
}

fn enumerator(layout: &DegreeLayout, degrees: Vec<Vec<i64>>) -> Result<MonomialEnumerator, CoxError> {
    Ok(MonomialEnumerator::new(layout.clone(), degrees, None)?)
}

/// Minimal homogeneous generators over the given degrees: a basis vector of
/// a component becomes a generator when it is outside the span of products
/// of generators found in earlier degrees.
pub fn find_generators<A: GradedAlgebra>(
    algebra: &A,
    degrees: &[Vec<i64>],
) -> Result<Vec<Generator<A::Elem>>, CoxError> {
    let layout = algebra.layout();
    let mut generators: Vec<Generator<A::Elem>> = Vec::new();
    for d in ordered_degrees(algebra, degrees)? {
        let dim = algebra.dim(&d);
        if dim == 0 || d.iter().all(|&x| x == 0) {
            continue;
        }
        let mut span = EchelonSpan::new(dim);
        if !generators.is_empty() {
            let en = enumerator(&layout, generators.iter().map(|g| g.degree.clone()).collect())?;
            let mut ev = Evaluator::new(algebra, &generators);
            for e in en.enumerate(&d) {
                span.insert(&ev.coordinates(&d, &e)?);
                if span.is_full() {
                    break;
                }
            }
        }
        let basis = algebra.basis(&d);
        let mut fresh = Vec::new();
        for (k, b) in basis.into_iter().enumerate() {
            let mut unit = vec![Rational::zero(); dim];
            unit[k] = Rational::from_integer(1.into());
            if span.insert(&unit) {
                fresh.push(Generator { degree: d.clone(), element: b });
            }
        }
        generators.extend(fresh);
    }
    Ok(generators)
}

fn sorted_monomials(en: &MonomialEnumerator, d: &[i64]) -> Vec<Exponent> {
    let mut monos = en.enumerate(d);
    monos.sort_by(|a, b| grlex_cmp(b, a));
    monos
}

fn poly_vector(p: &MultiPoly, index: &HashMap<Exponent, usize>, len: usize) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); len];
    for (e, c) in p.terms() {
        v[*index.get(e)?] = c.clone();
    }
    Some(v)
}

/// Relations among `generators` over the given degrees, with their
/// per-degree certificate.
///
/// In each degree the kernel of the evaluation map on monomials is computed
/// exactly; kernel vectors (in reduced echelon form under the graded
/// lexicographic order) outside the span of multiples of earlier relations
/// become new relations, normalized to leading coefficient 1.
pub fn find_relations<A: GradedAlgebra>(
    algebra: &A,
    generators: &[Generator<A::Elem>],
    degrees: &[Vec<i64>],
) -> Result<(Vec<MultiPoly>, Vec<CertificateRow>), CoxError> {
    let layout = algebra.layout();
    let n = generators.len();
    let en = enumerator(&layout, generators.iter().map(|g| g.degree.clone()).collect())?;
    let mut ev = Evaluator::new(algebra, generators);
    let mut relations: Vec<(Vec<i64>, MultiPoly)> = Vec::new();
    let mut certificate = Vec::new();
    for d in ordered_degrees(algebra, degrees)? {
        let monos = sorted_monomials(&en, &d);
        let dim = algebra.dim(&d);
        let columns: Vec<Vec<Rational>> = monos.iter().map(|e| ev.coordinates(&d, e)).collect::<Result<_, _>>()?;
        let eval = QMatrix::from_columns(&columns, dim);
        let (rank, kernel) = rank_kernel(&eval);
        if rank != dim {
            return Err(CoxError::GeneratorsIncomplete(d));
        }
        let index: HashMap<Exponent, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut ideal = EchelonSpan::new(monos.len());
        for (dr, r) in &relations {
            let rest: Vec<i64> = d.iter().zip(dr).map(|(a, b)| a - b).collect();
            for m in en.enumerate(&layout.normalize(&rest)) {
                let v = poly_vector(&r.mul_monomial(&m), &index, monos.len())
                    .ok_or_else(|| CoxError::InternalInconsistency("relation multiple leaves its degree".into()))?;
                ideal.insert(&v);
            }
        }
        if !kernel.is_empty() {
            let (echelon, pivots) = QMatrix::from_rows_with_cols(kernel.clone(), monos.len()).rref();
            for i in 0..pivots.len() {
                let row = echelon.row(i);
                if ideal.insert(row) {
                    let poly = MultiPoly::from_terms(
                        n,
                        monos.iter().cloned().zip(row.iter().cloned()).filter(|(_, c)| !c.is_zero()),
                    );
                    relations.push((d.clone(), poly.monic()));
                }
            }
        }
        if ideal.rank() != kernel.len() {
            return Err(CoxError::InternalInconsistency(format!("relation span differs from kernel in {d:?}")));
        }
        certificate.push(CertificateRow {
            degree: d.clone(),
            monomials: monos.len(),
            dim,
            kernel_dim: kernel.len(),
            ideal_dim: ideal.rank(),
        });
    }
    Ok((relations.into_iter().map(|(_, r)| r).collect(), certificate))
}

/// Generators with degrees and sections, homogeneous relations, the
/// irrelevant elements `f_1, …, f_r` and a completeness certificate over a
/// finite set of degrees.
#[derive(Clone, Debug)]
pub struct Presentation {
    grading: FGAbelianGroup,
    degrees: Vec<Vec<i64>>,
    sections: Vec<String>,
    relations: Vec<MultiPoly>,
    irrelevant: Vec<MultiPoly>,
    degree_box: Vec<Vec<i64>>,
    certificate: Vec<CertificateRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorJson {
    pub degree: Vec<i64>,
    pub section: String,
}

/// Serialized form; field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationJson {
    pub grading: GroupSummary,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<String>,
    pub irrelevant: Vec<String>,
    pub certificate: Vec<CertificateRow>,
}

impl Presentation {
    pub fn new(
        grading: FGAbelianGroup,
        degrees: Vec<Vec<i64>>,
        sections: Vec<String>,
        relations: Vec<MultiPoly>,
        irrelevant: Vec<MultiPoly>,
        degree_box: Vec<Vec<i64>>,
        certificate: Vec<CertificateRow>,
    ) -> Result<Self, CoxError> {
        let layout = grading.layout();
        if degrees.len() != sections.len() || degrees.iter().any(|d| d.len() != layout.len()) {
            return Err(CoxError::DegreeMismatch("generator degrees and sections".into()));
        }
        let degrees: Vec<Vec<i64>> = degrees.iter().map(|d| layout.normalize(d)).collect();
        for p in relations.iter().chain(&irrelevant) {
            if p.nvars() != degrees.len() {
                return Err(CoxError::DegreeMismatch(format!("{} variables, {} generators", p.nvars(), degrees.len())));
            }
            let mut ds: Vec<Vec<i64>> = p.term_degrees(&degrees).iter().map(|d| layout.normalize(d)).collect();
            ds.dedup();
            if ds.len() > 1 {
                return Err(CoxError::DegreeMismatch(format!("{} is not homogeneous", p)));
            }
        }
        Ok(Presentation { grading, degrees, sections, relations, irrelevant, degree_box, certificate })
    }

    /// A polynomial ring with the given degrees.
    pub fn polynomial_ring(
        grading: FGAbelianGroup,
        degrees: Vec<Vec<i64>>,
        sections: Vec<String>,
        irrelevant: Vec<MultiPoly>,
    ) -> Result<Self, CoxError> {
        Self::new(grading, degrees, sections, Vec::new(), irrelevant, Vec::new(), Vec::new())
    }

    /// The ground field, graded by the trivial group.
    pub fn constants() -> Self {
        let trivial = FGAbelianGroup::free(0);
        Presentation {
            grading: trivial,
            degrees: Vec::new(),
            sections: Vec::new(),
            relations: Vec::new(),
            irrelevant: vec![MultiPoly::one(0)],
            degree_box: vec![Vec::new()],
            certificate: vec![CertificateRow { degree: Vec::new(), monomials: 1, dim: 1, kernel_dim: 0, ideal_dim: 0 }],
        }
    }

    pub fn grading(&self) -> &FGAbelianGroup {
        &self.grading
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn sections(&self) -> &[String] {
        &self.sections
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    pub fn irrelevant(&self) -> &[MultiPoly] {
        &self.irrelevant
    }

    pub fn degree_box(&self) -> &[Vec<i64>] {
        &self.degree_box
    }

    pub fn certificate(&self) -> &[CertificateRow] {
        &self.certificate
    }

    pub fn with_certificate(mut self, degree_box: Vec<Vec<i64>>, certificate: Vec<CertificateRow>) -> Self {
        self.degree_box = degree_box;
        self.certificate = certificate;
        self
    }

    /// Degree of a homogeneous polynomial in the generators.
    pub fn degree_of(&self, p: &MultiPoly) -> Option<Vec<i64>> {
        let (e, _) = p.leading_term()?;
        Some(self.grading.layout().normalize(&exponent_degree(e, &self.degrees)))
    }

    /// `K[T] / ⟨relations⟩` as a graded algebra.
    pub fn algebra(&self) -> Result<PresentationAlgebra, CoxError> {
        PresentationAlgebra::new(self)
    }

    /// Same grading group, generator degrees, relations and irrelevant
    /// elements; sections are not compared.
    pub fn structurally_equal(&self, other: &Presentation) -> bool {
        self.grading.summary() == other.grading.summary()
            && self.degrees == other.degrees
            && self.relations == other.relations
            && self.irrelevant.len() == other.irrelevant.len()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.to_string()).collect()
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            grading: self.grading.summary(),
            generators: self
                .degrees
                .iter()
                .zip(&self.sections)
                .map(|(d, s)| GeneratorJson { degree: d.clone(), section: s.clone() })
                .collect(),
            relations: self.relation_strings(),
            irrelevant: self.irrelevant.iter().map(|p| p.to_string()).collect(),
            certificate: self.certificate.clone(),
        }
    }
}

#[derive(Debug)]
struct QuotientComponent {
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    ideal: EchelonSpan,
    standard: Vec<usize>,
}

/// `K[T_1, …, T_n] / ⟨relations⟩`, computed degree by degree. The basis of
/// each component is the set of standard monomials: those that are not
/// leading monomials of the degree part of the ideal.
#[derive(Debug)]
pub struct PresentationAlgebra {
    grading: FGAbelianGroup,
    layout: DegreeLayout,
    nvars: usize,
    relations: Vec<(Vec<i64>, MultiPoly)>,
    enumerator: MonomialEnumerator,
    cache: RwLock<HashMap<Vec<i64>, Arc<QuotientComponent>>>,
}

impl PresentationAlgebra {
    fn new(p: &Presentation) -> Result<Self, CoxError> {
        let layout = p.grading.layout();
        let enumerator = enumerator(&layout, p.degrees.clone())?;
        let relations = p
            .relations
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| (p.degree_of(r).expect("nonzero"), r.clone()))
            .collect();
        Ok(PresentationAlgebra {
            grading: p.grading.clone(),
            layout,
            nvars: p.degrees.len(),
            relations,
            enumerator,
            cache: RwLock::new(HashMap::new()),
        })
    }

    fn component(&self, d: &[i64]) -> Arc<QuotientComponent> {
        let d = self.layout.normalize(d);
        if let Some(c) = self.cache.read().expect("cache lock").get(&d) {
            return Arc::clone(c);
        }
        let monomials = sorted_monomials(&self.enumerator, &d);
        let index: HashMap<Exponent, usize> = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut ideal = EchelonSpan::new(monomials.len());
        for (dr, r) in &self.relations {
            let rest: Vec<i64> = d.iter().zip(dr).map(|(a, b)| a - b).collect();
            for m in self.enumerator.enumerate(&self.layout.normalize(&rest)) {
                if let Some(v) = poly_vector(&r.mul_monomial(&m), &index, monomials.len()) {
                    ideal.insert(&v);
                }
            }
        }
        let pivots = ideal.pivots();
        let standard = (0..monomials.len()).filter(|i| !pivots.contains(i)).collect();
        let comp = Arc::new(QuotientComponent { monomials, index, ideal, standard });
        self.cache.write().expect("cache lock").entry(d).or_insert(comp).clone()
    }

    /// `(number of monomials, rank of the relation multiples)` in degree `d`.
    pub fn counts(&self, d: &[i64]) -> (usize, usize) {
        let c = self.component(d);
        (c.monomials.len(), c.ideal.rank())
    }

    pub fn enumerator(&self) -> &MonomialEnumerator {
        &self.enumerator
    }

    pub fn hilbert(&self, d: &[i64]) -> usize {
        self.component(d).standard.len()
    }

    /// Whether `p` (homogeneous of degree `d`) is zero in the quotient.
    pub fn is_zero_in_quotient(&self, d: &[i64], p: &MultiPoly) -> bool {
        self.coordinates(d, p).is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

impl GradedAlgebra for PresentationAlgebra {
    type Elem = MultiPoly;

    fn grading(&self) -> &FGAbelianGroup {
        &self.grading
    }

    fn dim(&self, degree: &[i64]) -> usize {
        self.hilbert(degree)
    }

    fn basis(&self, degree: &[i64]) -> Vec<MultiPoly> {
        let c = self.component(degree);
        c.standard
            .iter()
            .map(|&i| MultiPoly::monomial(c.monomials[i].clone(), Rational::from_integer(1.into())))
            .collect()
    }

    fn coordinates(&self, degree: &[i64], x: &MultiPoly) -> Option<Vec<Rational>> {
        let c = self.component(degree);
        if x.is_zero() {
            return Some(vec![Rational::zero(); c.standard.len()]);
        }
        let v = poly_vector(x, &c.index, c.monomials.len())?;
        let r = c.ideal.reduce(&v);
        Some(c.standard.iter().map(|&i| r[i].clone()).collect())
    }

    fn mul(&self, _: &[i64], x: &MultiPoly, _: &[i64], y: &MultiPoly) -> MultiPoly {
        x.mul(y)
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.nvars)
    }

    fn render(&self, x: &MultiPoly) -> String {
        x.to_string()
    }

    fn weight(&self, degree: &[i64]) -> Option<Rational> {
        let y = self.enumerator.functional()?;
        Some(y.iter().zip(degree).map(|(a, &b)| a * Rational::from_integer(b.into())).sum())
    }

    fn combine(&self, degree: &[i64], coords: &[Rational]) -> MultiPoly {
        let c = self.component(degree);
        MultiPoly::from_terms(
            self.nvars,
            c.standard.iter().zip(coords).map(|(&i, a)| (c.monomials[i].clone(), a.clone())),
        )
    }
}

/// Embeds canonical coordinates of one summand into the direct sum.
fn embed_degree(sum: &FGAbelianGroup, part: &FGAbelianGroup, offset: usize, d: &[i64]) -> Vec<i64> {
    let c: Vec<BigInt> = d.iter().map(|&x| x.into()).collect();
    let rep = part.representative(&c);
    let mut amb = vec![BigInt::zero(); sum.ambient_rank()];
    for (i, x) in rep.into_iter().enumerate() {
        amb[offset + i] = x;
    }
    sum.canonical(&amb).iter().map(|v| v.to_i64().expect("fits i64")).collect()
}

/// Presentation of `A ⊗ B` graded by the direct sum of the gradings.
///
/// The certificate recomputes the Hilbert function of the combined
/// presentation on the product box and checks it against the products of
/// the factors' Hilbert functions.
pub fn tensor_presentation(p: &Presentation, q: &Presentation) -> Result<Presentation, CoxError> {
    let grading = p.grading.direct_sum(&q.grading);
    let (np, nq) = (p.num_generators(), q.num_generators());
    let n = np + nq;
    let offset = p.grading.ambient_rank();
    let ep = |d: &[i64]| embed_degree(&grading, &p.grading, 0, d);
    let eq = |d: &[i64]| embed_degree(&grading, &q.grading, offset, d);
    let degrees: Vec<Vec<i64>> = p.degrees.iter().map(|d| ep(d)).chain(q.degrees.iter().map(|d| eq(d))).collect();
    let sections: Vec<String> = p.sections.iter().chain(&q.sections).cloned().collect();
    let relations: Vec<MultiPoly> =
        p.relations.iter().map(|r| r.embed(n, 0)).chain(q.relations.iter().map(|r| r.embed(n, np))).collect();
    let irrelevant: Vec<MultiPoly> = p
        .irrelevant
        .iter()
        .flat_map(|f| q.irrelevant.iter().map(move |g| f.embed(n, 0).mul(&g.embed(n, np))))
        .collect();
    let out = Presentation::new(grading.clone(), degrees, sections, relations, irrelevant, Vec::new(), Vec::new())?;

    let (ap, aq, a) = (p.algebra()?, q.algebra()?, out.algebra()?);
    let mut degree_box = Vec::new();
    let mut certificate = Vec::new();
    for dp in &p.degree_box {
        for dq in &q.degree_box {
            let d = add_degrees(&grading.layout(), &ep(dp), &eq(dq));
            let (monomials, ideal_dim) = a.counts(&d);
            let dim = monomials - ideal_dim;
            if dim != ap.hilbert(dp) * aq.hilbert(dq) {
                return Err(CoxError::InternalInconsistency(format!("Hilbert function not multiplicative at {d:?}")));
            }
            certificate.push(CertificateRow { degree: d.clone(), monomials, dim, kernel_dim: ideal_dim, ideal_dim });
            degree_box.push(d);
        }
    }
    Ok(out.with_certificate(degree_box, certificate))
}

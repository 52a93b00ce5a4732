use std::fmt::Write;

use coxring::coxalg::{
    CrosscheckReport, FreelyGraded, PointedReport, PresentationJson, Separatedness, UnitsVerdict, WeightMonoid,
};
use coxring::grading::GroupSummary;
use coxring::ratcurve::CurveJson;
use coxring::toric::FanJson;
use serde::{Serialize, Serializer};

#[derive(Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum Report {
    Curve(CurveReport),
    Toric(ToricReport),
    Crosscheck(CrosscheckOut),
}

#[derive(Serialize)]
pub struct PicardReport {
    pub group: GroupSummary,
    pub basis: Vec<String>,
}

#[derive(Serialize)]
pub struct LambdaReport {
    pub mode: &'static str,
    pub rank: usize,
    pub kernel_rank: usize,
}

#[derive(Serialize)]
pub struct ChartReport {
    pub removed: String,
    pub divisor: String,
    pub degree: Vec<i64>,
    pub section: String,
}

#[derive(Serialize)]
pub struct CurveChecks {
    pub weight_monoid: WeightMonoid,
    pub freely_graded: FreelyGraded,
    pub pointed: PointedReport,
    pub separatedness: Separatedness,
}

#[derive(Serialize)]
pub struct CurveReport {
    pub mode: &'static str,
    pub curve: CurveJson,
    pub picard: PicardReport,
    pub lambda: LambdaReport,
    pub box_radius: u32,
    pub presentation: PresentationJson,
    pub charts: Vec<ChartReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<CurveChecks>,
    pub findings: Vec<String>,
}

#[derive(Serialize)]
pub struct ToricChecks {
    pub weight_monoid: WeightMonoid,
    #[serde(serialize_with = "verdict_or_error")]
    pub freely_graded: Result<FreelyGraded, String>,
}

#[derive(Serialize)]
pub struct ToricReport {
    pub mode: &'static str,
    pub fan: FanJson,
    pub class_group: GroupSummary,
    pub degree_of_ray: Vec<Vec<i64>>,
    pub box_radius: u32,
    /// false when degree zero is infinite and no certificate table exists
    pub certified_box: bool,
    pub presentation: PresentationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<ToricChecks>,
    pub findings: Vec<String>,
}

#[derive(Serialize)]
pub struct CrosscheckOut {
    pub mode: &'static str,
    pub curve: CurveJson,
    pub box_radius: u32,
    #[serde(flatten)]
    pub report: CrosscheckReport,
}

#[derive(Serialize)]
struct ErrorVerdict<'a> {
    verdict: &'static str,
    message: &'a str,
}

fn verdict_or_error<S: Serializer>(r: &Result<FreelyGraded, String>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Ok(v) => v.serialize(s),
        Err(m) => ErrorVerdict { verdict: "error", message: m }.serialize(s),
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Curve(r) => r.checks.as_ref().is_none_or(|c| c.passed()),
            Report::Toric(r) => r.checks.as_ref().is_none_or(|c| c.passed()),
            Report::Crosscheck(r) => r.report.hilbert_agree && r.report.isomorphisms_ok,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Curve(r) => curve_text(&mut out, r),
            Report::Toric(r) => toric_text(&mut out, r),
            Report::Crosscheck(r) => crosscheck_text(&mut out, r),
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

fn group(g: &GroupSummary) -> String {
    let mut parts: Vec<String> = g.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
    match g.rank {
        0 => {}
        1 => parts.insert(0, "Z".into()),
        r => parts.insert(0, format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn presentation_text(out: &mut String, p: &PresentationJson) {
    let _ = writeln!(out, "grading: {}", group(&p.grading));
    let _ = writeln!(out, "generators: {}", p.generators.len());
    for (i, g) in p.generators.iter().enumerate() {
        let _ = writeln!(out, "  T{} {:?} {}", i + 1, g.degree, g.section);
    }
    let _ = writeln!(out, "relations: {}", p.relations.len());
    for r in &p.relations {
        let _ = writeln!(out, "  {r}");
    }
    let _ = writeln!(out, "irrelevant: {}", p.irrelevant.join(", "));
    let ok = p.certificate.iter().all(|r| r.kernel_dim == r.ideal_dim);
    let _ = writeln!(out, "certificate: {} degrees, kernels spanned: {}", p.certificate.len(), ok);
}

fn curve_text(out: &mut String, r: &CurveReport) {
    let points: Vec<String> = r.curve.special.iter().map(|s| format!("{} (x{})", s.point, s.multiplicity)).collect();
    match &r.curve.anchor {
        Some(a) => writeln!(out, "curve: {}; anchor {a}", points.join(", ")),
        None => writeln!(out, "curve: {}", points.join(", ")),
    }
    .ok();
    let _ = writeln!(out, "picard: {} on {}", group(&r.picard.group), r.picard.basis.join(", "));
    let _ = writeln!(out, "lambda: {} rank {} kernel rank {}", r.lambda.mode, r.lambda.rank, r.lambda.kernel_rank);
    let _ = writeln!(out, "box radius: {}", r.box_radius);
    presentation_text(out, &r.presentation);
    if let Some(c) = &r.checks {
        let _ = writeln!(out, "weight monoid: {}", weight_text(&c.weight_monoid));
        let _ = writeln!(out, "freely graded: {}", freely_text(&c.freely_graded));
        let units = match &c.pointed.units {
            UnitsVerdict::Pass { .. } => "no nonconstant units".to_string(),
            UnitsVerdict::NonconstantUnit { degree, unit, .. } => format!("unit {unit} in degree {degree:?}"),
        };
        let _ = writeln!(out, "pointed: A_0 dim {}, {}", c.pointed.a0_dim, units);
        let sep = match &c.separatedness {
            Separatedness::Separated { levels } => format!("separated up to level {levels}"),
            Separatedness::NotSeparated { charts, level, degree, numerator } => format!(
                "not separated: charts {} and {}, level {level}, degree {degree:?}, numerator {numerator}",
                charts.0 + 1,
                charts.1 + 1
            ),
            Separatedness::Inconclusive { charts, level } => {
                format!("inconclusive: charts {} and {} at level {level}", charts.0 + 1, charts.1 + 1)
            }
        };
        let _ = writeln!(out, "separatedness: {sep}");
    }
    findings_text(out, &r.findings);
}

fn toric_text(out: &mut String, r: &ToricReport) {
    let _ =
        writeln!(out, "fan: rank {}, {} rays, {} maximal cones", r.fan.rank, r.fan.rays.len(), r.fan.max_cones.len());
    let _ = writeln!(out, "class group: {}", group(&r.class_group));
    presentation_text(out, &r.presentation);
    if let Some(c) = &r.checks {
        let _ = writeln!(out, "weight monoid: {}", weight_text(&c.weight_monoid));
        let fg = match &c.freely_graded {
            Ok(v) => freely_text(v),
            Err(m) => format!("error: {m}"),
        };
        let _ = writeln!(out, "freely graded: {fg}");
    }
    findings_text(out, &r.findings);
}

fn crosscheck_text(out: &mut String, r: &CrosscheckOut) {
    let _ = writeln!(out, "degree canonical full");
    for row in &r.report.rows {
        let _ = writeln!(out, "{:?} {} {}", row.degree, row.canonical, row.full);
    }
    let _ = writeln!(out, "hilbert tables agree: {}", r.report.hilbert_agree);
    let _ =
        writeln!(out, "isomorphisms verified: {} ({} products)", r.report.isomorphisms_ok, r.report.products_checked);
}

fn weight_text(w: &WeightMonoid) -> String {
    match w {
        WeightMonoid::Pass => "pass".into(),
        WeightMonoid::Fail { cokernel } => format!("fail, cokernel {}", group(cokernel)),
    }
}

fn freely_text(f: &FreelyGraded) -> String {
    match f {
        FreelyGraded::Pass { witnesses } => format!("pass ({} charts)", witnesses.len()),
        FreelyGraded::Inconclusive { element, uncovered } => {
            format!("inconclusive at element {}, uncovered {}", element + 1, group(uncovered))
        }
    }
}

fn findings_text(out: &mut String, findings: &[String]) {
    for f in findings {
        let _ = writeln!(out, "finding: {f}");
    }
}

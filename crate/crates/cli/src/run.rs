use std::path::PathBuf;

use coxring::coxalg::{
    curve_presentation, degree_box, freely_graded_check, is_pointed, separatedness_check, uniqueness_crosscheck,
    weight_monoid_check, CoxError, CurvePipeline, FreelyGraded, LambdaKind, Separatedness, UnitsVerdict, WeightMonoid,
};
use coxring::ratcurve::{parse_curve, CurveError, CurveJson, GluedCurve};
use coxring::toric::{cox_presentation, parse_fan, toric_cox_data, Fan, ToricError};
use thiserror::Error;

use crate::report::{
    ChartReport, CrosscheckOut, CurveChecks, CurveReport, LambdaReport, PicardReport, Report, ToricChecks, ToricReport,
};
use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Curve,
    Toric,
    Verify,
    Crosscheck,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub path: PathBuf,
    pub mode: Mode,
    pub box_radius: u32,
    pub power_bound: u32,
    pub levels: u32,
    pub lambda: LambdaKind,
    pub format: Format,
}

pub struct Outcome {
    pub output: String,
    pub code: u8,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Internal(String),
}

impl RunError {
    pub fn code(&self) -> u8 {
        match self {
            RunError::Input { .. } => 1,
            RunError::Internal(_) => 2,
        }
    }
}

impl From<CoxError> for RunError {
    fn from(e: CoxError) -> Self {
        RunError::Internal(e.to_string())
    }
}

enum Input {
    Curve(GluedCurve),
    Fan(Fan),
}

fn read(config: &RunConfig) -> Result<String, RunError> {
    std::fs::read_to_string(&config.path).map_err(|e| input_error(config, e.to_string()))
}

fn input_error(config: &RunConfig, message: String) -> RunError {
    RunError::Input { path: config.path.display().to_string(), message }
}

fn curve_input(config: &RunConfig, text: &str) -> Result<GluedCurve, RunError> {
    parse_curve(text).map_err(|e: CurveError| input_error(config, e.to_string()))
}

fn fan_input(config: &RunConfig, text: &str) -> Result<Fan, RunError> {
    parse_fan(text).map_err(|e: ToricError| input_error(config, e.to_string()))
}

/// Curves have a `special` key, fans a `rays` key.
fn any_input(config: &RunConfig, text: &str) -> Result<Input, RunError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| input_error(config, e.to_string()))?;
    match value.get("rays") {
        Some(_) => fan_input(config, text).map(Input::Fan),
        None => curve_input(config, text).map(Input::Curve),
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, RunError> {
    let text = read(config)?;
    let report = match config.mode {
        Mode::Curve => Report::Curve(curve_report(config, &curve_input(config, &text)?, false)?),
        Mode::Toric => Report::Toric(toric_report(config, &fan_input(config, &text)?, false)?),
        Mode::Verify => match any_input(config, &text)? {
            Input::Curve(c) => Report::Curve(curve_report(config, &c, true)?),
            Input::Fan(f) => Report::Toric(toric_report(config, &f, true)?),
        },
        Mode::Crosscheck => Report::Crosscheck(crosscheck_report(config, &curve_input(config, &text)?)?),
    };
    let code = if report.passed() { 0 } else { 2 };
    let output = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => report.to_text(),
    };
    Ok(Outcome { output, code })
}

fn curve_report(config: &RunConfig, curve: &GluedCurve, verify: bool) -> Result<CurveReport, RunError> {
    let pipeline = curve_presentation(curve, config.lambda, config.box_radius)?;
    let picard = pipeline.algebra.lattice().picard();
    let lattice = pipeline.algebra.lattice();
    let mut findings = Vec::new();
    let checks = if verify {
        let checks = curve_checks(config, &pipeline)?;
        findings = checks.findings();
        Some(checks)
    } else {
        None
    };
    Ok(CurveReport {
        mode: "curve",
        curve: CurveJson::from_curve(curve),
        picard: PicardReport { group: picard.group().summary(), basis: picard.basis_labels() },
        lambda: LambdaReport {
            mode: lambda_name(config.lambda),
            rank: lattice.rank(),
            kernel_rank: lattice.kernel_basis().len(),
        },
        box_radius: config.box_radius,
        presentation: pipeline.presentation.to_json(),
        charts: pipeline
            .charts
            .iter()
            .map(|c| ChartReport {
                removed: c.removed.to_string(),
                divisor: c.divisor.to_string(),
                degree: c.degree.clone(),
                section: c.section.to_string(),
            })
            .collect(),
        checks,
        findings,
    })
}

fn curve_checks(config: &RunConfig, pipeline: &CurvePipeline) -> Result<CurveChecks, RunError> {
    let p = &pipeline.presentation;
    Ok(CurveChecks {
        weight_monoid: weight_monoid_check(p.grading(), p.degrees()),
        freely_graded: freely_graded_check(p, p.irrelevant(), config.power_bound)?,
        pointed: is_pointed(&pipeline.algebra, &pipeline.degree_box),
        separatedness: separatedness_check(&pipeline.algebra, &pipeline.chart_elements(), config.levels),
    })
}

fn toric_report(config: &RunConfig, fan: &Fan, verify: bool) -> Result<ToricReport, RunError> {
    let data = toric_cox_data(fan);
    let classes = degree_box(&data.class_group.layout(), config.box_radius);
    let (presentation, certified) = match cox_presentation(fan, Some(&classes)) {
        Ok(p) => (p, true),
        Err(ToricError::Monomial(_)) => (cox_presentation(fan, None).map_err(toric_internal)?, false),
        Err(e) => return Err(toric_internal(e)),
    };
    let checks = verify.then(|| ToricChecks {
        weight_monoid: weight_monoid_check(presentation.grading(), presentation.degrees()),
        freely_graded: freely_graded_check(&presentation, presentation.irrelevant(), config.power_bound)
            .map_err(|e| e.to_string()),
    });
    let findings = checks.as_ref().map(ToricChecks::findings).unwrap_or_default();
    Ok(ToricReport {
        mode: "toric",
        fan: fan.to_json(),
        class_group: data.class_group.summary(),
        degree_of_ray: data.degree_of_ray,
        box_radius: config.box_radius,
        certified_box: certified,
        presentation: presentation.to_json(),
        checks,
        findings,
    })
}

fn toric_internal(e: ToricError) -> RunError {
    RunError::Internal(e.to_string())
}

fn crosscheck_report(config: &RunConfig, curve: &GluedCurve) -> Result<CrosscheckOut, RunError> {
    let report = uniqueness_crosscheck(curve, config.box_radius)?;
    Ok(CrosscheckOut { mode: "crosscheck", curve: CurveJson::from_curve(curve), box_radius: config.box_radius, report })
}

fn lambda_name(kind: LambdaKind) -> &'static str {
    match kind {
        LambdaKind::Canonical => "canonical",
        LambdaKind::Full => "full",
    }
}

impl CurveChecks {
    /// Report states that are not failures.
    fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let FreelyGraded::Inconclusive { element, .. } = &self.freely_graded {
            out.push(format!("freely graded inconclusive at irrelevant element {}", element + 1));
        }
        if let UnitsVerdict::Pass { inconclusive_at_boundary: true } = self.pointed.units {
            out.push("unit search inconclusive: no opposite degrees in the box".into());
        }
        match &self.separatedness {
            Separatedness::NotSeparated { charts, level, .. } => {
                out.push(format!("not separated: charts {} and {} at level {level}", charts.0 + 1, charts.1 + 1))
            }
            Separatedness::Inconclusive { charts, level } => out.push(format!(
                "separatedness inconclusive: charts {} and {} at level {level}",
                charts.0 + 1,
                charts.1 + 1
            )),
            Separatedness::Separated { .. } => {}
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.weight_monoid == WeightMonoid::Pass
            && self.pointed.a0_is_field
            && matches!(self.pointed.units, UnitsVerdict::Pass { .. })
    }
}

impl ToricChecks {
    fn findings(&self) -> Vec<String> {
        match &self.freely_graded {
            Ok(FreelyGraded::Inconclusive { element, .. }) => {
                vec![format!("freely graded inconclusive at irrelevant element {}", element + 1)]
            }
            _ => Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.weight_monoid == WeightMonoid::Pass && self.freely_graded.is_ok()
    }
}

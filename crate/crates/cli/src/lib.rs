//! Analysis pipeline behind the `tamed` command.

pub mod report;

use report::{AnalysisReport, Details, SuiteEntry, TwistingSummary};
use sha2::{Digest, Sha256};
use tamed_core::algebra::{half, Form, Matrix};
use tamed_core::hermitian::generalized::check_pair;
use tamed_core::hermitian::{build_generalized_pair, induce_tamed_package, skt_check, tames, HermitianError, TamedPackage};
use tamed_core::identities::{check_identity, run_identity_suite, IdentityName, Outcome, Status};
use tamed_core::lie::parser::vector_expression;
use tamed_core::lie::{parse_structure_file, ParseError, StructurePackage};
use tamed_core::poisson::{
    beta_bivectors, bivector_from_skew, commutator_skew, holomorphy, image_analysis, psi_tensor, schouten,
    solve_twisting_form, SlotAction, TwistShape,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_JACOBI: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_IDENTITY: i32 = 4;

/// Why the pipeline stopped before building a tamed package.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stop {
    Parse(ParseError),
    Missing(&'static str),
    Jacobi,
    Structure(HermitianError),
}

impl Stop {
    pub fn exit_code(&self) -> i32 {
        match self {
            Stop::Parse(_) | Stop::Missing(_) => EXIT_PARSE,
            Stop::Jacobi => EXIT_JACOBI,
            Stop::Structure(_) => EXIT_STRUCTURE,
        }
    }
}

impl std::fmt::Display for Stop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stop::Parse(e) => write!(f, "parse error: {e}"),
            Stop::Missing(what) => write!(f, "parse error: missing declaration of {what}"),
            Stop::Jacobi => write!(f, "structure equations violate the Jacobi identity (d^2 != 0)"),
            Stop::Structure(e) => write!(f, "{e}"),
        }
    }
}

/// Result of analyzing one input.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: Option<AnalysisReport>,
    pub details: Details,
    pub stop: Option<Stop>,
}

impl Analysis {
    pub fn exit_code(&self) -> i32 {
        match (&self.stop, &self.report) {
            (Some(s), _) => s.exit_code(),
            (None, Some(r)) if !r.identities_pass() => EXIT_IDENTITY,
            _ => EXIT_OK,
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn empty_report(text: &str, jacobi: bool) -> AnalysisReport {
    AnalysisReport {
        input_digest: digest(text.as_bytes()),
        jacobi,
        omega_closed: None,
        tames: None,
        jplus_integrable: None,
        jminus_table: None,
        jminus_integrable: None,
        skt: None,
        generalized_pair_valid: None,
        q_rank: None,
        imq_involutive: None,
        imq_subalgebra: None,
        schouten_qq: None,
        twisting_solutions: None,
        beta2_twisted: None,
        frak_n_zero: None,
        identity_suite: Vec::new(),
    }
}

/// Parses and validates up to the tamed package.
pub fn load_package(text: &str) -> Result<TamedPackage, Stop> {
    let parsed = parse_structure_file(text).map_err(Stop::Parse)?;
    let (omega, j) = required(&parsed)?;
    if !parsed.algebra.jacobi_check() {
        return Err(Stop::Jacobi);
    }
    induce_tamed_package(&parsed.algebra, omega, j).map_err(Stop::Structure)
}

fn required(p: &StructurePackage) -> Result<(&Form, &Matrix), Stop> {
    let omega = p.forms.get("Omega").ok_or(Stop::Missing("Omega"))?;
    let j = p.endomorphisms.get("J").ok_or(Stop::Missing("J"))?;
    Ok((omega, j))
}

fn suite_entry(o: &Outcome) -> SuiteEntry {
    SuiteEntry {
        name: o.name.clone(),
        status: o.status.as_str().to_string(),
        witness: if o.status == Status::Fail { o.witness.clone().or_else(|| Some(o.residual.clone())) } else { None },
    }
}

/// Runs the full pipeline on the text of a structure file.
pub fn analyze(text: &str) -> Analysis {
    let parsed = match parse_structure_file(text) {
        Ok(p) => p,
        Err(e) => return Analysis { report: None, details: Details::default(), stop: Some(Stop::Parse(e)) },
    };
    let (omega, j) = match required(&parsed) {
        Ok(x) => x,
        Err(s) => return Analysis { report: None, details: Details::default(), stop: Some(s) },
    };
    let l = &parsed.algebra;
    let mut report = empty_report(text, l.jacobi_check());
    if !report.jacobi {
        return Analysis { report: Some(report), details: Details::default(), stop: Some(Stop::Jacobi) };
    }
    let closed = omega.grade() == 2 && omega.dim() == l.dim() && l.exterior_derivative(omega).is_zero();
    report.omega_closed = Some(closed);
    report.tames = Some(omega.grade() == 2 && j.rows() == l.dim() && tames(omega, j));
    let pkg = match induce_tamed_package(l, omega, j) {
        Ok(p) => p,
        Err(e) => return Analysis { report: Some(report), details: Details::default(), stop: Some(Stop::Structure(e)) },
    };
    let details = fill(&mut report, &pkg);
    Analysis { report: Some(report), details, stop: None }
}

fn fill(report: &mut AnalysisReport, pkg: &TamedPackage) -> Details {
    let l = &pkg.algebra;
    let mut d = Details::default();
    report.jplus_integrable = Some(pkg.n_plus().is_zero());
    report.jminus_table = Some(pkg.j_minus.columns().iter().map(|c| vector_expression(c)).collect());
    report.jminus_integrable = Some(pkg.n_minus().is_zero());
    report.skt = Some(skt_check(pkg));
    report.generalized_pair_valid =
        Some(build_generalized_pair(pkg).and_then(|p| check_pair(pkg, &p)).map(|c| c.all()).unwrap_or(false));

    let q = commutator_skew(pkg);
    let image = image_analysis(l, &q);
    report.q_rank = Some(image.rank);
    report.imq_involutive = Some(image.involutive);
    report.imq_subalgebra = Some(image.subalgebra);

    let pi = bivector_from_skew(&q.scale(&half()));
    report.schouten_qq = Some(schouten(l, &pi, &pi).to_expression());
    let sols = solve_twisting_form(l, &pi, TwistShape::Standard);
    report.twisting_solutions = Some(TwistingSummary {
        count: if sols.is_empty() { 0 } else { 1 + sols.kernel.len() },
        representative: sols.particular.as_ref().map(Form::to_expression),
    });

    let admits: Vec<SlotAction> = SlotAction::ALL
        .into_iter()
        .filter(|&action| !solve_twisting_form(l, &pi, TwistShape::Beta2 { package: pkg, action }).is_empty())
        .collect();
    report.beta2_twisted = Some(match admits.as_slice() {
        [] => "no".into(),
        [only] => only.name().into(),
        _ => "yes".into(),
    });
    report.frak_n_zero = Some(holomorphy(pkg).holomorphic);
    report.identity_suite = run_identity_suite(pkg).iter().map(suite_entry).collect();

    let (_, beta2) = beta_bivectors(pkg);
    d.lines.push(("g".into(), matrix_rows(pkg.g())));
    d.lines.push(("b".into(), pkg.b.to_expression()));
    d.lines.push(("omega+".into(), pkg.omega_plus.to_expression()));
    d.lines.push(("omega-".into(), pkg.omega_minus.to_expression()));
    d.lines.push(("J+ d omega+".into(), pkg.jd_omega_plus().to_expression()));
    d.lines.push(("J- d omega-".into(), pkg.jd_omega_minus().to_expression()));
    d.lines.push(("Q~ = 1/2 [J+,J-] g^-1".into(), pi.to_expression()));
    d.lines.push(("Im Q".into(), image.image.iter().map(|v| vector_expression(v)).collect::<Vec<_>>().join(", ")));
    d.lines.push(("beta2".into(), beta2.to_expression()));
    d.lines.push(("psi".into(), psi_tensor(pkg).to_expression()));
    d
}

fn matrix_rows(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i).iter().map(tamed_core::algebra::rational::format_rational).collect::<Vec<_>>().join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs a single named identity on a structure file.
pub fn check(text: &str, name: IdentityName) -> Result<Vec<Outcome>, Stop> {
    Ok(check_identity(&load_package(text)?, name))
}

pub fn render_outcomes(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&format!("{}: {}\n  residual {}\n", o.name, o.status.as_str(), o.residual));
        for (k, v) in &o.details {
            out.push_str(&format!("  {k:<12} {v}\n"));
        }
        if o.status == Status::Fail {
            if let Some(w) = &o.witness {
                out.push_str(&format!("  witness {w}\n"));
            }
        }
    }
    out
}

pub fn check_exit_code(outcomes: &[Outcome]) -> i32 {
    if outcomes.iter().all(Outcome::passed) {
        EXIT_OK
    } else {
        EXIT_IDENTITY
    }
}

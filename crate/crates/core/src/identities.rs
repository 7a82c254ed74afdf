//! Named identity checks with exact residuals and witnesses.

use crate::algebra::{index_label, Alternating, ComplexTensor3, Matrix, Tensor3};
use crate::connections::{bismut, chern, levi_civita, torsion_3form, ConnectionError, Side};
use crate::hermitian::generalized::check_pair;
use crate::hermitian::{build_generalized_pair, skt_check, torsion_defect_residuals, TamedPackage};
use crate::poisson::{
    beta_bracket_residuals, bivector_from_skew, chern_derivative_residuals, commutator_bracket,
    commutator_bracket_formula, commutator_skew, schouten_square, surface_bracket_formula, zabzine_residual,
    SchoutenMode,
};
use std::fmt;
use std::str::FromStr;

/// Identities selectable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityName {
    Prop22,
    Zabzine,
    Lemma41,
    Prop44,
    Dim4,
    ChernPsi,
    SchoutenModes,
}

impl IdentityName {
    pub const ALL: [IdentityName; 7] = [
        IdentityName::Prop22,
        IdentityName::Zabzine,
        IdentityName::Lemma41,
        IdentityName::Prop44,
        IdentityName::Dim4,
        IdentityName::ChernPsi,
        IdentityName::SchoutenModes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Prop22 => "prop22",
            IdentityName::Zabzine => "zabzine",
            IdentityName::Lemma41 => "lemma41",
            IdentityName::Prop44 => "prop44",
            IdentityName::Dim4 => "dim4",
            IdentityName::ChernPsi => "chern-psi",
            IdentityName::SchoutenModes => "schouten-modes",
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownIdentity(pub String);

impl fmt::Display for UnknownIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = IdentityName::ALL.iter().map(|n| n.as_str()).collect();
        write!(f, "unknown identity `{}` (expected one of: {})", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownIdentity {}

impl FromStr for IdentityName {
    type Err = UnknownIdentity;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
        }
    }
}

/// One checked claim: its residual as text (`0` when it holds) and the first
/// nonzero component on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub status: Status,
    pub residual: String,
    pub witness: Option<String>,
    /// Extra labelled values shown by `check`.
    pub details: Vec<(String, String)>,
}

impl Outcome {
    fn flag(name: impl Into<String>, ok: bool, what: &str) -> Outcome {
        Outcome {
            name: name.into(),
            status: Status::from_bool(ok),
            residual: if ok { "0".into() } else { format!("violated: {what}") },
            witness: None,
            details: Vec::new(),
        }
    }

    fn not_applicable(name: impl Into<String>, why: &str) -> Outcome {
        Outcome {
            name: name.into(),
            status: Status::NotApplicable,
            residual: why.into(),
            witness: None,
            details: Vec::new(),
        }
    }

    fn alternating<V>(name: impl Into<String>, r: &Alternating<V>) -> Outcome {
        let witness = r.terms().next().map(|(idx, c)| {
            format!("{} = {}", index_label(r.dim(), idx), crate::algebra::rational::format_rational(c))
        });
        Outcome {
            name: name.into(),
            status: Status::from_bool(r.is_zero()),
            residual: r.to_expression(),
            witness,
            details: Vec::new(),
        }
    }

    fn tensor(name: impl Into<String>, t: &Tensor3) -> Outcome {
        let witness = t.witness().map(|(i, c)| triple(t.dim(), i, &c));
        Outcome {
            name: name.into(),
            status: Status::from_bool(witness.is_none()),
            residual: if witness.is_none() { "0".into() } else { format!("{} nonzero components", nonzero(t)) },
            witness,
            details: Vec::new(),
        }
    }

    fn complex(name: impl Into<String>, t: &ComplexTensor3) -> Outcome {
        let witness = t
            .re
            .witness()
            .map(|(i, c)| format!("re {}", triple(t.re.dim(), i, &c)))
            .or_else(|| t.im.witness().map(|(i, c)| format!("im {}", triple(t.im.dim(), i, &c))));
        Outcome {
            name: name.into(),
            status: Status::from_bool(witness.is_none()),
            residual: if witness.is_none() {
                "0".into()
            } else {
                format!("{} nonzero components", nonzero(&t.re) + nonzero(&t.im))
            },
            witness,
            details: Vec::new(),
        }
    }

    fn matrix(name: impl Into<String>, m: &Matrix) -> Outcome {
        let witness = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !num_traits::Zero::is_zero(m.get(i, j)))
            .map(|(i, j)| format!("[{}][{}] = {}", i + 1, j + 1, crate::algebra::rational::format_rational(m.get(i, j))));
        Outcome {
            name: name.into(),
            status: Status::from_bool(witness.is_none()),
            residual: if witness.is_none() { "0".into() } else { "nonzero matrix".into() },
            witness,
            details: Vec::new(),
        }
    }

    fn connection_error(name: impl Into<String>, e: ConnectionError) -> Outcome {
        Outcome { name: name.into(), status: Status::Fail, residual: e.to_string(), witness: None, details: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn triple(n: usize, i: [usize; 3], c: &crate::algebra::Rational) -> String {
    let l = |k: usize| index_label(n, &[k]).replacen('e', "e_", 1);
    format!("({}, {}, {}) = {}", l(i[0]), l(i[1]), l(i[2]), crate::algebra::rational::format_rational(c))
}

fn nonzero(t: &Tensor3) -> usize {
    t.entries().len()
}

/// Runs one named identity; several names check more than one claim.
pub fn check_identity(pkg: &TamedPackage, name: IdentityName) -> Vec<Outcome> {
    let l = &pkg.algebra;
    match name {
        IdentityName::Prop22 => {
            let (plus, minus) = torsion_defect_residuals(pkg);
            vec![Outcome::alternating("prop22 (+)", &plus), Outcome::alternating("prop22 (-)", &minus)]
        }
        IdentityName::Zabzine => vec![
            Outcome::alternating("zabzine (g, J+)", &zabzine_residual(l, &pkg.metric, &pkg.j_plus)),
            Outcome::alternating("zabzine (g, J-)", &zabzine_residual(l, &pkg.metric, &pkg.j_minus)),
        ],
        IdentityName::Lemma41 => {
            let r = beta_bracket_residuals(pkg);
            vec![
                Outcome::alternating("lemma41 [b1,b1]", &r.beta1_square),
                Outcome::alternating("lemma41 [b2,b2]", &r.beta2),
                Outcome::alternating("lemma41 b1 = 2 Omega^-1", &r.beta1_form),
                Outcome::alternating("lemma41 b2 = (J+ - J-) sharp^-1", &r.beta2_form),
            ]
        }
        IdentityName::Prop44 => {
            let bracket = commutator_bracket(pkg);
            let formula = commutator_bracket_formula(pkg);
            let mut o = Outcome::alternating("prop44", &(&formula - &bracket));
            o.details = vec![("bracket".into(), bracket.to_expression()), ("formula".into(), formula.to_expression())];
            vec![o]
        }
        IdentityName::Dim4 => {
            if pkg.dim() != 4 {
                return vec![Outcome::not_applicable("dim4", "algebra is not 4-dimensional")];
            }
            let bracket = commutator_bracket(pkg);
            let formula = surface_bracket_formula(pkg);
            let mut o = Outcome::alternating("dim4", &(&formula - &bracket));
            o.details = vec![("bracket".into(), bracket.to_expression()), ("formula".into(), formula.to_expression())];
            vec![o]
        }
        IdentityName::ChernPsi => match chern_derivative_residuals(pkg) {
            Ok(r) => vec![Outcome::tensor("chern-psi (real)", &r.real), Outcome::complex("chern-psi (complex)", &r.complex)],
            Err(ConnectionError::NotIntegrable(_)) => {
                vec![Outcome::not_applicable("chern-psi", "J+ is not integrable")]
            }
            Err(e) => vec![Outcome::connection_error("chern-psi", e)],
        },
        IdentityName::SchoutenModes => {
            let q = commutator_skew(pkg);
            let pi = bivector_from_skew(&q);
            let values: Vec<_> = SchoutenMode::ALL
                .iter()
                .map(|&m| (m, schouten_square(l, &pi, m, Some(&q)).expect("skew data supplied")))
                .collect();
            let frame = &values[0].1;
            let mut outcomes: Vec<Outcome> = values[1..]
                .iter()
                .map(|(m, v)| Outcome::alternating(format!("schouten-modes frame = {}", m.name()), &(v - frame)))
                .collect();
            outcomes[0].details = values.iter().map(|(m, v)| (m.name().to_string(), v.to_expression())).collect();
            outcomes
        }
    }
}

/// Structural claims about the package, its generalized pair and connections.
pub fn structural_checks(pkg: &TamedPackage) -> Vec<Outcome> {
    let mut out = Vec::new();
    let violations = pkg.invariant_violations();
    out.push(Outcome {
        name: "package invariants".into(),
        status: Status::from_bool(violations.is_empty()),
        residual: if violations.is_empty() { "0".into() } else { violations.join("; ") },
        witness: violations.first().map(|s| s.to_string()),
        details: Vec::new(),
    });
    let q = pkg.commutator();
    for (j, name) in [(&pkg.j_plus, "Q J+ = -J+ Q"), (&pkg.j_minus, "Q J- = -J- Q")] {
        out.push(Outcome::matrix(name, &(&(&q * j) + &(j * &q))));
    }
    let s = &q.transpose() * pkg.g();
    for (j, name) in [(&pkg.j_plus, "S(J+X, J+Y) = -S(X, Y)"), (&pkg.j_minus, "S(J-X, J-Y) = -S(X, Y)")] {
        out.push(Outcome::matrix(name, &(&(&(&j.transpose() * &s) * j) + &s)));
    }
    match build_generalized_pair(pkg).and_then(|pair| check_pair(pkg, &pair)) {
        Ok(c) => {
            out.push(Outcome::flag("J1 = J_Omega", c.j1_is_j_omega, "J1 differs from J_Omega"));
            out.push(Outcome::flag("J2 closed form", c.j2_closed_form, "J2 differs from its closed form"));
            out.push(Outcome::flag("Ji^2 = -1", c.squares, "a structure does not square to -1"));
            out.push(Outcome::flag("Ji orthogonal", c.orthogonal, "pairing not preserved"));
            out.push(Outcome::flag("[J1, J2] = 0", c.commute, "J1 and J2 do not commute"));
            out.push(Outcome::flag("G positive definite", c.metric_positive, "G is not positive definite"));
        }
        Err(e) => out.push(Outcome::flag("generalized pair", false, &e.to_string())),
    }
    out.extend(connection_checks(pkg));
    out
}

fn connection_checks(pkg: &TamedPackage) -> Vec<Outcome> {
    let l = &pkg.algebra;
    let mut out = Vec::new();
    let ok = |name: &str, r: Result<(), ConnectionError>| match r {
        Ok(()) => Outcome::flag(name, true, ""),
        Err(e) => Outcome::connection_error(name, e),
    };
    out.push(ok("Levi-Civita: metric, torsion-free", levi_civita(l, &pkg.metric).map(|_| ())));
    out.push(ok("Bismut+: metric, J+ parallel", bismut(pkg, Side::Plus).map(|_| ())));
    out.push(ok("Bismut-: metric, J- parallel", bismut(pkg, Side::Minus).map(|_| ())));
    if pkg.n_plus().is_zero() {
        out.push(ok("Chern: metric, J+ parallel", chern(pkg).map(|_| ())));
    } else {
        out.push(Outcome::not_applicable("Chern: metric, J+ parallel", "J+ is not integrable"));
    }
    if let Ok(conn) = bismut(pkg, Side::Plus) {
        match torsion_3form(l, &conn, pkg.g()) {
            Ok(c) => {
                out.push(Outcome::alternating("Bismut+ torsion = -J+ d omega+", &(&c + &pkg.jd_omega_plus())));
                let closed = l.exterior_derivative(&c).is_zero();
                out.push(Outcome::flag("d(torsion) = 0 iff SKT", closed == skt_check(pkg), "SKT mismatch"));
            }
            Err(e) => out.push(Outcome {
                name: "Bismut+ torsion = -J+ d omega+".into(),
                status: Status::Fail,
                residual: "torsion is not totally skew".into(),
                witness: Some(format!("{:?}", e.witness)),
                details: Vec::new(),
            }),
        }
    }
    out
}

/// Every named identity followed by the structural checks.
pub fn run_identity_suite(pkg: &TamedPackage) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = IdentityName::ALL.iter().flat_map(|&n| check_identity(pkg, n)).collect();
    out.extend(structural_checks(pkg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::induce_tamed_package;
    use crate::lie::parse_structure_file;

    #[test]
    fn names_round_trip() {
        for n in IdentityName::ALL {
            assert_eq!(n.as_str().parse::<IdentityName>().unwrap(), n);
        }
        assert!("prop99".parse::<IdentityName>().is_err());
    }

    #[test]
    fn suite_passes_on_fixtures() {
        for (name, text) in crate::fixtures::ALL {
            let p = parse_structure_file(text).unwrap();
            let pkg = induce_tamed_package(&p.algebra, &p.forms["Omega"], &p.endomorphisms["J"]).unwrap();
            for o in run_identity_suite(&pkg) {
                assert!(o.passed(), "{name}: {} -> {} {:?}", o.name, o.residual, o.witness);
            }
        }
    }
}

//! Line-oriented structure files.
//!
//! ```text
//! # hyperelliptic surface
//! dim = 4
//! d e1 = e24
//! d e2 = -e14
//! J(e1) = -e2
//! Omega = e12 + e24 + e34
//! ```
//!
//! Index lists are digit strings (`e126`) up to dimension 9 and parenthesized
//! (`e(1,2,10)`) beyond. Basis derivatives that are not declared are zero.

use super::LieAlgebra;
use crate::algebra::{alternating::index_label, Form, Matrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    MissingDim,
    IndexOutOfRange { index: usize, dim: usize },
    RepeatedIndex,
    Duplicate(String),
    UnknownName(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::MissingDim => write!(f, "missing `dim = N` before the first declaration"),
            ParseErrorKind::IndexOutOfRange { index, dim } => {
                write!(f, "index {index} out of range 1..={dim}")
            }
            ParseErrorKind::RepeatedIndex => write!(f, "repeated index in basis monomial"),
            ParseErrorKind::Duplicate(what) => write!(f, "duplicate declaration of {what}"),
            ParseErrorKind::UnknownName(n) => write!(f, "unknown name `{n}`"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Names a structure file may declare.
#[derive(Debug, Clone)]
pub struct Schema {
    pub endomorphisms: BTreeSet<String>,
    pub forms: BTreeSet<String>,
}

impl Default for Schema {
    fn default() -> Self {
        Schema {
            endomorphisms: ["J".to_string()].into_iter().collect(),
            forms: ["Omega".to_string()].into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurePackage {
    pub algebra: LieAlgebra,
    pub endomorphisms: BTreeMap<String, Matrix>,
    pub forms: BTreeMap<String, Form>,
}

impl StructurePackage {
    /// Canonical text: every `d e_k`, full endomorphism columns, sorted terms.
    pub fn serialize(&self) -> String {
        let n = self.algebra.dim();
        let mut out = format!("dim = {n}\n");
        for k in 0..n {
            out.push_str(&format!("d e{} = {}\n", k + 1, self.algebra.differential(k)));
        }
        for (name, m) in &self.endomorphisms {
            for j in 0..n {
                out.push_str(&format!("{name}(e{}) = {}\n", j + 1, vector_expression(&m.column(j))));
            }
        }
        for (name, f) in &self.forms {
            if f.is_zero() && f.grade() > 0 {
                // A bare `0` carries no degree; name one basis term instead.
                let idx: Vec<usize> = (0..f.grade()).collect();
                out.push_str(&format!("{name} = 0*{}\n", crate::algebra::index_label(n, &idx)));
            } else {
                out.push_str(&format!("{name} = {f}\n"));
            }
        }
        out
    }
}

/// `-e2 + 1/2*e3`, or `0`.
pub fn vector_expression(v: &[Rational]) -> String {
    let n = v.len();
    let f = Form::from_terms(n, 1, v.iter().enumerate().map(|(i, c)| (vec![i], c.clone())));
    let mut s = f.to_expression();
    if n > 9 {
        // single indices are written as plain integers in vector expressions
        for i in (0..n).rev() {
            s = s.replace(&index_label(n, &[i]), &format!("e{}", i + 1));
        }
    }
    s
}

pub fn parse_structure_file(text: &str) -> Result<StructurePackage, ParseError> {
    parse_with_schema(text, &Schema::default())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

struct Line {
    number: usize,
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn tokenize(number: usize, raw: &str) -> Result<Line, ParseError> {
    let text = raw.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(BigInt::from_str(&s).expect("digits")), col));
        } else if "=()+-*/,".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else if c == '−' {
            toks.push((Tok::Sym('-'), col));
            i += 1;
        } else {
            return Err(ParseError {
                line: number,
                column: col,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        }
    }
    Ok(Line { number, toks, end: chars.len() + 1 })
}

struct Cursor<'a> {
    line: &'a Line,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.line.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.line.toks.get(self.pos).map_or(self.line.end, |(_, c)| *c)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line.number, column: self.column(), kind }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, s: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(c)) if *c == s => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(&format!("expected `{s}`"))),
        }
    }

    fn eat_sym(&mut self, s: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(c)) if *c == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.syntax("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v.clone())
            }
            _ => Err(self.syntax("expected an integer")),
        }
    }

    fn index(&mut self, dim: usize) -> Result<usize, ParseError> {
        let col = self.column();
        let v = self.int()?;
        check_index(&v, dim).map_err(|kind| ParseError { line: self.line.number, column: col, kind })
    }

    /// `e` INT, possibly tokenized as a single identifier `e12`.
    fn basis_vector(&mut self, dim: usize) -> Result<usize, ParseError> {
        let col = self.column();
        match self.peek() {
            Some(Tok::Ident(s)) if s == "e" => {
                self.pos += 1;
                self.index(dim)
            }
            Some(Tok::Ident(s)) if is_basis_ident(s) => {
                self.pos += 1;
                let v = BigInt::from_str(&s[1..]).expect("digits");
                check_index(&v, dim).map_err(|kind| ParseError { line: self.line.number, column: col, kind })
            }
            _ => Err(self.syntax("expected a basis vector such as `e1`")),
        }
    }

    /// Optional `p/q *` prefix of a term.
    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        if !matches!(self.peek(), Some(Tok::Int(_))) {
            return Ok(Rational::one());
        }
        let p = self.int()?;
        let q = if self.eat_sym('/') {
            let col = self.column();
            let q = self.int()?;
            if !q.is_positive() {
                return Err(ParseError {
                    line: self.line.number,
                    column: col,
                    kind: ParseErrorKind::Syntax("denominator must be positive".into()),
                });
            }
            q
        } else {
            BigInt::one()
        };
        self.expect_sym('*')?;
        Ok(Rational::new(p, q))
    }

    /// Signed sum of terms; `term` parses one basis monomial after the coefficient.
    fn sum<T>(
        &mut self,
        mut term: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<(Rational, T)>, ParseError> {
        if let Some(Tok::Int(v)) = self.peek() {
            if v.is_zero() && self.line.toks.len() == self.pos + 1 {
                self.pos += 1;
                return Ok(Vec::new());
            }
        }
        let mut out = Vec::new();
        let mut negative = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        loop {
            let c = self.coefficient()?;
            let t = term(self)?;
            out.push((if negative { -c } else { c }, t));
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(out)
    }
}

fn is_basis_ident(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

fn check_index(v: &BigInt, dim: usize) -> Result<usize, ParseErrorKind> {
    let out_of_range = || ParseErrorKind::IndexOutOfRange {
        index: usize::try_from(v.clone()).unwrap_or(usize::MAX),
        dim,
    };
    let i = usize::try_from(v.clone()).map_err(|_| out_of_range())?;
    if i == 0 || i > dim {
        return Err(out_of_range());
    }
    Ok(i - 1)
}

/// One monomial `e126` / `e(1,2,6)`; returns 0-based indices.
fn monomial(cur: &mut Cursor<'_>, dim: usize) -> Result<Vec<usize>, ParseError> {
    let col = cur.column();
    let idx = match cur.next() {
        Some(Tok::Ident(s)) if s == "e" => {
            cur.expect_sym('(')?;
            let mut idx = vec![cur.index(dim)?];
            while cur.eat_sym(',') {
                idx.push(cur.index(dim)?);
            }
            cur.expect_sym(')')?;
            idx
        }
        Some(Tok::Ident(s)) if is_basis_ident(s) => {
            if dim > 9 {
                return Err(ParseError {
                    line: cur.line.number,
                    column: col,
                    kind: ParseErrorKind::Syntax(
                        "digit-string indices need dim <= 9; write e(i,j,...)".into(),
                    ),
                });
            }
            let mut idx = Vec::new();
            for (k, b) in s[1..].bytes().enumerate() {
                let v = BigInt::from(b - b'0');
                idx.push(check_index(&v, dim).map_err(|kind| ParseError {
                    line: cur.line.number,
                    column: col + 1 + k,
                    kind,
                })?);
            }
            idx
        }
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            return Err(ParseError {
                line: cur.line.number,
                column: col,
                kind: ParseErrorKind::Syntax("expected a basis monomial such as `e12`".into()),
            });
        }
    };
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ParseError { line: cur.line.number, column: col, kind: ParseErrorKind::RepeatedIndex });
    }
    Ok(idx)
}

fn form_expr(cur: &mut Cursor<'_>, dim: usize, grade: Option<usize>) -> Result<Form, ParseError> {
    let start = cur.column();
    let terms = cur.sum(|c| {
        let col = c.column();
        monomial(c, dim).map(|m| (m, col))
    })?;
    let k = match grade {
        Some(k) => k,
        None => terms.first().map_or(0, |(_, (m, _))| m.len()),
    };
    let mut f = Form::zero(dim, k);
    for (c, (m, col)) in terms {
        if m.len() != k {
            return Err(ParseError {
                line: cur.line.number,
                column: col,
                kind: ParseErrorKind::Syntax(format!("expected a {k}-form term")),
            });
        }
        f.add_term(&m, c);
    }
    if grade.is_none() && f.is_zero() && k == 0 {
        return Err(ParseError {
            line: cur.line.number,
            column: start,
            kind: ParseErrorKind::Syntax("cannot infer the degree of a zero form".into()),
        });
    }
    Ok(f)
}

pub fn parse_with_schema(text: &str, schema: &Schema) -> Result<StructurePackage, ParseError> {
    let mut dim: Option<usize> = None;
    let mut differentials: BTreeMap<usize, Form> = BTreeMap::new();
    let mut endos: BTreeMap<String, Matrix> = BTreeMap::new();
    let mut endo_columns: BTreeSet<(String, usize)> = BTreeSet::new();
    let mut forms: BTreeMap<String, Form> = BTreeMap::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = tokenize(ln + 1, raw)?;
        if line.toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { line: &line, pos: 0 };
        let head_col = cur.column();
        let Some(Tok::Ident(head)) = cur.next() else {
            return Err(cur.syntax("expected a declaration"));
        };

        if head == "dim" {
            if dim.is_some() {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::Duplicate("dim".into()),
                });
            }
            cur.expect_sym('=')?;
            let col = cur.column();
            let v = cur.int()?;
            let n = usize::try_from(v).ok().filter(|&n| n > 0).ok_or_else(|| ParseError {
                line: line.number,
                column: col,
                kind: ParseErrorKind::Syntax("dimension must be a positive integer".into()),
            })?;
            cur.expect_end()?;
            dim = Some(n);
            continue;
        }

        let n = dim.ok_or(ParseError { line: line.number, column: head_col, kind: ParseErrorKind::MissingDim })?;

        let d_target = if head == "d" {
            Some(cur.basis_vector(n)?)
        } else if head.len() > 2 && head.starts_with("de") && head[2..].bytes().all(|b| b.is_ascii_digit()) {
            let v = BigInt::from_str(&head[2..]).expect("digits");
            Some(check_index(&v, n).map_err(|kind| ParseError { line: line.number, column: head_col + 2, kind })?)
        } else {
            None
        };

        if let Some(k) = d_target {
            cur.expect_sym('=')?;
            let f = form_expr(&mut cur, n, Some(2))?;
            cur.expect_end()?;
            if differentials.insert(k, f).is_some() {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::Duplicate(format!("d e{}", k + 1)),
                });
            }
            continue;
        }

        if cur.eat_sym('(') {
            if !schema.endomorphisms.contains(head) {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::UnknownName(head.clone()),
                });
            }
            let j = cur.basis_vector(n)?;
            cur.expect_sym(')')?;
            cur.expect_sym('=')?;
            let terms = cur.sum(|c| c.basis_vector(n))?;
            cur.expect_end()?;
            if !endo_columns.insert((head.clone(), j)) {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::Duplicate(format!("{head}(e{})", j + 1)),
                });
            }
            let m = endos.entry(head.clone()).or_insert_with(|| Matrix::zeros(n, n));
            for (c, i) in terms {
                let v = m.get(i, j) + c;
                m.set(i, j, v);
            }
            continue;
        }

        if cur.eat_sym('=') {
            if !schema.forms.contains(head) {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::UnknownName(head.clone()),
                });
            }
            let f = form_expr(&mut cur, n, None)?;
            cur.expect_end()?;
            if forms.insert(head.clone(), f).is_some() {
                return Err(ParseError {
                    line: line.number,
                    column: head_col,
                    kind: ParseErrorKind::Duplicate(head.clone()),
                });
            }
            continue;
        }

        return Err(cur.syntax("expected `=` or `(`"));
    }

    let n = dim.ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingDim })?;
    let ds = (0..n).map(|k| differentials.remove(&k).unwrap_or_else(|| Form::zero(n, 2))).collect();
    let algebra = LieAlgebra::from_differentials(n, ds).expect("parsed differentials have the right shape");
    Ok(StructurePackage { algebra, endomorphisms: endos, forms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const HYPER: &str = "# hyperelliptic\ndim = 4\nd e1 = e24\nd e2 = -e14\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = e12 + e24 + e34\n";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_structure_file(HYPER).unwrap();
        assert_eq!(p.algebra.dim(), 4);
        assert_eq!(p.endomorphisms["J"].get(1, 0), &int(-1));
        assert_eq!(p.forms["Omega"].len(), 3);
        let again = parse_structure_file(&p.serialize()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn abelian_default() {
        let p = parse_structure_file("dim=2").unwrap();
        assert!(p.algebra.is_abelian());
    }

    #[test]
    fn paper_style_derivatives_and_fractions() {
        let p = parse_structure_file("dim = 3\nde1 = 1/2*e23 - e32\nOmega = -3/4*e(1,3)\n").unwrap();
        assert_eq!(p.algebra.differential(0).coefficient(&[1, 2]), rat(3, 2));
        assert_eq!(p.forms["Omega"].coefficient(&[0, 2]), rat(-3, 4));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_structure_file("dim = 4\nd e5 = e12\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { index: 5, dim: 4 }));

        let e = parse_structure_file("d e1 = e23\n").unwrap_err();
        assert_eq!((e.line, e.kind), (1, ParseErrorKind::MissingDim));

        let e = parse_structure_file("dim = 3\nd e1 = e23\nd e1 = 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Duplicate(_)));

        let e = parse_structure_file("dim = 3\nOmegaa = e12\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnknownName(_)));

        let e = parse_structure_file("dim = 3\nOmega = e12 +\n").unwrap_err();
        assert_eq!(e.column, 14);

        let e = parse_structure_file("dim = 3\nOmega = e14\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));

        let e = parse_structure_file("dim = 3\nd e1 = e22\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RepeatedIndex);

        let e = parse_structure_file("dim = 3\nd e1 = e2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn large_dimensions_use_parenthesized_indices() {
        let p = parse_structure_file("dim = 10\nd e10 = e(1,2)\nOmega = e(9,10)\n").unwrap();
        assert_eq!(p.serialize().lines().nth(10).unwrap(), "d e10 = e(1,2)");
        assert!(parse_structure_file("dim = 10\nOmega = e12\n").is_err());
        assert_eq!(parse_structure_file(&p.serialize()).unwrap(), p);
    }
}

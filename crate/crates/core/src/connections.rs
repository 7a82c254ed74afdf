//! Invariant linear connections stored as Christoffel tables.
//!
//! Each named construction is a formula for `g(∇_X Y, Z)` followed by a check
//! of the contract it is supposed to satisfy; a failed check is an error, not
//! a silently wrong table.

use crate::algebra::{half, rat, unit, zero, Form, Matrix, Rational, Tensor3, VectorValuedTwoForm};
use crate::hermitian::{Metric, TamedPackage};
use crate::lie::LieAlgebra;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("{connection}: {contract} fails at basis indices {witness:?}")]
    Contract { connection: &'static str, contract: &'static str, witness: Vec<usize> },
    #[error("{0} requires an integrable J+")]
    NotIntegrable(&'static str),
}

/// Torsion 3-form that is not totally skew, with the first offending triple.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("torsion 3-form is not skew at {witness:?}")]
pub struct NonSkewTorsion {
    pub witness: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    /// `gamma[i * n + j] = ∇_{e_i} e_j`.
    gamma: Vec<Vec<Rational>>,
}

impl Connection {
    pub fn from_table(dim: usize, gamma: Vec<Vec<Rational>>) -> Self {
        assert_eq!(gamma.len(), dim * dim);
        Connection { dim, gamma }
    }

    /// The connection with `g(∇_X Y, Z) = t(X, Y, Z)`.
    pub fn from_lowered(metric: &Metric, t: &Tensor3) -> Self {
        let n = metric.dim();
        let gi = metric.inverse();
        let mut gamma = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let low: Vec<Rational> = (0..n).map(|k| t.get(i, j, k).clone()).collect();
                gamma.push(gi.apply(&low));
            }
        }
        Connection { dim: n, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, i: usize, j: usize) -> &[Rational] {
        &self.gamma[i * self.dim + j]
    }

    pub fn set_coefficient(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        self.gamma[i * self.dim + j] = v;
    }

    pub fn table(&self) -> &[Vec<Rational>] {
        &self.gamma
    }

    /// `∇_X Y` for invariant fields.
    pub fn covariant(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (o, v) in out.iter_mut().zip(&self.gamma[i * n + j]) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }

    /// `g(∇_{e_i} e_j, e_k)`.
    pub fn lowered(&self, g: &Matrix) -> Tensor3 {
        let n = self.dim;
        let low: Vec<Vec<Rational>> = self.gamma.iter().map(|v| g.transpose().apply(v)).collect();
        Tensor3::from_fn(n, |i, j, k| low[i * n + j][k].clone())
    }

    /// `(∇_X A) Y = ∇_X(AY) − A ∇_X Y` as a matrix.
    pub fn derivative_of_endomorphism(&self, x: &[Rational], a: &Matrix) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let y = unit(n, j);
                let lhs = self.covariant(x, &a.apply(&y));
                let rhs = a.apply(&self.covariant(x, &y));
                lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect()
            })
            .collect();
        Matrix::from_columns(&cols)
    }

    /// `(∇_X g)(Y, Z)` on basis triples; zero iff the connection is metric.
    pub fn metric_defect(&self, g: &Matrix) -> Tensor3 {
        let low = self.lowered(g);
        Tensor3::from_fn(self.dim, |x, y, z| -(low.get(x, y, z) + low.get(x, z, y)))
    }

    /// First `(X, Y)` with `(∇_X A) Y ≠ 0`.
    pub fn parallel_witness(&self, a: &Matrix) -> Option<[usize; 2]> {
        let n = self.dim;
        for x in 0..n {
            let d = self.derivative_of_endomorphism(&unit(n, x), a);
            if let Some(y) = (0..n).find(|&y| d.column(y).iter().any(|v| !v.is_zero())) {
                return Some([x, y]);
            }
        }
        None
    }

    /// `T(X, Y) = ∇_X Y − ∇_Y X − [X, Y]`.
    pub fn torsion(&self, l: &LieAlgebra) -> VectorValuedTwoForm {
        let n = self.dim;
        VectorValuedTwoForm::from_fn(n, |i, j| {
            let a = &self.gamma[i * n + j];
            let b = &self.gamma[j * n + i];
            let c = l.bracket_basis(i, j);
            (0..n).map(|k| &a[k] - &b[k] - &c[k]).collect()
        })
    }
}

/// `g(∇_X Y, Z) = ½(g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y))` on basis triples.
pub fn levi_civita_lowered(l: &LieAlgebra, g: &Matrix) -> Tensor3 {
    let n = l.dim();
    let gb: Vec<Vec<Rational>> = (0..n * n)
        .map(|p| g.transpose().apply(l.bracket_basis(p / n, p % n)))
        .collect();
    let h = half();
    Tensor3::from_fn(n, |x, y, z| &h * (&gb[x * n + y][z] - &gb[y * n + z][x] + &gb[z * n + x][y]))
}

fn verify_metric(conn: &Connection, g: &Matrix, name: &'static str) -> Result<(), ConnectionError> {
    match conn.metric_defect(g).witness() {
        None => Ok(()),
        Some((w, _)) => Err(ConnectionError::Contract { connection: name, contract: "∇g = 0", witness: w.to_vec() }),
    }
}

fn verify_parallel(conn: &Connection, j: &Matrix, name: &'static str, contract: &'static str) -> Result<(), ConnectionError> {
    match conn.parallel_witness(j) {
        None => Ok(()),
        Some(w) => Err(ConnectionError::Contract { connection: name, contract, witness: w.to_vec() }),
    }
}

pub fn levi_civita(l: &LieAlgebra, metric: &Metric) -> Result<Connection, ConnectionError> {
    let conn = Connection::from_lowered(metric, &levi_civita_lowered(l, metric.matrix()));
    verify_metric(&conn, metric.matrix(), "Levi-Civita")?;
    if let Some((i, j)) = conn.torsion(l).witness() {
        return Err(ConnectionError::Contract {
            connection: "Levi-Civita",
            contract: "torsion-free",
            witness: vec![i, j],
        });
    }
    Ok(conn)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// `N(X, Y, Z) = g(X, N₋(Y, Z))` and its totally skew part `⅓σN`.
pub fn nijenhuis_minus_tensors(pkg: &TamedPackage) -> (Tensor3, Tensor3) {
    let nt = pkg.n_minus().lower(pkg.g());
    let skew = nt.cyclic_sum().scale(&rat(1, 3));
    (nt, skew)
}

/// Correction `g(∇_X Y, Z) − g(∇^{LC}_X Y, Z)` of the Bismut connection.
///
/// `+`: `−½ J₊dω₊`. `−`: `+¼(N₋ + 3 b̄N₋) − ½ J₋dω₋`, where `N₋` is lowered in
/// its first slot and `b̄N₋` is its totally skew part.
pub fn bismut_correction(pkg: &TamedPackage, side: Side) -> Tensor3 {
    match side {
        Side::Plus => Tensor3::from_form(&pkg.jd_omega_plus()).scale(&-half()),
        Side::Minus => {
            let (nt, skew) = nijenhuis_minus_tensors(pkg);
            let n_part = (&nt + &skew.scale(&Rational::from_integer(3.into()))).scale(&rat(1, 4));
            &n_part - &Tensor3::from_form(&pkg.jd_omega_minus()).scale(&half())
        }
    }
}

/// The `−` correction with the opposite sign on the Nijenhuis group,
/// `−¼(N₋ + 3 b̄N₋) − ½ J₋dω₋`. It does not preserve `J₋` in general and is
/// kept only so reports can show that.
pub fn bismut_minus_correction_negated_nijenhuis(pkg: &TamedPackage) -> Tensor3 {
    let (nt, skew) = nijenhuis_minus_tensors(pkg);
    let n_part = (&nt + &skew.scale(&Rational::from_integer(3.into()))).scale(&rat(-1, 4));
    &n_part - &Tensor3::from_form(&pkg.jd_omega_minus()).scale(&half())
}

/// Connection with `g(∇_X Y, Z) = g(∇^{LC}_X Y, Z) + correction(X, Y, Z)`.
pub fn corrected_levi_civita(pkg: &TamedPackage, correction: &Tensor3) -> Connection {
    let lc = levi_civita_lowered(&pkg.algebra, pkg.g());
    Connection::from_lowered(&pkg.metric, &(&lc + correction))
}

/// Bismut connection of `(g, J₊)` or `(g, J₋)`: metric and `J±`-parallel.
pub fn bismut(pkg: &TamedPackage, side: Side) -> Result<Connection, ConnectionError> {
    let conn = corrected_levi_civita(pkg, &bismut_correction(pkg, side));
    let (name, j, contract) = match side {
        Side::Plus => ("Bismut+", &pkg.j_plus, "∇J+ = 0"),
        Side::Minus => ("Bismut-", &pkg.j_minus, "∇J- = 0"),
    };
    verify_metric(&conn, pkg.g(), name)?;
    verify_parallel(&conn, j, name, contract)?;
    Ok(conn)
}

/// `½ dω₊(J₊X, Y, Z)`.
pub fn chern_correction(pkg: &TamedPackage) -> Tensor3 {
    let id = Matrix::identity(pkg.dim());
    Tensor3::from_form(&pkg.d_omega_plus()).pullback(&pkg.j_plus, &id, &id).scale(&half())
}

/// Chern connection `D⁺` of `(g, J₊)`.
pub fn chern(pkg: &TamedPackage) -> Result<Connection, ConnectionError> {
    if !pkg.n_plus().is_zero() {
        return Err(ConnectionError::NotIntegrable("Chern connection"));
    }
    let conn = corrected_levi_civita(pkg, &chern_correction(pkg));
    verify_metric(&conn, pkg.g(), "Chern")?;
    verify_parallel(&conn, &pkg.j_plus, "Chern", "DJ+ = 0")?;
    Ok(conn)
}

/// `c(X, Y, Z) = g(X, T(Y, Z))`, if totally skew.
pub fn torsion_3form(l: &LieAlgebra, conn: &Connection, g: &Matrix) -> Result<Form, NonSkewTorsion> {
    conn.torsion(l).lower(g).to_form().map_err(|witness| NonSkewTorsion { witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::induce_tamed_package;
    use crate::lie::parse_structure_file;

    #[test]
    fn flat_connections_on_the_torus() {
        let p = parse_structure_file(crate::fixtures::TORUS4).unwrap();
        let pkg = induce_tamed_package(&p.algebra, &p.forms["Omega"], &p.endomorphisms["J"]).unwrap();
        let lc = levi_civita(&p.algebra, &pkg.metric).unwrap();
        assert!(lc.table().iter().all(|v| v.iter().all(Zero::is_zero)));
        assert_eq!(bismut(&pkg, Side::Plus).unwrap(), lc);
        assert_eq!(bismut(&pkg, Side::Minus).unwrap(), lc);
        assert_eq!(chern(&pkg).unwrap(), lc);
    }

    #[test]
    fn perturbing_levi_civita_breaks_a_contract() {
        let p = parse_structure_file(crate::fixtures::HYPERELLIPTIC).unwrap();
        let pkg = induce_tamed_package(&p.algebra, &p.forms["Omega"], &p.endomorphisms["J"]).unwrap();
        let lc = levi_civita(&p.algebra, &pkg.metric).unwrap();
        let n = pkg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut bad = lc.clone();
                    let mut v = bad.coefficient(i, j).to_vec();
                    v[k] += rat(1, 7);
                    bad.set_coefficient(i, j, v);
                    let metric = bad.metric_defect(pkg.g()).is_zero();
                    let torsion_free = bad.torsion(&p.algebra).is_zero();
                    assert!(!(metric && torsion_free));
                }
            }
        }
    }
}

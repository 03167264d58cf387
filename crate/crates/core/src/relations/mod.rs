//! F_q[θ]-linear relation search among labeled values of k_∞.
//!
//! A relation Σ c_i v_i = 0 with deg c_i ≤ D is linear in the F_q-digits of
//! the c_i, and each 1/θ-digit of the sum that is fully determined by the
//! known digits of the v_i gives one F_q-linear equation.

mod label;
mod report;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentApprox;
use crate::scalar::{Field, Poly, Var};

pub use label::{Evaluator, Factor, Label};
pub use report::{hunt, independence_report, HuntOutcome, IndependenceReport, Verdict};

/// Digits of margin beyond the unknown count: a random kernel survives with
/// probability about q^{−MARGIN}.
pub const MARGIN: usize = 20;

/// Labeled values at one common precision over one field.
#[derive(Clone, Debug)]
pub struct ValueVector {
    labels: Vec<String>,
    values: Vec<LaurentApprox>,
}

impl ValueVector {
    pub fn new(labels: Vec<String>, values: Vec<LaurentApprox>) -> Result<ValueVector> {
        if labels.len() != values.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} values",
                labels.len(),
                values.len()
            )));
        }
        let Some(first) = values.first() else {
            return Err(Error::Domain("empty value vector".into()));
        };
        for (l, v) in labels.iter().zip(&values) {
            if v.field() != first.field() {
                return Err(Error::ShapeMismatch(format!(
                    "{l} lives over F_{}, not F_{}",
                    v.q(),
                    first.q()
                )));
            }
            if v.is_exact_zero() {
                return Err(Error::Domain(format!("{l} is the exact zero")));
            }
            if v.precision() != first.precision() {
                return Err(Error::MixedPrecision(format!(
                    "{l} has precision {}, {} has {}",
                    v.precision(),
                    labels[0],
                    first.precision()
                )));
            }
        }
        Ok(ValueVector { labels, values })
    }

    /// Truncates every value to `prec`; each must be known at least that far.
    pub fn at_precision(
        labels: Vec<String>,
        values: Vec<LaurentApprox>,
        prec: i64,
    ) -> Result<ValueVector> {
        for (l, v) in labels.iter().zip(&values) {
            if v.precision() < prec {
                return Err(Error::MixedPrecision(format!(
                    "{l} is known through {} < {prec}",
                    v.precision()
                )));
            }
        }
        let values = values.iter().map(|v| v.truncate(prec)).collect();
        ValueVector::new(labels, values)
    }

    pub fn field(&self) -> &Field {
        self.values[0].field()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn values(&self) -> &[LaurentApprox] {
        &self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn precision(&self) -> i64 {
        self.values[0].precision()
    }
    /// Smallest valuation bound among the entries.
    pub fn min_valuation(&self) -> i64 {
        self.values.iter().map(|v| v.val_bound()).min().expect("nonempty")
    }
}

/// Coefficients c_i ∈ F_q[θ], deg c_i ≤ D, with Σ c_i v_i vanishing through
/// the working precision. The first nonzero c_i is monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub labels: Vec<String>,
    /// Ascending θ-coefficients of each c_i, as field codes.
    pub coeffs: Vec<Vec<u32>>,
    /// Valuation bound of Σ c_i v_i at the precision it was found.
    pub residual_val: i64,
    pub q: u32,
    #[serde(rename = "N")]
    pub prec: i64,
    #[serde(rename = "D")]
    pub deg_bound: usize,
}

impl RelationCertificate {
    pub fn polys(&self, field: &Field) -> Result<Vec<Poly>> {
        self.coeffs
            .iter()
            .map(|c| Poly::try_new(field, Var::Theta, c.clone()))
            .collect()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }
}

impl fmt::Display for RelationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Ok(field) = Field::new(self.q) else {
            return write!(f, "{:?}", self.coeffs);
        };
        let mut terms = Vec::new();
        for (c, l) in self.coeffs.iter().zip(&self.labels) {
            let p = Poly::new(&field, Var::Theta, c.clone());
            if !p.is_zero() {
                terms.push(format!("({p})·{l}"));
            }
        }
        write!(f, "{} = 0", terms.join(" + "))
    }
}

/// Σ c_i v_i.
pub fn residual(v: &ValueVector, coeffs: &[Poly]) -> Result<LaurentApprox> {
    if coeffs.len() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} coefficients for {} values",
            coeffs.len(),
            v.len()
        )));
    }
    let prec = v.precision();
    let mut acc = LaurentApprox::zero_to(v.field(), prec);
    for (c, x) in coeffs.iter().zip(v.values()) {
        if !c.is_zero() {
            // enough digits of the exact c that c·x is known through prec − deg c
            let pc = prec + (-x.val_bound()).max(0);
            acc = acc.add(&LaurentApprox::from_poly(c, pc).mul(x));
        }
    }
    Ok(acc)
}

/// Minimal F_q[θ]-module generators (up to degree `d`) of the relations among
/// `v` that hold through digit `prec`.
///
/// Unknowns are the digits c_{i,e}, ordered by degree e; equations are the
/// digits of Σ c_i v_i at exponents min_val − D … prec − D, all of which are
/// determined by the known digits. Requires equations ≥ unknowns + MARGIN.
pub fn find_relations(v: &ValueVector, d: usize, prec: i64) -> Result<Vec<RelationCertificate>> {
    if prec > v.precision() {
        return Err(Error::MixedPrecision(format!(
            "asked for precision {prec}, values are known through {}",
            v.precision()
        )));
    }
    let field = v.field().clone();
    let m = v.len();
    let unknowns = m * (d + 1);
    let min_val = v.min_valuation().min(prec + 1);
    let equations = prec - min_val + 1;
    if equations < (unknowns + MARGIN) as i64 {
        return Err(Error::Margin { equations, unknowns, margin: MARGIN });
    }
    let di = d as i64;
    // row for exponent j, column e·m + i holds digit j+e of v_i
    let mut rows: Vec<Vec<u32>> = (min_val - di..=prec - di)
        .map(|j| {
            let mut row = vec![0u32; unknowns];
            for e in 0..=d {
                for (i, x) in v.values().iter().enumerate() {
                    row[e * m + i] = x.coeff(j + e as i64).expect("within precision");
                }
            }
            row
        })
        .collect();
    let pivots = rref(&field, &mut rows, unknowns);
    let kernel = kernel_basis(&field, &rows, &pivots, unknowns);

    let trunc = ValueVector::at_precision(v.labels.clone(), v.values.clone(), prec)?;
    let mut span = Echelon::default();
    let mut out = Vec::new();
    for b in kernel {
        if span.reduce(&field, &b).iter().all(|&c| c == 0) {
            continue;
        }
        let deg = vector_degree(&b, m);
        let mut shifted = b.clone();
        for _ in deg..=d {
            span.insert(&field, &shifted);
            shifted.rotate_right(m);
        }
        let coeffs = normalize(&field, &b, m, d);
        let polys: Vec<Poly> = coeffs
            .iter()
            .map(|c| Poly::new(&field, Var::Theta, c.clone()))
            .collect();
        out.push(RelationCertificate {
            labels: v.labels.clone(),
            residual_val: residual(&trunc, &polys)?.val_bound(),
            coeffs: polys.into_iter().map(Poly::into_coeffs).collect(),
            q: field.q(),
            prec,
            deg_bound: d,
        });
    }
    Ok(out)
}

/// Rechecks `cert` against values known through at least twice its precision:
/// the residual must vanish through that precision minus D digits.
pub fn verify_relation(v: &ValueVector, cert: &RelationCertificate) -> Result<bool> {
    if cert.is_zero() {
        return Err(Error::Domain("the zero vector is not a relation".into()));
    }
    if v.field().q() != cert.q {
        return Err(Error::ShapeMismatch(format!(
            "certificate over F_{} checked against values over F_{}",
            cert.q,
            v.field().q()
        )));
    }
    if v.precision() < 2 * cert.prec {
        return Err(Error::Domain(format!(
            "reverification needs precision ≥ {}, values are known through {}",
            2 * cert.prec,
            v.precision()
        )));
    }
    let polys = cert.polys(v.field())?;
    let slack = cert.deg_bound as i64;
    Ok(residual(v, &polys)?.val_bound() > v.precision() - slack)
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, and drops the zero rows.
fn rref(field: &Field, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        for c in rows[rank].iter_mut() {
            *c = field.mul(*c, inv);
        }
        let pivot_row = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let c = row[col];
            if k == rank || c == 0 {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if p != 0 {
                    *x = field.sub(*x, field.mul(c, p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// One kernel vector per free column, in increasing column order. Each is
/// supported on its free column and earlier pivot columns.
fn kernel_basis(field: &Field, rows: &[Vec<u32>], pivots: &[usize], ncols: usize) -> Vec<Vec<u32>> {
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0u32; ncols];
            x[f] = 1;
            for (row, &p) in rows.iter().zip(pivots) {
                x[p] = field.neg(row[f]);
            }
            x
        })
        .collect()
}

fn vector_degree(x: &[u32], m: usize) -> usize {
    x.iter().rposition(|&c| c != 0).map_or(0, |k| k / m)
}

/// Splits a digit vector into polynomials and makes the first nonzero one monic.
fn normalize(field: &Field, x: &[u32], m: usize, d: usize) -> Vec<Vec<u32>> {
    let mut coeffs: Vec<Vec<u32>> = (0..m)
        .map(|i| (0..=d).map(|e| x[e * m + i]).collect())
        .collect();
    let lead = coeffs
        .iter()
        .find_map(|c| c.iter().rev().find(|&&a| a != 0).copied())
        .expect("nonzero relation");
    let inv = field.inv(lead).expect("nonzero");
    for c in coeffs.iter_mut() {
        for a in c.iter_mut() {
            *a = field.mul(*a, inv);
        }
        while c.last() == Some(&0) {
            c.pop();
        }
    }
    coeffs
}

/// An F_q-subspace kept in echelon form for membership tests.
#[derive(Default)]
struct Echelon {
    basis: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn reduce(&self, field: &Field, x: &[u32]) -> Vec<u32> {
        let mut x = x.to_vec();
        for (p, b) in &self.basis {
            let c = x[*p];
            if c != 0 {
                for (a, &bb) in x.iter_mut().zip(b) {
                    *a = field.sub(*a, field.mul(c, bb));
                }
            }
        }
        x
    }
    fn insert(&mut self, field: &Field, x: &[u32]) {
        let x = self.reduce(field, x);
        if let Some(p) = x.iter().position(|&c| c != 0) {
            let inv = field.inv(x[p]).expect("nonzero");
            let x = x.iter().map(|&c| field.mul(c, inv)).collect();
            self.basis.push((p, x));
        }
    }
}

//! The Frobenius difference system (Φ_⋆, ψ_⋆) attached to a family of indices
//! of common weight w, and the vanishing orders of its interior rows.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::scalar::{BiPoly, Field, Poly, Var};

use super::deformation::{deformation_series, deformation_series_lb};
use super::graded::{omega_unit, GradedSeries, TSeries};

/// One cell of Φ_⋆, kept symbolic because Q^{(−1)} need not lie in F_q[θ][t].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiEntry {
    Zero,
    One,
    /// (t − θ)^e
    Power(u32),
    /// Σ a(t)·Q^{(−1)}·(t − θ)^e
    Twisted(Vec<(Poly, BiPoly, u32)>),
}

impl PhiEntry {
    /// The entry after one forward twist, an honest element of F_q[θ][t].
    pub fn twisted(&self, field: &Field) -> BiPoly {
        let lin = t_minus_theta_q(field);
        match self {
            PhiEntry::Zero => BiPoly::zero(field),
            PhiEntry::One => BiPoly::one(field),
            PhiEntry::Power(e) => lin.pow(*e as u64),
            PhiEntry::Twisted(terms) => terms.iter().fold(BiPoly::zero(field), |acc, (a, qp, e)| {
                acc.add(&qp.mul_t(a).mul(&lin.pow(*e as u64)))
            }),
        }
    }
}

/// t − θ^q.
fn t_minus_theta_q(field: &Field) -> BiPoly {
    BiPoly::t(field).sub(&BiPoly::from_theta(&Poly::monomial(
        field,
        Var::Theta,
        1,
        field.q() as usize,
    )))
}

impl fmt::Display for PhiEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |e: u32| match e {
            0 => String::new(),
            1 => "(t − θ)".to_string(),
            e => format!("(t − θ)^{e}"),
        };
        match self {
            PhiEntry::Zero => write!(f, "0"),
            PhiEntry::One => write!(f, "1"),
            PhiEntry::Power(e) => write!(f, "{}", if *e == 0 { "1".into() } else { pow(*e) }),
            PhiEntry::Twisted(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(a, qp, e)| {
                        let a = if a.is_one() { String::new() } else { format!("({a})·") };
                        let p = pow(*e);
                        let sep = if p.is_empty() { "" } else { "·" };
                        format!("{a}[{qp}]^(-1){sep}{p}")
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Φ_⋆ symbolically, ψ_⋆ as graded truncations (every entry has grade −qw).
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub field: Field,
    pub weight: u32,
    pub indices: Vec<Index>,
    pub coefficients: Vec<Poly>,
    /// Depth r_i of each index.
    pub blocks: Vec<usize>,
    pub phi: Vec<Vec<PhiEntry>>,
    pub psi: Vec<GradedSeries>,
    pub tdeg: usize,
    pub prec: i64,
}

impl BlockSystem {
    pub fn size(&self) -> usize {
        self.phi.len()
    }
    /// Φ_⋆^{(1)} with exact entries.
    pub fn phi_twisted(&self) -> Vec<Vec<BiPoly>> {
        self.phi
            .iter()
            .map(|row| row.iter().map(|e| e.twisted(&self.field)).collect())
            .collect()
    }
}

fn push_twisted(cell: &mut PhiEntry, a: &Poly, qp: &BiPoly, e: u32) {
    if a.is_zero() || qp.is_zero() {
        return;
    }
    match cell {
        PhiEntry::Twisted(terms) => terms.push((a.clone(), qp.clone(), e)),
        _ => *cell = PhiEntry::Twisted(vec![(a.clone(), qp.clone(), e)]),
    }
}

/// Assembles Φ_⋆ and ψ_⋆ for S = {s_0 = (w), s_1, …, s_m} with deformation
/// inputs Q_i and coefficients a_i ∈ F_q[t] in the last row.
pub fn build_block_system(
    field: &Field,
    family: &[Index],
    qs: &[Vec<BiPoly>],
    coefficients: &[Poly],
    tdeg: usize,
    prec: i64,
) -> Result<BlockSystem> {
    let Some(first) = family.first() else {
        return Err(Error::ShapeMismatch("empty family".into()));
    };
    let w = first.weight();
    if first.depth() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "the first index must be ({w}), got {first}"
        )));
    }
    if qs.len() != family.len() || coefficients.len() != family.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} indices, {} polynomial lists, {} coefficients",
            family.len(),
            qs.len(),
            coefficients.len()
        )));
    }
    for (s, qi) in family.iter().zip(qs) {
        if s.weight() != w {
            return Err(Error::ShapeMismatch(format!("{s} does not have weight {w}")));
        }
        if qi.len() != s.depth() {
            return Err(Error::ShapeMismatch(format!(
                "{} polynomials for {s}",
                qi.len()
            )));
        }
    }
    if let Some(a) = coefficients.iter().find(|a| a.var() != Var::T) {
        return Err(Error::ShapeMismatch(format!("coefficient {a} is not in F_q[t]")));
    }
    let q = field.q() as i64;
    let blocks: Vec<usize> = family.iter().map(|s| s.depth()).collect();
    let n = 2 + blocks[1..].iter().map(|r| r - 1).sum::<usize>();
    let mut phi = vec![vec![PhiEntry::Zero; n]; n];
    let omega = GradedSeries::omega(field, tdeg, prec);
    let omega_pow = |e: u32| -> GradedSeries {
        if e == 0 {
            GradedSeries::new(0, TSeries::one(field, tdeg, prec))
        } else {
            GradedSeries::new(omega.grade * e as i64, omega.unit.pow(e as u64))
        }
    };
    let mut psi = vec![omega_pow(w)];
    phi[0][0] = PhiEntry::Power(w);
    let last = n - 1;
    let mut sum: Option<GradedSeries> = None;
    let mut off = 1;
    for (i, s) in family.iter().enumerate() {
        let r = s.depth();
        let e = s.entries();
        // residual weights R_k = s_k + … + s_r, R_{r+1} = 0
        let resid = |k: usize| e[k - 1..].iter().sum::<u32>();
        if i > 0 {
            for k in 1..r {
                let row = off + k - 1;
                let prev_col = if k == 1 { 0 } else { row - 1 };
                let one = Poly::one(field, Var::T);
                push_twisted(&mut phi[row][prev_col], &one, &qs[i][k - 1], resid(k));
                phi[row][row] = PhiEntry::Power(resid(k + 1));
                let l = deformation_series(field, s, &qs[i], k, tdeg, prec)?;
                psi.push(omega_pow(resid(k + 1)).mul(&l));
            }
        }
        let nu_col = if r == 1 || i == 0 { 0 } else { off + r - 2 };
        push_twisted(&mut phi[last][nu_col], &coefficients[i], &qs[i][r - 1], e[r - 1]);
        let full = deformation_series(field, s, &qs[i], r, tdeg, prec)?;
        let scaled = GradedSeries::new(full.grade, full.unit.mul_t_poly(&coefficients[i]));
        sum = Some(match sum {
            None => scaled,
            Some(acc) => acc.add(&scaled)?,
        });
        if i > 0 {
            off += r - 1;
        }
    }
    phi[last][last] = PhiEntry::One;
    psi.push(sum.expect("nonempty family"));
    debug_assert!(psi.iter().all(|p| p.grade == -q * w as i64));
    Ok(BlockSystem {
        field: field.clone(),
        weight: w,
        indices: family.to_vec(),
        coefficients: coefficients.to_vec(),
        blocks,
        phi,
        psi,
        tdeg,
        prec,
    })
}

/// Checks ψ = Φ^{(1)}·ψ^{(1)}, the forward twist of ψ^{(−1)} = Φψ, row by row
/// through the truncation.
pub fn verify_difference_system(b: &BlockSystem) -> Result<bool> {
    let twisted = b.phi_twisted();
    let psi1: Vec<GradedSeries> = b.psi.iter().map(|p| p.twist()).collect();
    for (row, lhs) in twisted.iter().zip(&b.psi) {
        let mut rhs: Option<GradedSeries> = None;
        for (entry, p) in row.iter().zip(&psi1) {
            if entry.is_zero() {
                continue;
            }
            let term = p.mul_bipoly(entry);
            rhs = Some(match rhs {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
        }
        let rhs = rhs.unwrap_or_else(|| GradedSeries::new(lhs.grade, TSeries::zero(&b.field, b.tdeg)));
        if !super::graded_agree(lhs, &rhs, b.prec / 2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Effective precisions are required to reach this fraction of N before a
/// digit pattern is trusted.
const RESOLUTION_DIVISOR: i64 = 4;

/// Orders of vanishing at t = θ^q of the interior entries Ω^{R_{k+1}}𝓛_k,
/// k = 1..r−1, of ψ for one index.
///
/// The order-m Hasse derivative at θ^q is summed from the retained t-coefficients.
/// Dropped coefficients (degree K > T) have valuation at least
/// base − q·d_Q + (q² − q)(K − d_Q − E) + q·m after evaluation, where base bounds
/// the unit part, d_Q is the total t-degree of the Q's and E counts the factors
/// of Ω̃ itself (untwisted), because the t^n coefficient of a product of E copies
/// of Ω̃ has valuation ≥ qn + (q² − q)(n − E) and twisted copies do better.
pub fn vanishing_order_profile(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    tdeg: usize,
    prec: i64,
) -> Result<BTreeSet<u32>> {
    let q = field.q() as i64;
    let r = s.depth();
    let e = s.entries();
    let floor = prec / RESOLUTION_DIVISOR;
    let mut out = BTreeSet::new();
    let om = omega_unit(field, tdeg, prec);
    for k in 1..r {
        let resid: u32 = e[k..].iter().sum();
        let l = deformation_series(field, s, qs, k, tdeg, prec)?;
        let unit = om.pow(resid as u64).mul(&l.unit);
        let base = deformation_series_lb(field.q(), s, qs, k);
        let d_q: i64 = qs[..k]
            .iter()
            .map(|x| x.t_degree().unwrap_or(0) as i64)
            .sum();
        let big_e = (resid + e[k - 1]) as i64;
        let mut found = None;
        for m in 0..=tdeg {
            let tail = base - q * d_q + (q * q - q) * (tdeg as i64 + 1 - d_q - big_e) + q * m as i64;
            let p_m = (unit.precision() - q * (tdeg - m) as i64).min(tail - 1);
            if p_m < floor {
                return Err(Error::Resolution(format!(
                    "row {k} of {s}: derivative {m} is only known through θ^-{p_m}; raise T or N"
                )));
            }
            let d = unit.hasse_at_theta_power(m, q).truncate(p_m);
            if !d.is_zero_to_precision() {
                found = Some(m as u32);
                break;
            }
        }
        match found {
            Some(m) => {
                out.insert(m);
            }
            None => {
                return Err(Error::Resolution(format!(
                    "row {k} of {s}: no nonvanishing derivative up to order {tdeg}"
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(f: &Field, n: usize) -> Vec<BiPoly> {
        vec![BiPoly::one(f); n]
    }

    #[test]
    fn single_block_shape() {
        let f = Field::new(3).unwrap();
        let fam = vec![Index::new(vec![2]).unwrap()];
        let b = build_block_system(&f, &fam, &[ones(&f, 1)], &[Poly::one(&f, Var::T)], 4, 30)
            .unwrap();
        assert_eq!(b.size(), 2);
        assert_eq!(b.phi[0][0], PhiEntry::Power(2));
        assert_eq!(b.phi[1][1], PhiEntry::One);
        assert_eq!(b.phi[1][0].to_string(), "[1]^(-1)·(t − θ)^2");
        assert!(verify_difference_system(&b).unwrap());
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = Field::new(3).unwrap();
        let fam = vec![Index::new(vec![3, 1]).unwrap()];
        let one = Poly::one(&f, Var::T);
        assert!(build_block_system(&f, &fam, &[ones(&f, 2)], std::slice::from_ref(&one), 4, 30).is_err());
        let fam = vec![Index::new(vec![4]).unwrap(), Index::new(vec![2, 1]).unwrap()];
        assert!(build_block_system(
            &f,
            &fam,
            &[ones(&f, 1), ones(&f, 2)],
            &[one.clone(), one],
            4,
            30
        )
        .is_err());
    }
}

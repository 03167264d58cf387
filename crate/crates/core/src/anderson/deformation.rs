//! Deformation series 𝓛_j = Σ_{ℓ_1 > … > ℓ_j ≥ 0} ∏_k (Ω^{s_k}Q_k)^{(ℓ_k)}:
//! their specializations at θ^{q^M} (normalized by π̃^{w q^M}) and their
//! truncated t-expansions.

use crate::error::{Error, Result};
use crate::index::{Index, SignVector};
use crate::laurent::LaurentApprox;
use crate::nested::{nested_sum, Layer};
use crate::scalar::{bracket_l_degree, qpow, BiPoly, Field};
use crate::zeta::{check_prec, convergence_failure, recip_bracket_l_power, SupNorm};

use super::graded::{neg_theta_power, omega_unit, GradedSeries, TSeries};

fn check_inputs(field: &Field, s: &Index, qs: &[BiPoly]) -> Result<()> {
    if qs.len() != s.depth() {
        return Err(Error::ShapeMismatch(format!(
            "{} polynomials for an index of depth {}",
            qs.len(),
            s.depth()
        )));
    }
    if let Some(j) = convergence_failure(field.q(), s, qs) {
        return Err(Error::Convergence {
            slot: j + 1,
            detail: format!(
                "Q_{} has θ-degree {}, not below {}·{}/{}",
                j + 1,
                qs[j].log_norm().unwrap_or(0),
                field.q(),
                s.entries()[j],
                field.q() - 1
            ),
        });
    }
    Ok(())
}

/// Upper bound for deg_θ Q^{(ℓ)}(θ^{q^M}).
fn twisted_degree(q: u32, qpoly: &BiPoly, l: u32, m: u32) -> i64 {
    let (ql, qm) = (qpow(q, l) as i64, qpow(q, m) as i64);
    qpoly
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| ql * c.deg_i64() + k as i64 * qm)
        .max()
        .unwrap_or(0)
}

/// π̃^{w q^M}·𝓛_{s,Q}(θ^{q^M}) through `prec`, computed as
/// Σ_{ℓ_1 > … > ℓ_r ≥ M} ∏_j ε_j^{ℓ_j} Q_j^{(ℓ_j)}(θ^{q^M}) / L_{ℓ_j − M}^{s_j q^M},
/// since Ω^{(ℓ)}(θ^{q^M}) = (π̃ L_{ℓ−M})^{−q^M} for ℓ ≥ M and 0 below.
///
/// With signs ε the γ_j of a (q−1)-th root of ε_j are divided out, leaving the
/// weights ε_j^{ℓ_j}.
pub fn deformation_value_at(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    eps: Option<&SignVector>,
    m: u32,
    prec: i64,
) -> Result<LaurentApprox> {
    check_prec(prec)?;
    check_inputs(field, s, qs)?;
    let trivial = SignVector::trivial(s.depth());
    let eps = eps.unwrap_or(&trivial);
    eps.check_len(s.depth())?;
    if qs.iter().any(|x| x.is_zero()) {
        return Ok(LaurentApprox::exact_zero(field));
    }
    let q = field.q();
    let qm = qpow(q, m) as u64;
    let layers: Vec<Layer<'_, LaurentApprox>> = s
        .entries()
        .iter()
        .zip(qs)
        .zip(eps.entries())
        .map(|((&sj, qj), &e)| {
            let weight = sj as u64 * qm;
            Layer {
                lb: Box::new(move |l| {
                    weight as i64 * bracket_l_degree(q, l - m) - twisted_degree(q, qj, l, m)
                }),
                term: Box::new(move |l, p| {
                    let poly = qj.twisted_value(l, m);
                    if poly.is_zero() {
                        return Ok(LaurentApprox::exact_zero(field));
                    }
                    let vr = weight as i64 * bracket_l_degree(q, l - m);
                    let recip = recip_bracket_l_power(field, l - m, weight, p + poly.deg_i64());
                    let num = LaurentApprox::from_poly(&poly, p - vr);
                    Ok(num.mul(&recip).scale(field.pow(e, l as u64)))
                }),
            }
        })
        .collect();
    Ok(nested_sum(&layers, m, prec)?
        .map(|v| v.truncate(prec))
        .unwrap_or_else(|| LaurentApprox::zero_to(field, prec)))
}

/// π̃^w·𝓛_{s,Q}(θ), the normalized specialization at t = θ.
pub fn deformation_value(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    eps: Option<&SignVector>,
    prec: i64,
) -> Result<LaurentApprox> {
    deformation_value_at(field, s, qs, eps, 0, prec)
}

/// Checks 𝓛(θ^q) = 𝓛(θ)^q in normalized form. With signs, the γ_j twist to
/// γ_j ε_j, so the normalized identity picks up the factor ∏ ε_j.
pub fn specialization_frobenius_check(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    eps: Option<&SignVector>,
    prec: i64,
) -> Result<bool> {
    let at_theta = deformation_value(field, s, qs, eps, prec)?;
    let at_q = deformation_value_at(field, s, qs, eps, 1, prec)?;
    let c = eps.map_or(1, |e| e.product(field));
    let want = at_theta.qth_power(1).scale(c);
    Ok(at_q.agrees_with(&want))
}

/// Whether each prefix value 𝓛_j(θ), j = 1..r, is visibly nonzero at `prec`.
pub fn prefix_nonvanishing(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    prec: i64,
) -> Result<Vec<bool>> {
    check_inputs(field, s, qs)?;
    (1..=s.depth())
        .map(|j| {
            let sj = Index::new(s.entries()[..j].to_vec())?;
            let v = deformation_value(field, &sj, &qs[..j], None, prec)?;
            Ok(!v.is_zero_to_precision())
        })
        .collect()
}

/// Lower bound for the coefficient valuations of the unit part of
/// (Ω^s Q)^{(ℓ)}: s·deg L_ℓ − q^ℓ·deg_θ Q.
fn factor_lb(q: u32, s: u32, qpoly: &BiPoly, l: u32) -> i64 {
    s as i64 * bracket_l_degree(q, l)
        - qpow(q, l) as i64 * qpoly.theta_degree().unwrap_or(0) as i64
}

/// Unit part of (Ω^s Q)^{(ℓ)} (grade −qs): (−θ)^{−s·deg L_ℓ}·(Ω̃^{(ℓ)})^s·Q^{(ℓ)}.
pub fn omega_factor_unit(
    field: &Field,
    s: u32,
    qpoly: &BiPoly,
    l: u32,
    tdeg: usize,
    prec: i64,
) -> TSeries {
    let q = field.q();
    let ql = qpow(q, l) as i64;
    let dl = s as i64 * bracket_l_degree(q, l);
    let p_omega = prec - dl + ql * qpoly.theta_degree().unwrap_or(0) as i64;
    // twisting ℓ times takes precision P0 to q^ℓ(P0 + 1) − 1
    let p0 = ((p_omega + 1 + ql - 1).div_euclid(ql) - 1).max(0);
    let w = omega_unit(field, tdeg, p0).twist(l).truncate(p_omega).pow(s as u64);
    neg_theta_power(&w.mul_bipoly(&qpoly.frobenius_twist(l)), -dl)
}

/// 𝓛_j as a graded series of grade −q(s_1 + … + s_j), truncated at t-degree T
/// with coefficients through `prec`. j = 0 gives 1.
pub fn deformation_series(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    j: usize,
    tdeg: usize,
    prec: i64,
) -> Result<GradedSeries> {
    check_prec(prec)?;
    check_inputs(field, s, qs)?;
    if j > s.depth() {
        return Err(Error::ShapeMismatch(format!(
            "prefix length {j} exceeds depth {}",
            s.depth()
        )));
    }
    let q = field.q();
    let grade = -(q as i64) * s.entries()[..j].iter().map(|&x| x as i64).sum::<i64>();
    if j == 0 {
        return Ok(GradedSeries::new(grade, TSeries::one(field, tdeg, prec)));
    }
    if qs[..j].iter().any(|x| x.is_zero()) {
        return Ok(GradedSeries::new(grade, TSeries::zero(field, tdeg)));
    }
    let layers: Vec<Layer<'_, TSeries>> = s.entries()[..j]
        .iter()
        .zip(qs)
        .map(|(&sk, qk)| Layer {
            lb: Box::new(move |l| factor_lb(q, sk, qk, l)),
            term: Box::new(move |l, p| Ok(omega_factor_unit(field, sk, qk, l, tdeg, p))),
        })
        .collect();
    let unit = nested_sum(&layers, 0, prec)?
        .map(|v| v.truncate(prec))
        .unwrap_or_else(|| TSeries::zero(field, tdeg).truncate(prec));
    Ok(GradedSeries::new(grade, unit))
}

/// Smallest valuation bound over all terms of 𝓛_j's unit part: the staircase
/// ℓ_k = j − k.
pub(crate) fn deformation_series_lb(q: u32, s: &Index, qs: &[BiPoly], j: usize) -> i64 {
    (0..j)
        .map(|k| factor_lb(q, s.entries()[k], &qs[k], (j - 1 - k) as u32))
        .sum()
}

/// Checks 𝓛_j = 𝓛_j^{(1)} + (Ω^{s_j}Q_j)·𝓛_{j−1}^{(1)} for j = 1..r, the
/// forward twist of 𝓛_j^{(−1)} = 𝓛_j + (Ω^{s_j}Q_j)^{(−1)}𝓛_{j−1}.
pub fn recursion_check(
    field: &Field,
    s: &Index,
    qs: &[BiPoly],
    tdeg: usize,
    prec: i64,
) -> Result<bool> {
    let q = field.q() as i64;
    let mut prev = deformation_series(field, s, qs, 0, tdeg, prec)?;
    for j in 1..=s.depth() {
        let cur = deformation_series(field, s, qs, j, tdeg, prec)?;
        let sj = s.entries()[j - 1];
        let factor = GradedSeries::new(
            -q * sj as i64,
            omega_factor_unit(field, sj, &qs[j - 1], 0, tdeg, prec),
        );
        let rhs = cur.twist().add(&factor.mul(&prev.twist()))?;
        if !super::graded_agree(&cur, &rhs, prec / 2) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

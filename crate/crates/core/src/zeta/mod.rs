//! Multizeta values, alternating MZVs, Carlitz multiple polylogarithms,
//! the Carlitz logarithm and integral powers of π̃^{q−1}.

mod power_sums;

use std::sync::Arc;

pub use power_sums::{monics, valuation_bound, PowerSums, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::index::{Index, SignVector};
use crate::laurent::LaurentApprox;
use crate::nested::{nested_sum, Layer, Summand};
use crate::scalar::{bracket_l_degree, qpow, BiPoly, Field, RatFunc};
use crate::store::Store;

impl Summand for LaurentApprox {
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        Ok(self.add(o))
    }
}

pub(crate) fn check_prec(prec: i64) -> Result<()> {
    if prec < 0 {
        return Err(Error::Domain(format!("precision must be ≥ 0, got {prec}")));
    }
    Ok(())
}

/// Evaluator bound to one field, holding the power-sum memo.
pub struct Zeta {
    field: Field,
    sums: PowerSums,
}

impl Zeta {
    pub fn new(field: &Field) -> Zeta {
        Zeta {
            field: field.clone(),
            sums: PowerSums::new(field),
        }
    }
    pub fn with_budget(mut self, budget: u64) -> Zeta {
        self.sums.set_budget(budget);
        self
    }
    pub fn with_store(mut self, store: Arc<dyn Store>) -> Zeta {
        self.sums.set_store(store);
        self
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn power_sums(&self) -> &PowerSums {
        &self.sums
    }

    pub fn power_sum_exact(&self, d: u32, n: u32) -> Result<RatFunc> {
        self.sums.exact(d, n)
    }

    pub fn power_sum_series(&self, d: u32, n: u32, prec: i64) -> Result<LaurentApprox> {
        self.sums.series(d, n, prec)
    }

    /// ζ_A(s) through exponent `prec`.
    pub fn mzv(&self, s: &Index, prec: i64) -> Result<LaurentApprox> {
        self.amzv(s, &SignVector::trivial(s.depth()), prec)
    }

    /// ζ_A(s; ε): the degree-d_j layer is weighted by ε_j^{d_j}.
    pub fn amzv(&self, s: &Index, eps: &SignVector, prec: i64) -> Result<LaurentApprox> {
        check_prec(prec)?;
        eps.check_len(s.depth())?;
        let f = &self.field;
        let q = f.q();
        let layers: Vec<Layer<'_, LaurentApprox>> = s
            .entries()
            .iter()
            .zip(eps.entries())
            .map(|(&n, &e)| Layer {
                lb: Box::new(move |d| valuation_bound(q, d, n)),
                term: Box::new(move |d, p| {
                    Ok(self.sums.at_precision(d, n, p)?.scale(f.pow(e, d as u64)))
                }),
            })
            .collect();
        Ok(nested_sum(&layers, 0, prec)?
            .map(|v| v.truncate(prec))
            .unwrap_or_else(|| LaurentApprox::zero_to(f, prec)))
    }

    pub fn cmpl(&self, s: &Index, u: &[RatFunc], prec: i64) -> Result<LaurentApprox> {
        cmpl(&self.field, s, u, prec)
    }

    pub fn carlitz_log(&self, u: &RatFunc, prec: i64) -> Result<LaurentApprox> {
        carlitz_log(&self.field, u, prec)
    }
}

/// log_q of the sup norm over θ-coefficients; None for zero.
pub trait SupNorm {
    fn log_norm(&self) -> Option<i64>;
}

impl SupNorm for RatFunc {
    fn log_norm(&self) -> Option<i64> {
        self.valuation().map(|v| -v)
    }
}

impl SupNorm for BiPoly {
    fn log_norm(&self) -> Option<i64> {
        self.theta_degree().map(|d| d as i64)
    }
}

/// Index of the first slot violating ‖Q_j‖ < q^{q s_j/(q−1)}, if any.
pub fn convergence_failure<T: SupNorm>(q: u32, s: &Index, xs: &[T]) -> Option<usize> {
    if xs.len() != s.depth() {
        return Some(xs.len().min(s.depth()));
    }
    let q = q as i64;
    s.entries()
        .iter()
        .zip(xs)
        .position(|(&sj, x)| x.log_norm().is_some_and(|l| (q - 1) * l >= q * sj as i64))
}

/// The strict sufficient convergence condition, componentwise.
pub fn convergence_check<T: SupNorm>(q: u32, s: &Index, xs: &[T]) -> bool {
    convergence_failure(q, s, xs).is_none()
}

/// 1/L_d^s through exponent `prec`, via
/// 1/L_d = (−1)^d θ^{−deg L_d} ∏_{i=1..d} (1 − θ^{1−q^i})^{−1}.
pub fn recip_bracket_l_power(field: &Field, d: u32, s: u64, prec: i64) -> LaurentApprox {
    let q = field.q();
    let v = s as i64 * bracket_l_degree(q, d);
    if prec < v {
        return LaurentApprox::zero_to(field, prec);
    }
    let len = (prec - v + 1) as usize;
    let mut y = vec![0u32; len];
    y[0] = if (d as u64 * s) % 2 == 1 { field.neg(1) } else { 1 };
    for i in 1..=d {
        let m = qpow(q, i) - 1;
        if m >= len {
            break;
        }
        geometric_inverse(field, &mut y, m, s);
    }
    LaurentApprox::from_digits(field, v, prec, &y)
}

/// Multiplies the unit series y (in u = 1/θ) by (1 − u^m)^{−k} in place.
fn geometric_inverse(field: &Field, y: &mut [u32], m: usize, k: u64) {
    for _ in 0..k {
        for n in m..y.len() {
            y[n] = field.add(y[n], y[n - m]);
        }
    }
}

/// Li_s(u_1, …, u_r) = Σ_{i_1 > … > i_r ≥ 0} ∏_j u_j^{q^{i_j}} / L_{i_j}^{s_j}.
pub fn cmpl(field: &Field, s: &Index, u: &[RatFunc], prec: i64) -> Result<LaurentApprox> {
    check_prec(prec)?;
    if u.len() != s.depth() {
        return Err(Error::ShapeMismatch(format!(
            "{} points for an index of depth {}",
            u.len(),
            s.depth()
        )));
    }
    if let Some(j) = convergence_failure(field.q(), s, u) {
        return Err(Error::Convergence {
            slot: j + 1,
            detail: format!(
                "|u_{}| = q^{} is not below q^({}·{}/{})",
                j + 1,
                u[j].log_norm().unwrap_or(0),
                field.q(),
                s.entries()[j],
                field.q() - 1
            ),
        });
    }
    if u.iter().any(|x| x.is_zero()) {
        return Ok(LaurentApprox::exact_zero(field));
    }
    let q = field.q();
    let layers: Vec<Layer<'_, LaurentApprox>> = s
        .entries()
        .iter()
        .zip(u)
        .map(|(&sj, uj)| {
            let vj = uj.valuation().expect("nonzero point");
            Layer {
                lb: Box::new(move |i| qpow(q, i) as i64 * vj + sj as i64 * bracket_l_degree(q, i)),
                term: Box::new(move |i, p| {
                    let qi = qpow(q, i) as i64;
                    let lv = sj as i64 * bracket_l_degree(q, i);
                    let recip = recip_bracket_l_power(field, i, sj as u64, p - qi * vj);
                    // u^{q^i} must be known through p − lv
                    let need = p - lv;
                    let p0 = (need + 1 + qi - 1).div_euclid(qi) - 1;
                    let ui = LaurentApprox::from_ratfunc(uj, p0).qth_power(i);
                    Ok(ui.mul(&recip))
                }),
            }
        })
        .collect();
    Ok(nested_sum(&layers, 0, prec)?
        .map(|v| v.truncate(prec))
        .unwrap_or_else(|| LaurentApprox::zero_to(field, prec)))
}

/// log_C(u) = Σ_{i ≥ 0} u^{q^i}/L_i.
pub fn carlitz_log(field: &Field, u: &RatFunc, prec: i64) -> Result<LaurentApprox> {
    cmpl(field, &Index::new(vec![1])?, std::slice::from_ref(u), prec)
}

/// π̃^{(q−1)m} = [(−θ)^q ∏_{i ≥ 1} (1 − θ^{1−q^i})^{−(q−1)}]^m through `prec`.
pub fn carlitz_period_power(field: &Field, m: i64, prec: i64) -> Result<LaurentApprox> {
    if m <= 0 {
        return Err(Error::Domain(format!(
            "period powers need m ≥ 1, got {m}"
        )));
    }
    let q = field.q() as i64;
    let shift = q * m;
    let len = (prec + shift + 1).max(0) as usize;
    if len == 0 {
        return Ok(LaurentApprox::zero_to(field, prec));
    }
    let mut y = vec![0u32; len];
    y[0] = if (q * m) % 2 == 1 { field.neg(1) } else { 1 };
    let k = ((q - 1) * m) as u64;
    let mut i = 1;
    loop {
        let mi = qpow(field.q(), i) - 1;
        if mi >= len {
            break;
        }
        geometric_inverse(field, &mut y, mi, k);
        i += 1;
    }
    Ok(LaurentApprox::from_digits(field, -shift, prec, &y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{bracket_l, Poly, Var};

    fn fq(q: u32) -> Field {
        Field::new(q).unwrap()
    }
    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_one_q2() {
        let f = fq(2);
        let z = Zeta::new(&f).mzv(&idx("1"), 5).unwrap();
        assert_eq!(z.valuation(), Some(0));
        assert_eq!(z.digits(), &[1, 0, 1, 1, 1, 1]);
        assert_eq!(z.precision(), 5);
    }

    #[test]
    fn leading_digit_of_depth_one() {
        for q in [2, 3, 5] {
            let f = fq(q);
            let z = Zeta::new(&f);
            for w in 1..6 {
                let v = z.mzv(&Index::new(vec![w]).unwrap(), 20).unwrap();
                assert_eq!(v.valuation(), Some(0));
                assert_eq!(v.coeff(0), Some(1));
            }
        }
    }

    #[test]
    fn recip_l_matches_rational_expansion() {
        for q in [2, 3, 4] {
            let f = fq(q);
            for d in 0..4 {
                for s in 1..4 {
                    let r = RatFunc::from_poly(&bracket_l(&f, d).pow(s)).inv().unwrap();
                    let want = LaurentApprox::from_ratfunc(&r, 90);
                    assert_eq!(recip_bracket_l_power(&f, d, s, 90), want, "q={q} d={d} s={s}");
                }
            }
        }
    }

    #[test]
    fn period_power_valuation_and_power_law() {
        for q in [2, 3, 5] {
            let f = fq(q);
            let p1 = carlitz_period_power(&f, 1, 60).unwrap();
            assert_eq!(p1.valuation(), Some(-(q as i64)));
            let p2 = carlitz_period_power(&f, 2, 60).unwrap();
            assert!(p2.agrees_with(&p1.mul(&p1)));
            assert!(p1.mul(&p1).precision() >= 60 - q as i64);
        }
        assert!(carlitz_period_power(&fq(3), 0, 10).is_err());
    }

    #[test]
    fn convergence_examples() {
        let f = fq(2);
        let one = BiPoly::one(&f);
        assert!(convergence_check(2, &idx("1"), &[one]));
        let t2 = BiPoly::from_theta(&Poly::monomial(&f, Var::Theta, 1, 2));
        assert!(!convergence_check(2, &idx("1"), &[t2]));
        assert!(convergence_check(2, &idx("1"), &[BiPoly::zero(&f)]));
        assert!(!convergence_check(2, &idx("1,1"), &[BiPoly::one(&f)]));
    }

    #[test]
    fn cmpl_edge_cases() {
        let f = fq(3);
        let z = RatFunc::zero(&f);
        assert!(cmpl(&f, &idx("2"), &[z], 20).unwrap().is_exact_zero());
        let big = RatFunc::parse(&f, "theta^2").unwrap();
        assert!(matches!(
            cmpl(&f, &idx("1"), &[big], 20),
            Err(Error::Convergence { slot: 1, .. })
        ));
        assert!(cmpl(&f, &idx("1,1"), &[RatFunc::one(&f)], 20).is_err());
    }

    #[test]
    fn log_of_one_is_zeta_one() {
        for q in [2, 3] {
            let f = fq(q);
            let a = carlitz_log(&f, &RatFunc::one(&f), 60).unwrap();
            let b = Zeta::new(&f).mzv(&idx("1"), 60).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn signs_trivial_matches_mzv() {
        let f = fq(3);
        let z = Zeta::new(&f);
        let s = idx("2,1");
        assert_eq!(
            z.amzv(&s, &SignVector::trivial(2), 40).unwrap(),
            z.mzv(&s, 40).unwrap()
        );
        assert!(z.amzv(&s, &SignVector::trivial(1), 40).is_err());
    }
}

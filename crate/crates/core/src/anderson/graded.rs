//! Truncated power series in t over k_∞ and their graded extension by
//! powers of (−θ)^{1/(q−1)}.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentApprox;
use crate::nested::Summand;
use crate::scalar::{binomial_mod_p, qpow, BiPoly, Field, Poly, Var};

/// Σ_{k ≤ T} f_k t^k + O(t^{T+1}) with f_k ∈ k_∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    field: Field,
    coeffs: Vec<LaurentApprox>,
}

impl TSeries {
    /// `coeffs` is padded with exact zeros or cut to length T + 1.
    pub fn new(field: &Field, tdeg: usize, mut coeffs: Vec<LaurentApprox>) -> TSeries {
        coeffs.resize(tdeg + 1, LaurentApprox::exact_zero(field));
        TSeries {
            field: field.clone(),
            coeffs,
        }
    }
    pub fn zero(field: &Field, tdeg: usize) -> TSeries {
        TSeries::new(field, tdeg, Vec::new())
    }
    pub fn one(field: &Field, tdeg: usize, prec: i64) -> TSeries {
        TSeries::new(field, tdeg, vec![LaurentApprox::one(field, prec)])
    }
    /// A polynomial in θ and t, truncated in t, with coefficients known
    /// through `prec`.
    pub fn from_bipoly(b: &BiPoly, tdeg: usize, prec: i64) -> TSeries {
        let f = b.field();
        let coeffs = b
            .coeffs()
            .iter()
            .take(tdeg + 1)
            .map(|c| poly_to(c, prec))
            .collect();
        TSeries::new(f, tdeg, coeffs)
    }
    /// A polynomial in t with F_q coefficients.
    pub fn from_t_poly(p: &Poly, tdeg: usize, prec: i64) -> TSeries {
        let f = p.field();
        let coeffs = p
            .coeffs()
            .iter()
            .take(tdeg + 1)
            .map(|&c| poly_to(&Poly::constant(f, Var::Theta, c), prec))
            .collect();
        TSeries::new(f, tdeg, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    /// The truncation degree T.
    pub fn tdeg(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[LaurentApprox] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> &LaurentApprox {
        &self.coeffs[k]
    }
    /// Smallest coefficient precision.
    pub fn precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(i64::MAX)
    }
    /// Smallest coefficient valuation bound.
    pub fn val_bound(&self) -> i64 {
        self.coeffs.iter().map(|c| c.val_bound()).min().unwrap_or(i64::MAX)
    }
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    fn check(&self, o: &TSeries) {
        assert!(
            self.field == o.field && self.coeffs.len() == o.coeffs.len(),
            "mixing incompatible t-series"
        );
    }

    pub fn add(&self, o: &TSeries) -> TSeries {
        self.check(o);
        TSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }
    pub fn neg(&self) -> TSeries {
        self.map(|c| c.neg())
    }
    pub fn sub(&self, o: &TSeries) -> TSeries {
        self.add(&o.neg())
    }
    fn map(&self, g: impl Fn(&LaurentApprox) -> LaurentApprox) -> TSeries {
        TSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(g).collect(),
        }
    }
    pub fn truncate(&self, prec: i64) -> TSeries {
        self.map(|c| c.truncate(prec))
    }
    /// Multiplies every coefficient by c ∈ k_∞.
    pub fn scale_by(&self, c: &LaurentApprox) -> TSeries {
        self.map(|x| x.mul(c))
    }
    /// Multiplies by c·θ^k with c ∈ F_q.
    pub fn scale_monomial(&self, c: u32, k: i64) -> TSeries {
        self.map(|x| x.scale(c).mul_theta_pow(k))
    }

    /// Product modulo t^{T+1}.
    pub fn mul(&self, o: &TSeries) -> TSeries {
        self.check(o);
        let n = self.coeffs.len();
        let mut out = vec![LaurentApprox::exact_zero(&self.field); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TSeries {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// k-th power, k ≥ 1.
    pub fn pow(&self, k: u64) -> TSeries {
        assert!(k >= 1, "zeroth power of a truncated series");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by an exact polynomial in θ and t; the polynomial is
    /// expanded just far enough not to limit the product's precision.
    pub fn mul_bipoly(&self, b: &BiPoly) -> TSeries {
        let p = self.precision();
        let v = self.val_bound().min(p);
        self.mul(&TSeries::from_bipoly(b, self.tdeg(), p.saturating_sub(v).max(0)))
    }

    /// Multiplies by a polynomial in t over F_q.
    pub fn mul_t_poly(&self, a: &Poly) -> TSeries {
        self.mul_bipoly(&BiPoly::from_t(a))
    }

    /// Coefficientwise f ↦ f^{(m)} (q^m-th power of each coefficient).
    pub fn twist(&self, m: u32) -> TSeries {
        self.map(|c| c.qth_power(m))
    }

    /// Coefficientwise inverse twist; errors when a coefficient is not a q-th power.
    pub fn untwist(&self) -> Result<TSeries> {
        Ok(TSeries {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.qth_root(1))
                .collect::<Result<_>>()?,
        })
    }

    /// Agreement of every coefficient through its common precision.
    pub fn agrees_with(&self, o: &TSeries) -> bool {
        self.check(o);
        self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.agrees_with(b))
    }

    /// Σ_k C(k, m) f_k x^{k−m} at x = θ^{e}: the order-m Hasse derivative in t
    /// evaluated at θ^e, from the retained coefficients only.
    pub fn hasse_at_theta_power(&self, m: usize, e: i64) -> LaurentApprox {
        let f = &self.field;
        let mut acc = LaurentApprox::exact_zero(f);
        for (k, c) in self.coeffs.iter().enumerate().skip(m) {
            let b = binomial_mod_p(k as u64, m as u64, f.p());
            if b == 0 {
                continue;
            }
            acc = acc.add(&c.scale(b).mul_theta_pow(e * (k - m) as i64));
        }
        acc
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(|(k, c)| format!("({c})·t^{k}"))
            .collect();
        write!(f, "{} + O(t^{})", parts.join(" + "), self.coeffs.len())
    }
}

impl Summand for TSeries {
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        Ok(self.add(o))
    }
}

/// A polynomial in θ through `prec`; the zero polynomial is the exact zero.
pub(crate) fn poly_to(p: &Poly, prec: i64) -> LaurentApprox {
    if p.is_zero() {
        return LaurentApprox::exact_zero(p.field());
    }
    LaurentApprox::from_poly(p, prec)
}

/// (−θ)^{m/(q−1)}·f(t). Only integral powers of (−θ) ever appear in f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    pub grade: i64,
    pub unit: TSeries,
}

impl GradedSeries {
    pub fn new(grade: i64, unit: TSeries) -> GradedSeries {
        GradedSeries { grade, unit }
    }

    /// Ω = (−θ)^{−q/(q−1)}·Ω̃.
    pub fn omega(field: &Field, tdeg: usize, prec: i64) -> GradedSeries {
        GradedSeries::new(-(field.q() as i64), omega_unit(field, tdeg, prec))
    }

    pub fn mul(&self, o: &GradedSeries) -> GradedSeries {
        GradedSeries::new(self.grade + o.grade, self.unit.mul(&o.unit))
    }

    /// Rewrites at a lower grade m' ≡ m mod (q − 1).
    pub fn regrade(&self, to: i64) -> Result<GradedSeries> {
        let q1 = self.unit.field().q() as i64 - 1;
        let diff = self.grade - to;
        if diff < 0 || diff % q1 != 0 {
            return Err(Error::ShapeMismatch(format!(
                "grade {} cannot be rewritten at grade {to}",
                self.grade
            )));
        }
        Ok(GradedSeries::new(to, neg_theta_power(&self.unit, diff / q1)))
    }

    pub fn add(&self, o: &GradedSeries) -> Result<GradedSeries> {
        let g = self.grade.min(o.grade);
        Ok(GradedSeries::new(
            g,
            self.regrade(g)?.unit.add(&o.regrade(g)?.unit),
        ))
    }

    /// Forward twist: (m, f) ↦ (m, (−θ)^m·f^{(1)}).
    pub fn twist(&self) -> GradedSeries {
        GradedSeries::new(self.grade, neg_theta_power(&self.unit.twist(1), self.grade))
    }

    pub fn mul_bipoly(&self, b: &BiPoly) -> GradedSeries {
        GradedSeries::new(self.grade, self.unit.mul_bipoly(b))
    }

    pub fn agrees_with(&self, o: &GradedSeries) -> bool {
        match (self.regrade(o.grade), o.regrade(self.grade)) {
            (Ok(a), _) => a.unit.agrees_with(&o.unit),
            (_, Ok(b)) => b.unit.agrees_with(&self.unit),
            _ => false,
        }
    }
}

/// f·(−θ)^k.
pub(crate) fn neg_theta_power(f: &TSeries, k: i64) -> TSeries {
    let field = f.field();
    let sign = if k.rem_euclid(2) == 1 { field.neg(1) } else { 1 };
    f.scale_monomial(sign, k)
}

/// Ω̃ = ∏_{i ≥ 1}(1 − t/θ^{q^i}) to t-degree T and precision N. Factors with
/// q^i > N are ≡ 1 through N and are dropped.
pub fn omega_unit(field: &Field, tdeg: usize, prec: i64) -> TSeries {
    let q = field.q();
    let mut coeffs = vec![LaurentApprox::zero_to(field, prec); tdeg + 1];
    coeffs[0] = LaurentApprox::one(field, prec);
    let mut i = 1;
    while (qpow(q, i) as i64) <= prec {
        let e = qpow(q, i) as i64;
        for k in (1..=tdeg).rev() {
            coeffs[k] = coeffs[k].sub(&coeffs[k - 1].mul_theta_pow(-e).truncate(prec));
        }
        i += 1;
    }
    TSeries::new(field, tdeg, coeffs)
}

/// Checks Ω̃^{(−1)} = (1 − t/θ)·Ω̃ through (T, N).
pub fn omega_unit_equation_check(field: &Field, tdeg: usize, prec: i64) -> bool {
    let w = omega_unit(field, tdeg, prec);
    let Ok(lhs) = w.untwist() else {
        return false;
    };
    let factor = TSeries::new(
        field,
        tdeg,
        vec![
            LaurentApprox::one(field, prec + 1),
            LaurentApprox::monomial(field, field.neg(1), 1, prec + 1),
        ],
    );
    let rhs = factor.mul(&w);
    lhs.agrees_with(&rhs) && lhs.precision() >= prec / field.q() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_unit_low_terms() {
        for q in [2u32, 3] {
            let f = Field::new(q).unwrap();
            let w = omega_unit(&f, 3, 30);
            assert_eq!(w.coeff(0), &LaurentApprox::one(&f, 30));
            let mut want = LaurentApprox::zero_to(&f, 30);
            let mut i = 1;
            while qpow(q, i) <= 30 {
                want = want.sub(&LaurentApprox::monomial(&f, 1, qpow(q, i) as i64, 30));
                i += 1;
            }
            assert_eq!(w.coeff(1), &want);
        }
    }

    #[test]
    fn omega_equation() {
        assert!(omega_unit_equation_check(&Field::new(2).unwrap(), 6, 30));
        assert!(omega_unit_equation_check(&Field::new(2).unwrap(), 1, 30));
        assert!(omega_unit_equation_check(&Field::new(3).unwrap(), 8, 40));
    }

    #[test]
    fn twist_keeps_grade() {
        let f = Field::new(3).unwrap();
        let om = GradedSeries::omega(&f, 4, 40);
        let tw = om.twist();
        assert_eq!(tw.grade, -3);
        // Ω = (t − θ^q)·Ω^{(1)}
        let t_minus = BiPoly::t(&f).sub(&BiPoly::from_theta(&Poly::monomial(
            &f,
            Var::Theta,
            1,
            3,
        )));
        assert!(om.agrees_with(&tw.mul_bipoly(&t_minus)));
    }
}

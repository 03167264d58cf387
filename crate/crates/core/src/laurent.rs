//! Truncated Laurent series in 1/θ: the working model of k_∞ = F_q((1/θ)).
//!
//! Exponents are 1/θ-exponents, so val(θ) = −1. A value carries an absolute
//! precision N: digits at exponents ≤ N are exact, nothing beyond is known.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{qpow, Field, Poly, RatFunc};

/// Σ_{e=val..prec} c_e θ^{−e} + O(θ^{−prec−1}), or the exact zero.
///
/// Invariants (when not exact zero): `coeffs.len() == prec − val + 1` and
/// `coeffs[0] != 0` whenever `coeffs` is nonempty. A value with no nonzero
/// digit through `prec` is "zero to precision" and has `val == prec + 1`.
#[derive(Clone)]
pub struct LaurentApprox {
    field: Field,
    val: i64,
    prec: i64,
    coeffs: Vec<u32>,
    exact_zero: bool,
}

/// Wire form: {"q", "val", "prec", "coeffs"} plus "exact_zero" when set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub q: u32,
    pub val: Option<i64>,
    pub prec: Option<i64>,
    pub coeffs: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exact_zero: bool,
}

impl PartialEq for LaurentApprox {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.exact_zero == o.exact_zero
            && (self.exact_zero
                || (self.val == o.val && self.prec == o.prec && self.coeffs == o.coeffs))
    }
}
impl Eq for LaurentApprox {}

impl fmt::Debug for LaurentApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = -(self.val + i as i64);
            let mono = match e {
                0 => String::new(),
                1 => "θ".to_string(),
                e => format!("θ^{e}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (c, true) => format!("{c}"),
                (1, false) => mono,
                (c, false) => format!("{c}{mono}"),
            });
        }
        terms.push(format!("O(θ^{})", -(self.prec + 1)));
        write!(f, "{}", terms.join(" + "))
    }
}

impl LaurentApprox {
    /// Builds from raw digits `raw[k]` at exponent `start + k`, keeping only
    /// exponents ≤ prec; missing digits up to prec are zero.
    pub fn from_digits(field: &Field, start: i64, prec: i64, raw: &[u32]) -> LaurentApprox {
        let first = raw
            .iter()
            .enumerate()
            .take_while(|(k, _)| start + (*k as i64) <= prec)
            .find(|(_, &c)| c != 0)
            .map(|(k, _)| k);
        match first {
            None => LaurentApprox::zero_to(field, prec),
            Some(k) => {
                let val = start + k as i64;
                let len = (prec - val + 1) as usize;
                let mut coeffs: Vec<u32> = raw[k..].iter().copied().take(len).collect();
                coeffs.resize(len, 0);
                LaurentApprox {
                    field: field.clone(),
                    val,
                    prec,
                    coeffs,
                    exact_zero: false,
                }
            }
        }
    }

    /// The exact zero (every term vanishes identically).
    pub fn exact_zero(field: &Field) -> LaurentApprox {
        LaurentApprox {
            field: field.clone(),
            val: 0,
            prec: i64::MAX,
            coeffs: Vec::new(),
            exact_zero: true,
        }
    }

    /// A value known to vanish through exponent `prec` and unknown beyond.
    pub fn zero_to(field: &Field, prec: i64) -> LaurentApprox {
        LaurentApprox {
            field: field.clone(),
            val: prec + 1,
            prec,
            coeffs: Vec::new(),
            exact_zero: false,
        }
    }

    /// c·θ^{−e} known through `prec`.
    pub fn monomial(field: &Field, c: u32, e: i64, prec: i64) -> LaurentApprox {
        if c == 0 {
            return LaurentApprox::zero_to(field, prec);
        }
        LaurentApprox::from_digits(field, e, prec, &[c])
    }

    pub fn one(field: &Field, prec: i64) -> LaurentApprox {
        LaurentApprox::monomial(field, 1, 0, prec)
    }

    /// A polynomial in θ, exact digits through `prec`.
    pub fn from_poly(p: &Poly, prec: i64) -> LaurentApprox {
        let f = p.field();
        let Some(deg) = p.degree() else {
            return LaurentApprox::zero_to(f, prec);
        };
        // exponent −deg + k carries the coefficient of θ^{deg−k}
        let start = -(deg as i64);
        let n = (prec - start + 1).clamp(0, deg as i64 + 1) as usize;
        let raw: Vec<u32> = (0..n).map(|k| p.coeff(deg - k)).collect();
        LaurentApprox::from_digits(f, start, prec, &raw)
    }

    /// Expansion at ∞ of a rational function, exact through `prec`.
    pub fn from_ratfunc(r: &RatFunc, prec: i64) -> LaurentApprox {
        let f = r.field();
        if r.is_zero() {
            return LaurentApprox::exact_zero(f);
        }
        let (num, den) = (r.num(), r.den());
        let (dn, dd) = (num.degree().unwrap(), den.degree().unwrap());
        let v = dd as i64 - dn as i64;
        if prec < v {
            return LaurentApprox::zero_to(f, prec);
        }
        // With u = 1/θ: num/den = u^v · n̂(u)/d̂(u), n̂_i = num_{dn−i}, d̂_i = den_{dd−i}.
        let len = (prec - v + 1) as usize;
        let dhat: Vec<(usize, u32)> = (1..=dd)
            .filter_map(|i| {
                let c = den.coeff(dd - i);
                (c != 0).then_some((i, f.neg(c)))
            })
            .collect();
        // den is monic so d̂_0 = 1
        let mut out = vec![0u32; len];
        for k in 0..len {
            let mut acc = if k <= dn { num.coeff(dn - k) } else { 0 };
            for &(i, c) in &dhat {
                if i > k {
                    break;
                }
                acc = f.add(acc, f.mul(c, out[k - i]));
            }
            out[k] = acc;
        }
        LaurentApprox::from_digits(f, v, prec, &out)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }
    /// True when no digit through the precision is nonzero (including exact zero).
    pub fn is_zero_to_precision(&self) -> bool {
        self.exact_zero || self.coeffs.is_empty()
    }
    /// Valuation, None when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero_to_precision()).then_some(self.val)
    }
    /// A lower bound on the valuation (prec + 1 for values zero to precision).
    pub fn val_bound(&self) -> i64 {
        if self.exact_zero {
            i64::MAX
        } else {
            self.val
        }
    }
    /// Absolute precision; i64::MAX for the exact zero.
    pub fn precision(&self) -> i64 {
        self.prec
    }
    /// Digits from the valuation through the precision.
    pub fn digits(&self) -> &[u32] {
        &self.coeffs
    }
    /// Digit at exponent e; None beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<u32> {
        if self.exact_zero {
            return Some(0);
        }
        if e > self.prec {
            return None;
        }
        if e < self.val {
            return Some(0);
        }
        Some(self.coeffs[(e - self.val) as usize])
    }
    /// Nonzero digits as (exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.val + i as i64, c))
    }

    /// |a|_∞ = q^{−val}; Some(0) for the exact zero, None when zero only to precision.
    pub fn abs_value(&self) -> Option<BigRational> {
        if self.exact_zero {
            return Some(BigRational::from_integer(BigInt::from(0)));
        }
        let v = self.valuation()?;
        let base = BigInt::from(self.q());
        let p = base.pow(v.unsigned_abs() as u32);
        Some(if v >= 0 {
            BigRational::new(BigInt::from(1), p)
        } else {
            BigRational::from_integer(p)
        })
    }

    fn check_field(&self, o: &LaurentApprox) {
        assert!(self.field == o.field, "mixing series over different fields");
    }

    /// Forgets digits beyond `prec` (no-op if already coarser).
    pub fn truncate(&self, prec: i64) -> LaurentApprox {
        if self.exact_zero || prec >= self.prec {
            return self.clone();
        }
        LaurentApprox::from_digits(&self.field, self.val, prec, &self.coeffs)
    }

    pub fn add(&self, o: &LaurentApprox) -> LaurentApprox {
        self.check_field(o);
        if self.exact_zero {
            return o.clone();
        }
        if o.exact_zero {
            return self.clone();
        }
        let f = &self.field;
        let prec = self.prec.min(o.prec);
        let start = self.val.min(o.val);
        if start > prec {
            return LaurentApprox::zero_to(f, prec);
        }
        let len = (prec - start + 1) as usize;
        let mut raw = vec![0u32; len];
        for s in [self, o] {
            let off = (s.val - start) as usize;
            for (i, &c) in s.coeffs.iter().enumerate() {
                let k = off + i;
                if k >= len {
                    break;
                }
                raw[k] = f.add(raw[k], c);
            }
        }
        LaurentApprox::from_digits(f, start, prec, &raw)
    }

    pub fn neg(&self) -> LaurentApprox {
        let f = &self.field;
        LaurentApprox {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &LaurentApprox) -> LaurentApprox {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: u32) -> LaurentApprox {
        if self.exact_zero {
            return self.clone();
        }
        if c == 0 {
            return LaurentApprox::exact_zero(&self.field);
        }
        let f = &self.field;
        LaurentApprox {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by θ^k: every exponent (and the precision) drops by k.
    pub fn mul_theta_pow(&self, k: i64) -> LaurentApprox {
        if self.exact_zero {
            return self.clone();
        }
        LaurentApprox {
            val: self.val - k,
            prec: self.prec - k,
            ..self.clone()
        }
    }

    /// Product; precision min(a.val + b.prec, b.val + a.prec).
    pub fn mul(&self, o: &LaurentApprox) -> LaurentApprox {
        self.check_field(o);
        if self.exact_zero || o.exact_zero {
            return LaurentApprox::exact_zero(&self.field);
        }
        let f = &self.field;
        let prec = (self.val + o.prec).min(o.val + self.prec);
        let start = self.val + o.val;
        if start > prec || self.coeffs.is_empty() || o.coeffs.is_empty() {
            return LaurentApprox::zero_to(f, prec);
        }
        let len = (prec - start + 1) as usize;
        let (a, b) = if nonzeros(&self.coeffs) <= nonzeros(&o.coeffs) {
            (&self.coeffs, &o.coeffs)
        } else {
            (&o.coeffs, &self.coeffs)
        };
        let raw = if f.is_prime_field() {
            let p = f.p() as u64;
            let mut acc = vec![0u64; len];
            for (i, &x) in a.iter().enumerate().take(len) {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                let n = b.len().min(len - i);
                for (slot, &y) in acc[i..i + n].iter_mut().zip(&b[..n]) {
                    *slot += x * y as u64;
                }
            }
            acc.into_iter().map(|v| (v % p) as u32).collect::<Vec<_>>()
        } else {
            let mut out = vec![0u32; len];
            for (i, &x) in a.iter().enumerate().take(len) {
                if x == 0 {
                    continue;
                }
                let n = b.len().min(len - i);
                for (j, &y) in b[..n].iter().enumerate() {
                    if y != 0 {
                        out[i + j] = f.add(out[i + j], f.mul(x, y));
                    }
                }
            }
            out
        };
        LaurentApprox::from_digits(f, start, prec, &raw)
    }

    /// Multiplicative inverse; precision N − 2v.
    pub fn inv(&self) -> Result<LaurentApprox> {
        if self.exact_zero {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.is_empty() {
            return Err(Error::Resolution(format!(
                "cannot invert a value that is zero through precision {}",
                self.prec
            )));
        }
        let f = &self.field;
        let len = self.coeffs.len();
        let c0inv = f.inv(self.coeffs[0])?;
        let support: Vec<(usize, u32)> = self.coeffs[1..]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, f.neg(f.mul(c, c0inv))))
            .collect();
        let mut out = vec![0u32; len];
        out[0] = c0inv;
        for k in 1..len {
            let mut acc = 0;
            for &(i, c) in &support {
                if i > k {
                    break;
                }
                acc = f.add(acc, f.mul(c, out[k - i]));
            }
            out[k] = acc;
        }
        Ok(LaurentApprox::from_digits(
            f,
            -self.val,
            self.prec - 2 * self.val,
            &out,
        ))
    }

    pub fn div(&self, o: &LaurentApprox) -> Result<LaurentApprox> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut k: u64) -> LaurentApprox {
        let mut acc: Option<LaurentApprox> = None;
        let mut base = self.clone();
        if k == 0 {
            return LaurentApprox::one(&self.field, self.prec);
        }
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("k > 0")
    }

    /// (Σ c_e θ^{−e})^{q^m} = Σ c_e θ^{−e q^m}; precision q^m (N + 1) − 1.
    pub fn qth_power(&self, m: u32) -> LaurentApprox {
        if self.exact_zero || m == 0 {
            return self.clone();
        }
        let qm = qpow(self.q(), m) as i64;
        let prec = qm * (self.prec + 1) - 1;
        if self.coeffs.is_empty() {
            return LaurentApprox::zero_to(&self.field, prec);
        }
        let mut raw = vec![0u32; (prec - self.val * qm + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[i * qm as usize] = c;
        }
        LaurentApprox::from_digits(&self.field, self.val * qm, prec, &raw)
    }

    /// Inverse of `qth_power`, assuming the underlying series is a q^m-th
    /// power; errors if a known nonzero digit sits at an exponent not divisible
    /// by q^m. Precision ⌊N / q^m⌋.
    pub fn qth_root(&self, m: u32) -> Result<LaurentApprox> {
        if self.exact_zero || m == 0 {
            return Ok(self.clone());
        }
        let qm = qpow(self.q(), m) as i64;
        let prec = self.prec.div_euclid(qm);
        if let Some((e, _)) = self.terms().find(|(e, _)| e.rem_euclid(qm) != 0) {
            return Err(Error::Domain(format!(
                "not a q^{m}-th power: nonzero digit at exponent {e}"
            )));
        }
        if self.coeffs.is_empty() {
            return Ok(LaurentApprox::zero_to(&self.field, prec));
        }
        let start = self.val / qm;
        let raw: Vec<u32> = self.coeffs.iter().step_by(qm as usize).copied().collect();
        Ok(LaurentApprox::from_digits(&self.field, start, prec, &raw))
    }

    /// Agreement of every digit through the common precision.
    pub fn agrees_with(&self, o: &LaurentApprox) -> bool {
        self.sub(o).is_zero_to_precision()
    }

    /// Precision shared with `o`.
    pub fn common_precision(&self, o: &LaurentApprox) -> i64 {
        self.prec.min(o.prec)
    }

    pub fn to_json(&self) -> LaurentJson {
        if self.exact_zero {
            return LaurentJson {
                q: self.q(),
                val: None,
                prec: None,
                coeffs: Vec::new(),
                exact_zero: true,
            };
        }
        LaurentJson {
            q: self.q(),
            val: Some(self.val),
            prec: Some(self.prec),
            coeffs: self.coeffs.clone(),
            exact_zero: false,
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<LaurentApprox> {
        let field = Field::new(j.q)?;
        if j.exact_zero {
            return Ok(LaurentApprox::exact_zero(&field));
        }
        let (Some(val), Some(prec)) = (j.val, j.prec) else {
            return Err(Error::Parse("series without val/prec".into()));
        };
        for &c in &j.coeffs {
            field.check(c)?;
        }
        if val > prec + 1 || (j.coeffs.len() as i64) > prec - val + 1 {
            return Err(Error::Parse("digits beyond the stated precision".into()));
        }
        Ok(LaurentApprox::from_digits(&field, val, prec, &j.coeffs))
    }
}

fn nonzeros(a: &[u32]) -> usize {
    a.iter().filter(|&&c| c != 0).count()
}

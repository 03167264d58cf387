//! Dense univariate polynomials over F_q in a named variable.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// The two variables that occur: θ (the base of A = F_q[θ]) and t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "t")]
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Theta => "θ",
            Var::T => "t",
        }
    }
}

/// Dense polynomial; `coeffs[i]` is the coefficient of x^i and the last
/// entry is nonzero (the zero polynomial has no entries).
#[derive(Clone)]
pub struct Poly {
    field: Field,
    var: Var,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs && self.field == other.field
    }
}
impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{x}")?,
                (1, c) => write!(f, "{c}{x}")?,
                (i, 1) => write!(f, "{x}^{i}")?,
                (i, c) => write!(f, "{c}{x}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros. Entries must lie in F_q.
    pub fn new(field: &Field, var: Var, mut coeffs: Vec<u32>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            var,
            coeffs,
        }
    }

    /// Like `new` but validates every entry.
    pub fn try_new(field: &Field, var: Var, coeffs: Vec<u32>) -> Result<Poly> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Poly::new(field, var, coeffs))
    }

    pub fn zero(field: &Field, var: Var) -> Poly {
        Poly::new(field, var, Vec::new())
    }
    pub fn one(field: &Field, var: Var) -> Poly {
        Poly::constant(field, var, 1)
    }
    pub fn constant(field: &Field, var: Var, c: u32) -> Poly {
        Poly::new(field, var, vec![c])
    }
    /// The variable itself.
    pub fn x(field: &Field, var: Var) -> Poly {
        Poly::monomial(field, var, 1, 1)
    }
    /// c·x^k.
    pub fn monomial(field: &Field, var: Var, c: u32, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(field, var, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    /// Degree, or None for the zero polynomial (the −∞ sentinel).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree with −1 standing for the zero polynomial.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }
    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Same coefficients, other variable.
    pub fn with_var(&self, var: Var) -> Poly {
        Poly {
            var,
            ..self.clone()
        }
    }

    fn same_ring(&self, other: &Poly) {
        assert!(
            self.var == other.var && self.field == other.field,
            "mixing polynomials over different rings"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(f, self.var, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.var, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.var, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// self · x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, self.var, v)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        Poly::new(
            &self.field,
            self.var,
            mul_slices(&self.field, &self.coeffs, &other.coeffs),
        )
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field, self.var);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same_ring(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f, self.var), self.clone()));
        }
        let inv_lead = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u32; rem.len() - dd];
        // Only the nonzero positions of d matter; divisors are often sparse.
        let support: Vec<(usize, u32)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd];
            if c == 0 {
                continue;
            }
            let qk = f.mul(c, inv_lead);
            quo[k] = qk;
            rem[k + dd] = 0;
            for &(i, di) in &support {
                rem[k + i] = f.sub(rem[k + i], f.mul(qk, di));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, self.var, quo), Poly::new(f, self.var, rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn make_monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&c) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b nonzero").1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// f(x^k): spreads coefficients so that x^i becomes x^{ik}.
    pub fn compose_monomial(&self, k: usize) -> Poly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        assert!(k > 0, "composition with x^0");
        let mut v = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Poly::new(&self.field, self.var, v)
    }

    /// The n-fold Frobenius twist: every θ-coefficient raised to q^n.
    ///
    /// On A = F_q[θ] this is f ↦ f^{q^n} = f(θ^{q^n}) since constants are fixed.
    /// A polynomial in t has F_q coefficients, which the twist fixes.
    pub fn frobenius_twist(&self, n: u32) -> Poly {
        match self.var {
            Var::T => self.clone(),
            Var::Theta => self.compose_monomial(qpow(self.field.q(), n)),
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, self.var, v)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

/// q^n as usize, panicking on overflow (such sizes are never materialized).
pub fn qpow(q: u32, n: u32) -> usize {
    (q as usize)
        .checked_pow(n)
        .expect("q^n overflows the address space")
}

/// Product of two dense coefficient slices.
pub(crate) fn mul_slices(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if nonzeros(a) <= nonzeros(b) { (a, b) } else { (b, a) };
    let n = a.len() + b.len() - 1;
    if f.is_prime_field() {
        let p = f.p() as u64;
        // Each output receives at most min(len) products < 2^32, so no overflow
        // before the final reduction while min(len) < 2^31.
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        acc.into_iter().map(|v| (v % p) as u32).collect()
    } else {
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
        }
        out
    }
}

fn nonzeros(a: &[u32]) -> usize {
    a.iter().filter(|&&c| c != 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(q: u32, c: &[u32]) -> Poly {
        Poly::new(&Field::new(q).unwrap(), Var::Theta, c.to_vec())
    }

    #[test]
    fn trims_and_degree() {
        let p = th(3, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(th(3, &[0, 0]).degree(), None);
        assert_eq!(th(3, &[]).deg_i64(), -1);
    }

    #[test]
    fn division_roundtrip() {
        let a = th(5, &[1, 2, 3, 4, 1, 0, 2]);
        let b = th(5, &[3, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg_i64() < b.deg_i64());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = th(3, &[1, 1]);
        let a = f.mul(&th(3, &[2, 0, 1]));
        let b = f.mul(&th(3, &[1, 2, 2, 1]));
        let g = a.gcd(&b);
        assert_eq!(g.leading(), 1);
        assert!(a.div_rem(&g).unwrap().1.is_zero());
        assert!(b.div_rem(&g).unwrap().1.is_zero());
        assert!(g.div_rem(&f).unwrap().1.is_zero());
    }

    #[test]
    fn twist_examples() {
        let q3 = th(3, &[1, 1]);
        assert_eq!(q3.frobenius_twist(1), th(3, &[1, 0, 0, 1]));
        assert_eq!(q3.frobenius_twist(0), q3);
        // twist agrees with the q^n-th power
        let p = th(3, &[2, 1, 0, 1]);
        assert_eq!(p.frobenius_twist(2), p.pow(9));
    }

    #[test]
    fn display_readable() {
        assert_eq!(th(3, &[1, 0, 2]).to_string(), "2θ^2 + 1");
        assert_eq!(th(2, &[0, 1]).to_string(), "θ");
    }

    #[test]
    fn extension_field_product() {
        let f = Field::new(4).unwrap();
        let a = Poly::new(&f, Var::T, vec![2, 1]);
        let b = Poly::new(&f, Var::T, vec![3, 1]);
        // (t + α)(t + α + 1) = t^2 + t + α(α+1) and α^2 + α = 1 in F_4
        assert_eq!(a.mul(&b), Poly::new(&f, Var::T, vec![1, 1, 1]));
    }
}

//! Reduced rational functions in F_q(θ).

use std::fmt;

use super::field::Field;
use super::poly::{Poly, Var};
use crate::error::{Error, Result};

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = (num.with_var(Var::Theta), den.with_var(Var::Theta));
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lead = den.leading();
        if lead != 1 {
            let inv = num.field().inv(lead)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: &Poly) -> RatFunc {
        RatFunc {
            num: p.with_var(Var::Theta),
            den: Poly::one(p.field(), Var::Theta),
        }
    }
    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(&Poly::zero(field, Var::Theta))
    }
    pub fn one(field: &Field) -> RatFunc {
        RatFunc::constant(field, 1)
    }
    pub fn constant(field: &Field, c: u32) -> RatFunc {
        RatFunc::from_poly(&Poly::constant(field, Var::Theta, c))
    }
    pub fn theta(field: &Field) -> RatFunc {
        RatFunc::from_poly(&Poly::x(field, Var::Theta))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// ∞-adic valuation deg den − deg num (val θ = −1); None for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.den.deg_i64() - self.num.deg_i64())
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone()).expect("den nonzero");
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("den nonzero")
    }
    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("den nonzero")
    }
    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        // num and den stay coprime under powers
        let mut num = base.num.pow(e);
        let mut den = base.den.pow(e);
        let lead = den.leading();
        if lead != 1 {
            let inv = self.field().inv(lead)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RatFunc { num, den })
    }
    pub fn scale(&self, c: u32) -> RatFunc {
        if c == 0 {
            return RatFunc::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// n-fold Frobenius twist; the twist is a field automorphism fixing F_q
    /// so coprimality and monicity are preserved.
    pub fn frobenius_twist(&self, n: u32) -> RatFunc {
        RatFunc {
            num: self.num.frobenius_twist(n),
            den: self.den.frobenius_twist(n),
        }
    }

    /// Parses expressions such as "(theta^2+1)/(theta-1)".
    pub fn parse(field: &Field, s: &str) -> Result<RatFunc> {
        super::parse::parse_ratfunc(field, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_canonical_and_idempotent() {
        let f = Field::new(5).unwrap();
        let a = Poly::new(&f, Var::Theta, vec![1, 1]);
        let b = Poly::new(&f, Var::Theta, vec![2, 0, 3]);
        let r = RatFunc::new(a.mul(&b), a.mul(&a).scale(3)).unwrap();
        assert_eq!(r.den().leading(), 1);
        assert_eq!(r.num().gcd(r.den()), Poly::one(&f, Var::Theta));
        let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn field_operations() {
        let f = Field::new(3).unwrap();
        let x = RatFunc::parse(&f, "(theta+1)/(theta^2+2)").unwrap();
        let y = RatFunc::parse(&f, "theta/(theta+2)").unwrap();
        assert_eq!(x.add(&y).sub(&y), x);
        assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        assert_eq!(x.mul(&x.inv().unwrap()), RatFunc::one(&f));
        assert_eq!(x.pow(-2).unwrap(), x.mul(&x).inv().unwrap());
        assert_eq!(RatFunc::zero(&f).inv(), Err(Error::DivisionByZero));
        assert!(RatFunc::new(x.num().clone(), Poly::zero(&f, Var::Theta)).is_err());
    }

    #[test]
    fn valuation_at_infinity() {
        let f = Field::new(2).unwrap();
        let r = RatFunc::parse(&f, "1/(theta+theta^2)").unwrap();
        assert_eq!(r.valuation(), Some(2));
        assert_eq!(RatFunc::theta(&f).valuation(), Some(-1));
        assert_eq!(RatFunc::zero(&f).valuation(), None);
    }
}

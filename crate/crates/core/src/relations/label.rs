//! Value labels such as `zeta:2,1`, `pi:1` or `zeta:1*zeta:2`, and their
//! evaluation.
//!
//! Factors: `zeta:s`, `amzv:s:ε`, `cmpl:s:u_1,…,u_r`, `log:u`, `pi:m`
//! (π̃^{(q−1)m}) and `gz:s` (Γ_{s_1}⋯Γ_{s_r}·ζ_A(s), through the
//! Anderson–Thakur specialization). A label is a `*`-separated product.

use std::fmt;
use std::sync::Arc;

use crate::anderson::{deformation_value, AtPolynomials};
use crate::error::{Error, Result};
use crate::index::{Index, SignVector};
use crate::laurent::LaurentApprox;
use crate::scalar::{parse_ratfunc, BiPoly, Field, RatFunc};
use crate::store::Store;
use crate::zeta::{carlitz_period_power, Zeta};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Zeta(Index),
    Amzv(Index, SignVector),
    Cmpl(Index, Vec<RatFunc>),
    Log(RatFunc),
    Pi(i64),
    Gz(Index),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    text: String,
    factors: Vec<Factor>,
}

impl Label {
    pub fn parse(field: &Field, s: &str) -> Result<Label> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty label".into()));
        }
        let factors = text
            .split('*')
            .map(|f| parse_factor(field, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Label { text, factors })
    }
    pub fn text(&self) -> &str {
        &self.text
    }
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_factor(field: &Field, s: &str) -> Result<Factor> {
    let parts: Vec<&str> = s.split(':').collect();
    let arity = |n: usize| {
        if parts.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("'{s}' needs {} ':'-separated fields", n)))
        }
    };
    match parts[0] {
        "zeta" => {
            arity(2)?;
            Ok(Factor::Zeta(parts[1].parse()?))
        }
        "gz" => {
            arity(2)?;
            Ok(Factor::Gz(parts[1].parse()?))
        }
        "amzv" => {
            arity(3)?;
            let s: Index = parts[1].parse()?;
            let eps = SignVector::parse(field, parts[2])?;
            eps.check_len(s.depth())?;
            Ok(Factor::Amzv(s, eps))
        }
        "cmpl" => {
            arity(3)?;
            let s: Index = parts[1].parse()?;
            let u = parts[2]
                .split(',')
                .map(|p| parse_ratfunc(field, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(Factor::Cmpl(s, u))
        }
        "log" => {
            arity(2)?;
            Ok(Factor::Log(parse_ratfunc(field, parts[1])?))
        }
        "pi" => {
            arity(2)?;
            let m = parts[1]
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("'{}' is not an integer", parts[1])))?;
            Ok(Factor::Pi(m))
        }
        other => Err(Error::Parse(format!(
            "unknown value kind '{other}' (expected zeta, amzv, cmpl, log, pi or gz)"
        ))),
    }
}

/// Evaluates labels over one field, sharing the power-sum and
/// Anderson–Thakur memos.
pub struct Evaluator {
    zeta: Zeta,
    at: AtPolynomials,
}

impl Evaluator {
    pub fn new(field: &Field) -> Evaluator {
        Evaluator {
            zeta: Zeta::new(field),
            at: AtPolynomials::new(field),
        }
    }
    pub fn with_store(field: &Field, store: Arc<dyn Store>) -> Evaluator {
        let mut at = AtPolynomials::new(field);
        at.set_store(store.clone());
        Evaluator {
            zeta: Zeta::new(field).with_store(store),
            at,
        }
    }
    pub fn field(&self) -> &Field {
        self.zeta.field()
    }
    pub fn zeta(&self) -> &Zeta {
        &self.zeta
    }
    pub fn at_polynomials(&self) -> &AtPolynomials {
        &self.at
    }

    pub fn parse(&self, s: &str) -> Result<Label> {
        Label::parse(self.field(), s)
    }

    /// Γ_{s_1}⋯Γ_{s_r}·ζ_A(s) through `prec`, as the normalized specialization
    /// with Q_j = H_{s_j−1}.
    pub fn gamma_scaled_mzv(&self, s: &Index, prec: i64) -> Result<LaurentApprox> {
        let qs: Vec<BiPoly> = s
            .entries()
            .iter()
            .map(|&x| self.at.get(x as u64 - 1))
            .collect::<Result<_>>()?;
        deformation_value(self.field(), s, &qs, None, prec)
    }

    pub fn factor(&self, f: &Factor, prec: i64) -> Result<LaurentApprox> {
        let field = self.field();
        match f {
            Factor::Zeta(s) => self.zeta.mzv(s, prec),
            Factor::Amzv(s, e) => self.zeta.amzv(s, e, prec),
            Factor::Cmpl(s, u) => self.zeta.cmpl(s, u, prec),
            Factor::Log(u) => self.zeta.carlitz_log(u, prec),
            Factor::Pi(m) => carlitz_period_power(field, *m, prec),
            Factor::Gz(s) => self.gamma_scaled_mzv(s, prec),
        }
    }

    /// The label's value through exactly `prec`. Products are recomputed at
    /// higher precision until the low valuations of the factors are absorbed.
    pub fn evaluate(&self, label: &Label, prec: i64) -> Result<LaurentApprox> {
        let mut extra = 0;
        for _ in 0..4 {
            let mut acc: Option<LaurentApprox> = None;
            for f in &label.factors {
                let v = self.factor(f, prec + extra)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.mul(&v),
                });
            }
            let v = acc.expect("labels have a factor");
            if v.is_exact_zero() || v.precision() >= prec {
                return Ok(v.truncate(prec));
            }
            extra += prec - v.precision();
        }
        Err(Error::Resolution(format!(
            "{label} could not be resolved through precision {prec}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let f = Field::new(3).unwrap();
        let l = Label::parse(&f, "zeta:2,1 * pi:1").unwrap();
        assert_eq!(l.text(), "zeta:2,1*pi:1");
        assert_eq!(l.factors().len(), 2);
        assert!(Label::parse(&f, "amzv:2,1:-1,1").is_ok());
        assert!(Label::parse(&f, "amzv:2,1:-1").is_err());
        assert!(Label::parse(&f, "cmpl:1,1:1,1/theta").is_ok());
        assert!(Label::parse(&f, "log:1").is_ok());
        assert!(Label::parse(&f, "gz:3,1").is_ok());
        assert!(Label::parse(&f, "zeta").is_err());
        assert!(Label::parse(&f, "foo:1").is_err());
        assert!(Label::parse(&f, "zeta:0").is_err());
    }

    #[test]
    fn products_reach_the_requested_precision() {
        let f = Field::new(3).unwrap();
        let ev = Evaluator::new(&f);
        let l = ev.parse("zeta:1*pi:1").unwrap();
        let v = ev.evaluate(&l, 30).unwrap();
        assert_eq!(v.precision(), 30);
        let a = ev.evaluate(&ev.parse("zeta:1").unwrap(), 40).unwrap();
        let b = carlitz_period_power(&f, 1, 40).unwrap();
        assert!(v.agrees_with(&a.mul(&b)));
    }
}

//! Anderson–Thakur polynomials H_n ∈ F_q[θ][t] from their generating function
//!
//!   (1 − Σ_{i ≥ 0} F_i/D_i|_{θ=t} x^{q^i})^{−1} = Σ_n H_n/Γ_{n+1}|_{θ=t} x^n,
//!
//! with F_0 = 1 and F_i = ∏_{j=1..i}(t^{q^i} − θ^{q^j}).

use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::scalar::{bracket_d, carlitz_gamma, qpow, BiPoly, Field, Poly, Var};
use crate::store::{bipoly_from_json, bipoly_to_json, field_key, Store};

/// Largest n accepted by default; the coefficients grow like deg Γ_{n+1}.
pub const DEFAULT_AT_LIMIT: u64 = 4096;

/// F_i ∈ F_q[θ][t].
pub fn at_numerator(field: &Field, i: u32) -> BiPoly {
    let q = field.q();
    let tq = BiPoly::new(
        field,
        (0..=qpow(q, i))
            .map(|k| {
                let c = u32::from(k == qpow(q, i));
                Poly::constant(field, Var::Theta, c)
            })
            .collect(),
    );
    (1..=i).fold(BiPoly::one(field), |acc, j| {
        let th = BiPoly::from_theta(&Poly::monomial(field, Var::Theta, 1, qpow(q, j)));
        acc.mul(&tq.sub(&th))
    })
}

/// A coefficient of the inverted series: num/den with den ∈ F_q[t] monic.
#[derive(Clone)]
struct Frac {
    num: BiPoly,
    den: Poly,
}

impl Frac {
    fn add(&self, o: &Frac) -> Frac {
        let num = self.num.mul_t(&o.den).add(&o.num.mul_t(&self.den));
        let den = self.den.mul(&o.den);
        Frac::reduced(num, den)
    }
    fn reduced(num: BiPoly, den: Poly) -> Frac {
        if num.is_zero() {
            return Frac {
                num,
                den: Poly::one(den.field(), Var::T),
            };
        }
        let g = num.t_content().gcd(&den);
        if g.is_one() {
            return Frac { num, den };
        }
        Frac {
            num: num.div_exact_t(&g).expect("g divides the content"),
            den: den.div_exact(&g).expect("g divides den"),
        }
    }
}

/// Memoized H_n over one field, optionally backed by a persistent store.
pub struct AtPolynomials {
    field: Field,
    limit: u64,
    // g_n = H_n/Γ_{n+1}|_{θ=t}, computed for n < len
    series: RwLock<Vec<Frac>>,
    store: Option<Arc<dyn Store>>,
}

impl AtPolynomials {
    pub fn new(field: &Field) -> AtPolynomials {
        AtPolynomials {
            field: field.clone(),
            limit: DEFAULT_AT_LIMIT,
            series: RwLock::new(Vec::new()),
            store: None,
        }
    }
    pub fn set_limit(&mut self, limit: u64) {
        self.limit = limit;
    }
    pub fn set_store(&mut self, store: Arc<dyn Store>) {
        self.store = Some(store);
    }
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn key(&self, n: u64) -> String {
        format!("{};n={n}", field_key(&self.field))
    }

    /// H_n, cleared of denominators; errors if the clearing is inexact.
    pub fn get(&self, n: u64) -> Result<BiPoly> {
        if n > self.limit {
            return Err(Error::Budget {
                needed: n as u128,
                budget: self.limit,
            });
        }
        let f = &self.field;
        if let Some(h) = self
            .store
            .as_ref()
            .and_then(|s| s.load("at_poly", &self.key(n)))
            .and_then(|v| bipoly_from_json(f, &v).ok())
        {
            return Ok(h);
        }
        let g = self.coefficient(n as usize);
        let gamma = carlitz_gamma(f, n as i64 + 1)?.with_var(Var::T);
        let h = g.num.mul_t(&gamma).div_exact_t(&g.den).map_err(|_| {
            Error::Internal(format!(
                "H_{n} does not clear denominators: Γ_{} ∤ {}",
                n + 1,
                g.den
            ))
        })?;
        if let Some(s) = &self.store {
            s.save("at_poly", &self.key(n), &bipoly_to_json(&h));
        }
        Ok(h)
    }

    /// x^n coefficient of the inverted series, by g_n = Σ_{q^i ≤ n} c_i g_{n−q^i}.
    fn coefficient(&self, n: usize) -> Frac {
        if let Some(g) = self.series.read().expect("series lock").get(n) {
            return g.clone();
        }
        let f = &self.field;
        let q = f.q();
        let mut series = self.series.write().expect("series lock");
        if series.is_empty() {
            series.push(Frac {
                num: BiPoly::one(f),
                den: Poly::one(f, Var::T),
            });
        }
        let mut steps: Vec<(usize, Frac)> = Vec::new();
        let mut i = 0;
        while qpow(q, i) <= n {
            steps.push((
                qpow(q, i),
                Frac {
                    num: at_numerator(f, i),
                    den: bracket_d(f, i).with_var(Var::T),
                },
            ));
            i += 1;
        }
        for m in series.len()..=n {
            let mut acc = Frac {
                num: BiPoly::zero(f),
                den: Poly::one(f, Var::T),
            };
            for (step, c) in steps.iter().take_while(|(s, _)| *s <= m) {
                let prev = &series[m - step];
                let term = Frac::reduced(c.num.mul(&prev.num), c.den.mul(&prev.den));
                acc = acc.add(&term);
            }
            series.push(acc);
        }
        series[n].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        for q in [2, 3, 5] {
            let f = Field::new(q).unwrap();
            let at = AtPolynomials::new(&f);
            assert_eq!(at.get(0).unwrap(), BiPoly::one(&f));
            // below q only the i = 0 term contributes and Γ_{n+1} = 1
            for n in 1..(q as u64 - 1) {
                assert_eq!(at.get(n).unwrap(), BiPoly::one(&f));
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let f = Field::new(2).unwrap();
        let mut at = AtPolynomials::new(&f);
        at.set_limit(3);
        assert!(matches!(at.get(4), Err(Error::Budget { .. })));
    }

    #[test]
    fn numerator_degrees() {
        let f = Field::new(3).unwrap();
        let f2 = at_numerator(&f, 2);
        assert_eq!(f2.t_degree(), Some(18));
        assert_eq!(f2.theta_degree(), Some(3 + 9));
    }
}

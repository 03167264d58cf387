//! Power sums S_d(n) = Σ_{a monic, deg a = d} a^{−n}.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::laurent::LaurentApprox;
use crate::scalar::{bracket_l_degree, Field, Poly, RatFunc, Var};
use crate::store::{field_key, ratfunc_from_json, ratfunc_to_json, Store};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Lower bound for val S_d(n), n ≥ 1: max(n·d, deg L_d).
///
/// The n·d part is termwise. For deg L_d: with e_d(x) = ∏_{b ∈ A, deg b < d}(x − b),
/// which is F_q-linear with constant derivative δ, Σ_b (x − b)^{−1} = δ/e_d(x), so
/// S_d(n) = ±δ·∂^{(n−1)}(1/e_d)(θ^d) where ∂^{(k)} are Hasse derivatives. Each
/// ∂^{(k)}(1/e_d) is a polynomial in δ and 1/e_d divisible by 1/e_d^{1+k'} with
/// the coefficient sizes bounded by |δ|^{k'}, and |δ/e_d(θ^d)| = |1/L_d|.
pub fn valuation_bound(q: u32, d: u32, n: u32) -> i64 {
    (n as i64 * d as i64).max(bracket_l_degree(q, d))
}

/// All monic polynomials of degree d, in counting order.
pub fn monics(field: &Field, d: u32) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u64;
    let count = q.pow(d);
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            c.push((k % q) as u32);
            k /= q;
        }
        c.push(1);
        Poly::new(field, Var::Theta, c)
    })
}

/// Memoized exact power sums, optionally backed by a persistent store.
pub struct PowerSums {
    field: Field,
    budget: u64,
    memo: RwLock<HashMap<(u32, u32), RatFunc>>,
    store: Option<Arc<dyn Store>>,
}

impl PowerSums {
    pub fn new(field: &Field) -> PowerSums {
        PowerSums {
            field: field.clone(),
            budget: DEFAULT_BUDGET,
            memo: RwLock::new(HashMap::new()),
            store: None,
        }
    }
    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }
    pub fn budget(&self) -> u64 {
        self.budget
    }
    pub fn set_store(&mut self, store: Arc<dyn Store>) {
        self.store = Some(store);
    }

    fn check_budget(&self, d: u32) -> Result<()> {
        let needed = (self.field.q() as u128).checked_pow(d).unwrap_or(u128::MAX);
        if needed > self.budget as u128 {
            return Err(Error::Budget {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn key(&self, d: u32, n: u32) -> String {
        format!("{};d={d};n={n}", field_key(&self.field))
    }

    /// Exact S_d(n) as a reduced rational function.
    pub fn exact(&self, d: u32, n: u32) -> Result<RatFunc> {
        if n == 0 {
            return Err(Error::InvalidIndex("power sums need n ≥ 1".into()));
        }
        if let Some(r) = self.memo.read().expect("memo lock").get(&(d, n)) {
            return Ok(r.clone());
        }
        self.check_budget(d)?;
        let from_store = self.store.as_ref().and_then(|s| {
            let v = s.load("power_sum", &self.key(d, n))?;
            ratfunc_from_json(&self.field, &v).ok()
        });
        let r = match from_store {
            Some(r) => r,
            None => {
                let r = sum_of_reciprocal_powers(&self.field, monics(&self.field, d), n as u64);
                if let Some(s) = &self.store {
                    s.save("power_sum", &self.key(d, n), &ratfunc_to_json(&r));
                }
                r
            }
        };
        self.memo
            .write()
            .expect("memo lock")
            .insert((d, n), r.clone());
        Ok(r)
    }

    /// S_d(n) by direct Laurent enumeration, independent of the exact path.
    pub fn series(&self, d: u32, n: u32, prec: i64) -> Result<LaurentApprox> {
        if n == 0 {
            return Err(Error::InvalidIndex("power sums need n ≥ 1".into()));
        }
        self.check_budget(d)?;
        let f = &self.field;
        // a^{-1} has valuation d; n factors at precision P give P + (n−1)d.
        let p = prec - (n as i64 - 1) * d as i64;
        let mut acc = LaurentApprox::zero_to(f, prec);
        for a in monics(f, d) {
            let inv = LaurentApprox::from_ratfunc(&RatFunc::from_poly(&a).inv()?, p);
            acc = acc.add(&inv.pow(n as u64).truncate(prec));
        }
        Ok(acc.truncate(prec))
    }

    /// S_d(n) expanded to precision `prec` from the exact value.
    pub fn at_precision(&self, d: u32, n: u32, prec: i64) -> Result<LaurentApprox> {
        Ok(LaurentApprox::from_ratfunc(&self.exact(d, n)?, prec))
    }
}

/// Σ 1/a^n over the given polynomials, combined pairwise with a single
/// reduction at the end.
fn sum_of_reciprocal_powers(field: &Field, polys: impl Iterator<Item = Poly>, n: u64) -> RatFunc {
    let one = Poly::one(field, Var::Theta);
    let mut layer: Vec<(Poly, Poly)> = polys.map(|a| (one.clone(), a.pow(n))).collect();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some((a, b)) = it.next() {
            match it.next() {
                Some((c, d)) => next.push((a.mul(&d).add(&c.mul(&b)), b.mul(&d))),
                None => next.push((a, b)),
            }
        }
        layer = next;
    }
    let (num, den) = layer.pop().expect("at least one monic");
    RatFunc::new(num, den).expect("monic denominators")
}

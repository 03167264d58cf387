//! Polynomials in t whose coefficients are polynomials in θ.

use std::fmt;

use super::field::Field;
use super::poly::{qpow, Poly, Var};
use crate::error::{Error, Result};

/// Σ_k c_k(θ) t^k with the last c_k nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let tk = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            match (k, c.is_one(), c.weight() == 1) {
                (0, _, _) => write!(f, "{c}")?,
                (_, true, _) => write!(f, "{tk}")?,
                (_, _, true) => write!(f, "{c}·{tk}")?,
                _ => write!(f, "({c})·{tk}")?,
            }
        }
        Ok(())
    }
}

impl BiPoly {
    /// Builds from θ-polynomial coefficients (low t-degree first).
    pub fn new(field: &Field, coeffs: Vec<Poly>) -> BiPoly {
        let mut coeffs: Vec<Poly> = coeffs
            .into_iter()
            .inspect(|c| {
                debug_assert!(c.var() == Var::Theta && c.field() == field);
            })
            .collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From a raw table: `table[k][i]` is the coefficient of t^k θ^i.
    pub fn from_table(field: &Field, table: Vec<Vec<u32>>) -> Result<BiPoly> {
        let coeffs = table
            .into_iter()
            .map(|row| Poly::try_new(field, Var::Theta, row))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::new(field, coeffs))
    }

    /// The coefficient table, inverse of `from_table`.
    pub fn to_table(&self) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect()
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly::new(field, Vec::new())
    }
    pub fn one(field: &Field) -> BiPoly {
        BiPoly::from_theta(&Poly::one(field, Var::Theta))
    }
    /// The variable t.
    pub fn t(field: &Field) -> BiPoly {
        BiPoly::from_t(&Poly::x(field, Var::T))
    }
    /// The variable θ.
    pub fn theta(field: &Field) -> BiPoly {
        BiPoly::from_theta(&Poly::x(field, Var::Theta))
    }
    pub fn constant(field: &Field, c: u32) -> BiPoly {
        BiPoly::from_theta(&Poly::constant(field, Var::Theta, c))
    }

    /// Embeds a θ-polynomial as a t-constant.
    pub fn from_theta(p: &Poly) -> BiPoly {
        BiPoly::new(p.field(), vec![p.with_var(Var::Theta)])
    }

    /// Embeds a polynomial in t with F_q coefficients.
    pub fn from_t(p: &Poly) -> BiPoly {
        let f = p.field();
        BiPoly::new(
            f,
            p.coeffs()
                .iter()
                .map(|&c| Poly::constant(f, Var::Theta, c))
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field, Var::Theta))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree in t, None for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Largest θ-degree among the coefficients, None for zero. This is
    /// log_q of the sup norm ‖·‖_∞ over the θ-coefficients.
    pub fn theta_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// Whether every coefficient is a constant in F_q, i.e. the element lies in F_q[t].
    pub fn is_in_fq_t(&self) -> bool {
        self.coeffs.iter().all(|c| c.deg_i64() <= 0)
    }

    /// The F_q[t] polynomial, if this lies in F_q[t].
    pub fn to_t_poly(&self) -> Option<Poly> {
        self.is_in_fq_t().then(|| {
            Poly::new(
                &self.field,
                Var::T,
                self.coeffs.iter().map(|c| c.coeff(0)).collect(),
            )
        })
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new(
            &self.field,
            (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect(),
        )
    }
    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(Poly::neg).collect())
    }
    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![Poly::zero(&self.field, Var::Theta); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        BiPoly::new(&self.field, out)
    }

    /// Multiplies every coefficient by a θ-polynomial.
    pub fn scale_theta(&self, c: &Poly) -> BiPoly {
        let c = c.with_var(Var::Theta);
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(&c)).collect())
    }

    pub fn scale(&self, c: u32) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn pow(&self, mut k: u64) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one(&self.field);
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

    /// Twist on θ-coefficients: c(θ) ↦ c(θ)^{q^n} = c(θ^{q^n}); t is untouched.
    pub fn frobenius_twist(&self, n: u32) -> BiPoly {
        BiPoly::new(
            &self.field,
            self.coeffs.iter().map(|c| c.frobenius_twist(n)).collect(),
        )
    }

    /// Exact substitution t ← θ^{q^n}.
    pub fn eval_at_theta_power(&self, n: u32) -> Poly {
        let f = &self.field;
        let step = qpow(f.q(), n);
        let mut out: Vec<u32> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let off = k * step;
            if c.is_zero() {
                continue;
            }
            if out.len() < off + c.coeffs().len() {
                out.resize(off + c.coeffs().len(), 0);
            }
            for (i, &a) in c.coeffs().iter().enumerate() {
                out[off + i] = f.add(out[off + i], a);
            }
        }
        Poly::new(f, Var::Theta, out)
    }

    /// Substitution t ← θ^{q^m} applied after the twist θ ↦ θ^{q^l}:
    /// Σ_k c_k(θ^{q^l}) θ^{k q^m}.
    pub fn twisted_value(&self, l: u32, m: u32) -> Poly {
        self.frobenius_twist(l).eval_at_theta_power(m)
    }

    /// Swaps the roles: returns Σ_i d_i(t) θ^i as a list of F_q[t]
    /// polynomials d_i indexed by θ-degree.
    pub fn theta_slices(&self) -> Vec<Poly> {
        let f = &self.field;
        let deg = self.theta_degree().map_or(0, |d| d + 1);
        (0..deg)
            .map(|i| {
                Poly::new(
                    f,
                    Var::T,
                    self.coeffs.iter().map(|c| c.coeff(i)).collect(),
                )
            })
            .collect()
    }

    /// Inverse of `theta_slices`.
    pub fn from_theta_slices(field: &Field, slices: &[Poly]) -> BiPoly {
        let tdeg = slices.iter().map(|s| s.coeffs().len()).max().unwrap_or(0);
        BiPoly::new(
            field,
            (0..tdeg)
                .map(|k| {
                    Poly::new(
                        field,
                        Var::Theta,
                        slices.iter().map(|s| s.coeff(k)).collect(),
                    )
                })
                .collect(),
        )
    }

    /// Monic gcd over F_q[t] of all θ-slices (the t-content).
    pub fn t_content(&self) -> Poly {
        self.theta_slices()
            .iter()
            .fold(Poly::zero(&self.field, Var::T), |g, s| g.gcd(s))
    }

    /// Exact division by a nonzero polynomial in F_q[t].
    pub fn div_exact_t(&self, d: &Poly) -> Result<BiPoly> {
        if d.var() != Var::T {
            return Err(Error::Internal("divisor must be a polynomial in t".into()));
        }
        let slices = self
            .theta_slices()
            .iter()
            .map(|s| s.div_exact(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::from_theta_slices(&self.field, &slices))
    }

    /// Multiplies by a polynomial in F_q[t].
    pub fn mul_t(&self, d: &Poly) -> BiPoly {
        self.mul(&BiPoly::from_t(d))
    }

    /// Substitutes θ ← t, giving a polynomial in F_q[t].
    pub fn theta_to_t(&self) -> Poly {
        let f = &self.field;
        let mut out = Poly::zero(f, Var::T);
        for (k, c) in self.coeffs.iter().enumerate() {
            out = out.add(&c.with_var(Var::T).shift(k));
        }
        out
    }

    /// Hasse derivative in t of order m.
    pub fn hasse_t(&self, m: usize) -> BiPoly {
        let f = &self.field;
        BiPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(m)
                .map(|(k, c)| c.scale(binomial_mod_p(k as u64, m as u64, f.p())))
                .collect(),
        )
    }
}

/// C(n, k) mod p by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        // small binomial C(a, b) with a < p
        let mut c = 1u64;
        for i in 0..b {
            c = c * ((a - i) % p) % p;
            c = c * modinv(i + 1, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc as u32
}

fn modinv(a: u64, p: u64) -> u64 {
    // p is prime; Fermat
    let (mut base, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn twist_examples() {
        let f = fq(2);
        let x = BiPoly::t(&f).add(&BiPoly::theta(&f));
        let want = BiPoly::t(&f).add(&BiPoly::from_theta(&Poly::monomial(&f, Var::Theta, 1, 2)));
        assert_eq!(x.frobenius_twist(1), want);
        assert_eq!(x.frobenius_twist(0), x);

        let f = fq(3);
        let a = BiPoly::from_theta(&Poly::new(&f, Var::Theta, vec![1, 1])).mul(&BiPoly::t(&f));
        let b = BiPoly::from_theta(&Poly::new(&f, Var::Theta, vec![1, 0, 0, 1])).mul(&BiPoly::t(&f));
        assert_eq!(a.frobenius_twist(1), b);
    }

    #[test]
    fn substitution_examples() {
        let f = fq(5);
        let x = BiPoly::t(&f).sub(&BiPoly::theta(&f));
        assert!(x.eval_at_theta_power(0).is_zero());
        let f2 = fq(2);
        assert_eq!(
            BiPoly::t(&f2).eval_at_theta_power(1),
            Poly::monomial(&f2, Var::Theta, 1, 2)
        );
        // t^2 + θt at t = θ gives 2θ^2
        let y = BiPoly::t(&f).pow(2).add(&BiPoly::theta(&f).mul(&BiPoly::t(&f)));
        assert_eq!(y.eval_at_theta_power(0), Poly::monomial(&f, Var::Theta, 2, 2));
    }

    #[test]
    fn slices_roundtrip_and_content() {
        let f = fq(3);
        let t1 = BiPoly::from_t(&Poly::new(&f, Var::T, vec![1, 1]));
        let x = BiPoly::theta(&f).add(&BiPoly::t(&f).pow(2)).mul(&t1);
        assert_eq!(BiPoly::from_theta_slices(&f, &x.theta_slices()), x);
        assert_eq!(x.t_content(), Poly::new(&f, Var::T, vec![1, 1]));
        let back = x.div_exact_t(&Poly::new(&f, Var::T, vec![1, 1])).unwrap();
        assert_eq!(back.mul(&t1), x);
    }

    #[test]
    fn lucas_binomials() {
        for p in [2u32, 3, 5, 7] {
            for n in 0..40u64 {
                let mut row = vec![1u64];
                for _ in 0..n {
                    let mut next = vec![1u64];
                    for w in row.windows(2) {
                        next.push((w[0] + w[1]) % p as u64);
                    }
                    next.push(1);
                    row = next;
                }
                for k in 0..=n {
                    assert_eq!(binomial_mod_p(n, k, p) as u64, row[k as usize] % p as u64);
                }
            }
        }
    }
}

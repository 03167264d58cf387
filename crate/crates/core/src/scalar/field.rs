//! The finite field F_q, q = p^e ≤ 2^16.
//!
//! Elements are `u32` values in `0..q`. For e > 1 the value encodes the
//! coefficient vector of a residue modulo a fixed primitive polynomial f,
//! little-endian in base p. Multiplication goes through exp/log tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u32 = 1 << 16;

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic primitive polynomial over F_p, low degree first, length e + 1.
    /// For e = 1 this is x − g for the primitive root g.
    modulus: Vec<u32>,
    /// exp[k] = g^k for k in 0..2(q−1).
    exp: Vec<u32>,
    /// log[a] for a ≠ 0; log[0] unused.
    log: Vec<u32>,
}

/// A handle on F_q. Cloning is cheap; equality compares (p, e, modulus).
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^e, or None if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1 && is_prime(p)).then_some((p, e))
}

impl Field {
    /// F_q for a prime power q ≤ 2^16.
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::Domain(format!("field size {q} is not a prime power")))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::Domain(format!("field size {q} exceeds 2^16")));
        }
        Ok(Field(Arc::new(if e == 1 {
            prime_tables(p)
        } else {
            extension_tables(p, e)
        })))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.e
    }
    /// Defining polynomial over F_p, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// The generator of F_q^× used for the tables.
    pub fn generator(&self) -> u32 {
        self.0.exp[1]
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Human readable description of the model of F_q.
    pub fn describe(&self) -> String {
        let t = &self.0;
        if t.e == 1 {
            format!("F_{} (prime field, generator {})", t.q, self.generator())
        } else {
            let terms: Vec<String> = t
                .modulus
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match (i, c) {
                    (0, c) => format!("{c}"),
                    (1, 1) => "x".to_string(),
                    (1, c) => format!("{c}x"),
                    (i, 1) => format!("x^{i}"),
                    (i, c) => format!("{c}x^{i}"),
                })
                .collect();
            format!("F_{} = F_{}[x]/({})", t.q, t.p, terms.join(" + "))
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &*self.0;
        if t.e == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if t.p == 2 {
            a ^ b
        } else {
            digitwise(t.p, t.e, a, b, |x, y| (x + y) % t.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let t = &*self.0;
        if a == 0 || t.p == 2 {
            a
        } else if t.e == 1 {
            t.p - a
        } else {
            digitwise(t.p, t.e, a, 0, |x, _| (t.p - x) % t.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        if t.e == 1 {
            ((a as u64 * b as u64) % t.p as u64) as u32
        } else {
            t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.0;
        let l = t.log[a as usize];
        Ok(if l == 0 { 1 } else { t.exp[(t.q - 1 - l) as usize] })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.0;
        let l = (t.log[a as usize] as u64 * (k % (t.q as u64 - 1))) % (t.q as u64 - 1);
        t.exp[l as usize]
    }

    /// The image of the integer n under Z → F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Whether a is a valid element encoding.
    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Domain(format!("{a} is not an element of F_{}", self.0.q)))
        }
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }
}

fn digitwise(p: u32, e: u32, mut a: u32, mut b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..e {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn prime_tables(p: u32) -> Tables {
    let q = p;
    let order = q - 1;
    // smallest primitive root
    let g = (1..p)
        .find(|&g| {
            let mut x = 1u64;
            for k in 1..=order {
                x = x * g as u64 % p as u64;
                if x == 1 {
                    return k == order;
                }
            }
            false
        })
        .expect("every prime field has a primitive root");
    let exp_len = 2 * order as usize;
    let mut exp = vec![0u32; exp_len];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for k in 0..order as usize {
        exp[k] = x;
        exp[k + order as usize] = x;
        log[x as usize] = k as u32;
        x = ((x as u64 * g as u64) % p as u64) as u32;
    }
    Tables {
        p,
        e: 1,
        q,
        modulus: vec![(p - g) % p, 1],
        exp,
        log,
    }
}

/// Multiplies the residue `x` (digits base p) by the class of X modulo `f`.
fn times_x(x: u32, f: &[u32], p: u32, e: u32) -> u32 {
    let mut digits: Vec<u32> = (0..e).map(|i| (x / p.pow(i)) % p).collect();
    let top = digits[e as usize - 1];
    for i in (1..e as usize).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    // X^e ≡ −(f_0 + … + f_{e−1} X^{e−1})
    for i in 0..e as usize {
        digits[i] = (digits[i] + (p - f[i] % p) * top) % p;
    }
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn extension_tables(p: u32, e: u32) -> Tables {
    let q = p.pow(e);
    let order = q - 1;
    // Candidates: monic f = X^e + (lower digits of k), k = 1.. in order.
    // f is primitive iff X has multiplicative order q − 1 modulo f, which also
    // forces the quotient ring to be a field.
    for k in 1..q {
        let mut f: Vec<u32> = (0..e).map(|i| (k / p.pow(i)) % p).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut x = 1u32;
        let mut ok = true;
        for step in 0..order {
            if step > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = times_x(x, &f, p, e);
        }
        if !ok || x != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        exp.extend_from_within(..);
        return Tables {
            p,
            e,
            q,
            modulus: f,
            exp,
            log,
        };
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIZES: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 25];

    #[test]
    fn inverses_and_tables_are_consistent() {
        for q in SIZES {
            let f = Field::new(q).unwrap();
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
            assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 8, 9] {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    for c in 0..q {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_field() {
        for q in SIZES {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.pow(a, q as u64), a);
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(1 << 17).is_err());
        assert!(Field::new(65521).is_ok());
    }

    #[test]
    fn extension_modulus_recorded() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert!(f.describe().contains("x^2"));
    }
}

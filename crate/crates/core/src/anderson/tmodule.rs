//! The n-th tensor power of the Carlitz module on k-rational points:
//! [t]_n v = (θv_1 + v_2, …, θv_{n−1} + v_n, θv_n + v_1^q).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Poly, RatFunc, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModulePoint {
    coords: Vec<RatFunc>,
}

impl TModulePoint {
    pub fn new(coords: Vec<RatFunc>) -> Result<TModulePoint> {
        if coords.is_empty() {
            return Err(Error::Domain("points need dimension n ≥ 1".into()));
        }
        Ok(TModulePoint { coords })
    }
    pub fn zero(field: &Field, n: usize) -> Result<TModulePoint> {
        TModulePoint::new(vec![RatFunc::zero(field); n])
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for TModulePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// [t]_n v.
pub fn carlitz_tensor_t_action(n: usize, v: &TModulePoint) -> Result<TModulePoint> {
    if v.dim() != n {
        return Err(Error::ShapeMismatch(format!(
            "point of dimension {} for the tensor power {n}",
            v.dim()
        )));
    }
    let c = &v.coords;
    let field = c[0].field();
    let theta = RatFunc::theta(field);
    let q = field.q() as i64;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let next = if i + 1 < n {
            c[i + 1].clone()
        } else {
            c[0].pow(q).expect("positive power")
        };
        out.push(theta.mul(&c[i]).add(&next));
    }
    TModulePoint::new(out)
}

/// A minimal-degree a ∈ F_q[t] with deg a ≤ `dmax` and [a]v = 0, made monic.
///
/// [·] is F_q-linear, so this is the first linear dependency among
/// v, [t]v, …, [t^{dmax}]v over F_q. The zero point returns a = 1.
pub fn torsion_search(n: usize, v: &TModulePoint, dmax: usize) -> Result<Option<Poly>> {
    let field = v.coords[0].field().clone();
    let mut orbit = vec![v.clone()];
    for _ in 0..dmax {
        let next = carlitz_tensor_t_action(n, orbit.last().expect("nonempty"))?;
        orbit.push(next);
    }
    // clear denominators with one common multiple, then flatten to F_q-vectors
    let den = orbit
        .iter()
        .flat_map(|p| p.coords.iter())
        .fold(Poly::one(&field, Var::Theta), |acc, c| {
            let g = acc.gcd(c.den());
            acc.mul(&c.den().div_exact(&g).expect("gcd divides"))
        });
    let vectors: Vec<Vec<Vec<u32>>> = orbit
        .iter()
        .map(|p| {
            p.coords
                .iter()
                .map(|c| {
                    let scaled = c.num().mul(&den.div_exact(c.den()).expect("common multiple"));
                    scaled.coeffs().to_vec()
                })
                .collect()
        })
        .collect();
    let width: Vec<usize> = (0..n)
        .map(|i| vectors.iter().map(|v| v[i].len()).max().unwrap_or(0))
        .collect();
    let flat: Vec<Vec<u32>> = vectors
        .iter()
        .map(|v| {
            let mut row = Vec::new();
            for (i, c) in v.iter().enumerate() {
                row.extend_from_slice(c);
                row.resize(row.len() + width[i] - c.len(), 0);
            }
            row
        })
        .collect();
    Ok(first_dependency(&field, &flat).map(|c| Poly::new(&field, Var::T, c).make_monic()))
}

/// Coefficients of the first F_q-linear dependency c_0 x_0 + … + c_j x_j = 0
/// with c_j ≠ 0, by incremental elimination.
fn first_dependency(field: &Field, xs: &[Vec<u32>]) -> Option<Vec<u32>> {
    let width = xs.first().map_or(0, |x| x.len());
    // reduced rows: (vector, combination of inputs producing it, pivot)
    let mut basis: Vec<(Vec<u32>, Vec<u32>, usize)> = Vec::new();
    for (j, x) in xs.iter().enumerate() {
        let mut vec = x.clone();
        let mut comb = vec![0u32; xs.len()];
        comb[j] = 1;
        for (bv, bc, piv) in &basis {
            let c = vec[*piv];
            if c == 0 {
                continue;
            }
            for k in 0..width {
                vec[k] = field.sub(vec[k], field.mul(c, bv[k]));
            }
            for k in 0..comb.len() {
                comb[k] = field.sub(comb[k], field.mul(c, bc[k]));
            }
        }
        match vec.iter().position(|&c| c != 0) {
            None => {
                comb.truncate(j + 1);
                return Some(comb);
            }
            Some(piv) => {
                let inv = field.inv(vec[piv]).expect("nonzero pivot");
                let vec: Vec<u32> = vec.iter().map(|&c| field.mul(c, inv)).collect();
                let comb: Vec<u32> = comb.iter().map(|&c| field.mul(c, inv)).collect();
                basis.push((vec, comb, piv));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_is_t_torsion_in_char_two() {
        let f = Field::new(2).unwrap();
        let v = TModulePoint::new(vec![RatFunc::theta(&f)]).unwrap();
        assert!(carlitz_tensor_t_action(1, &v).unwrap().is_zero());
        assert_eq!(torsion_search(1, &v, 3).unwrap(), Some(Poly::x(&f, Var::T)));
    }

    #[test]
    fn tensor_square_examples() {
        let f = Field::new(3).unwrap();
        let z = TModulePoint::zero(&f, 2).unwrap();
        assert_eq!(carlitz_tensor_t_action(2, &z).unwrap(), z);
        let v = TModulePoint::new(vec![RatFunc::one(&f), RatFunc::zero(&f)]).unwrap();
        let w = carlitz_tensor_t_action(2, &v).unwrap();
        assert_eq!(w.coords(), &[RatFunc::theta(&f), RatFunc::one(&f)]);
        assert!(carlitz_tensor_t_action(3, &v).is_err());
    }

    #[test]
    fn zero_point_convention_and_free_point() {
        let f = Field::new(3).unwrap();
        let z = TModulePoint::zero(&f, 1).unwrap();
        assert_eq!(torsion_search(1, &z, 2).unwrap(), Some(Poly::one(&f, Var::T)));
        let one = TModulePoint::new(vec![RatFunc::one(&f)]).unwrap();
        assert_eq!(torsion_search(1, &one, 4).unwrap(), None);
    }
}

//! Indices (compositions of a weight) and sign vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_ratfunc, Field};

/// (s_1, …, s_r) with every s_j ≥ 1 and r ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Index> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("an index needs at least one entry".into()));
        }
        if let Some(j) = entries.iter().position(|&s| s == 0) {
            return Err(Error::InvalidIndex(format!(
                "entry {} of {entries:?} is not positive",
                j + 1
            )));
        }
        Ok(Index(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
    pub fn depth(&self) -> usize {
        self.0.len()
    }
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn last(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;
    /// Accepts "2,1", "(2,1)" or "2 1".
    fn from_str(s: &str) -> Result<Index> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidIndex(format!("'{t}' is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(entries)
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Index> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(i: Index) -> Vec<u32> {
        i.0
    }
}

/// (ε_1, …, ε_r) with every ε_j ∈ F_q^×.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<u32>);

impl SignVector {
    pub fn new(field: &Field, entries: Vec<u32>) -> Result<SignVector> {
        for (j, &e) in entries.iter().enumerate() {
            if e == 0 || !field.contains(e) {
                return Err(Error::Domain(format!(
                    "sign {} ({e}) is not a unit of F_{}",
                    j + 1,
                    field.q()
                )));
            }
        }
        Ok(SignVector(entries))
    }

    /// All-ones signs of length r.
    pub fn trivial(r: usize) -> SignVector {
        SignVector(vec![1; r])
    }

    /// Parses "e1,e2,…" where each entry is a constant expression ("-1", "2").
    pub fn parse(field: &Field, s: &str) -> Result<SignVector> {
        let entries = s
            .split(',')
            .map(|t| {
                let r = parse_ratfunc(field, t.trim())?;
                match (r.is_polynomial(), r.num().deg_i64()) {
                    (true, 0) => Ok(r.num().coeff(0)),
                    _ => Err(Error::Parse(format!("sign '{t}' is not a nonzero constant"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SignVector::new(field, entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 1)
    }
    /// ∏ ε_j.
    pub fn product(&self, field: &Field) -> u32 {
        self.0.iter().fold(1, |acc, &e| field.mul(acc, e))
    }
    pub(crate) fn check_len(&self, r: usize) -> Result<()> {
        if self.0.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "{} signs for an index of depth {r}",
                self.0.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_invariants() {
        let s: Index = "1,2,2,1".parse().unwrap();
        assert_eq!(s.weight(), 6);
        assert_eq!(s.depth(), 4);
        assert_eq!(s.to_string(), "(1,2,2,1)");
        assert_eq!("(3)".parse::<Index>().unwrap().entries(), &[3]);
        assert!("".parse::<Index>().is_err());
        assert!("1,0".parse::<Index>().is_err());
        assert!("1,x".parse::<Index>().is_err());
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[1,2,2,1]");
        assert!(serde_json::from_str::<Index>("[0]").is_err());
    }

    #[test]
    fn signs() {
        let f = Field::new(3).unwrap();
        let e = SignVector::parse(&f, "-1,1").unwrap();
        assert_eq!(e.entries(), &[2, 1]);
        assert_eq!(e.product(&f), 2);
        assert!(SignVector::parse(&f, "0").is_err());
        assert!(SignVector::parse(&f, "theta").is_err());
        assert!(SignVector::trivial(3).is_trivial());
    }
}

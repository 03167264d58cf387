//! The map g, g-independence, q-admissible partitions and the dimension
//! lower bounds they produce.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Index;

/// g(𝔰): either {0} (depth one) or a nonempty subset of {1, …, w−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GImage(BTreeSet<u32>);

impl GImage {
    /// Checks the J(w) shape.
    pub fn new(elems: BTreeSet<u32>, w: u32) -> Result<GImage> {
        if elems.is_empty() {
            return Err(Error::Domain("a g-image is never empty".into()));
        }
        if elems.contains(&0) {
            if elems.len() > 1 {
                return Err(Error::Domain(format!(
                    "{elems:?}: 0 only occurs as the singleton {{0}}"
                )));
            }
        } else if let Some(&x) = elems.iter().find(|&&x| x >= w) {
            return Err(Error::Domain(format!("{x} lies outside {{1..{}}}", w.saturating_sub(1))));
        }
        Ok(GImage(elems))
    }
    pub fn elements(&self) -> &BTreeSet<u32> {
        &self.0
    }
    pub fn is_depth_one(&self) -> bool {
        self.0.contains(&0)
    }
    pub fn is_disjoint(&self, o: &GImage) -> bool {
        self.0.is_disjoint(&o.0)
    }
}

impl fmt::Display for GImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// (s_1, …, s_r) ↦ {w−s_1, w−s_1−s_2, …, s_r}, and (w) ↦ {0}.
pub fn g_map(s: &Index) -> GImage {
    let e = s.entries();
    if e.len() == 1 {
        return GImage(BTreeSet::from([0]));
    }
    let mut rest = s.weight();
    let mut out = BTreeSet::new();
    for &x in &e[..e.len() - 1] {
        rest -= x;
        out.insert(rest);
    }
    GImage(out)
}

/// {x_1 > … > x_{r−1}} ↦ (w−x_1, x_1−x_2, …, x_{r−1}), and {0} ↦ (w).
pub fn g_inverse(t: &GImage, w: u32) -> Result<Index> {
    if w == 0 {
        return Err(Error::InvalidIndex("weight must be positive".into()));
    }
    let t = GImage::new(t.0.clone(), w)?;
    if t.is_depth_one() {
        return Index::new(vec![w]);
    }
    let mut entries = Vec::with_capacity(t.0.len() + 1);
    let mut prev = w;
    for &x in t.0.iter().rev() {
        entries.push(prev - x);
        prev = x;
    }
    entries.push(prev);
    Index::new(entries)
}

/// Pairwise-disjoint g-images. A repeated index is never independent of itself.
pub fn is_g_independent(family: &[Index]) -> bool {
    let images: Vec<GImage> = family.iter().map(g_map).collect();
    images
        .iter()
        .enumerate()
        .all(|(i, a)| images[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

/// All compositions of w, in lexicographic order.
pub fn compositions(w: u32) -> Vec<Index> {
    fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if rest == 0 {
            out.push(Index::new(cur.clone()).expect("positive entries"));
            return;
        }
        for s in 1..=rest {
            cur.push(s);
            rec(rest - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if w > 0 {
        rec(w, &mut Vec::new(), &mut out);
    }
    out
}

/// A set partition of {1, …, w−1}. Blocks are sorted and ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<Vec<u32>>);

impl Partition {
    pub fn new(blocks: Vec<Vec<u32>>, w: u32) -> Result<Partition> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::Domain("partition blocks must be nonempty".into()));
        }
        blocks.sort();
        let mut seen = BTreeSet::new();
        for &x in blocks.iter().flatten() {
            if x == 0 || x >= w || !seen.insert(x) {
                return Err(Error::Domain(format!(
                    "{x} is repeated or outside {{1..{}}}",
                    w.saturating_sub(1)
                )));
            }
        }
        if seen.len() as u32 != w.saturating_sub(1) {
            return Err(Error::Domain(format!("blocks do not cover {{1..{}}}", w - 1)));
        }
        Ok(Partition(blocks))
    }
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.0
    }
    /// Every block minimum is prime to q−1 in the divisibility sense.
    pub fn is_q_admissible(&self, q: u32) -> bool {
        self.0.iter().all(|b| b[0] % (q - 1) != 0)
    }
    /// {(w)} ∪ {g^{−1}(P_i)}.
    pub fn family(&self, w: u32) -> Result<Vec<Index>> {
        let mut out = vec![Index::new(vec![w])?];
        for b in &self.0 {
            out.push(g_inverse(&GImage(b.iter().copied().collect()), w)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Lazy enumeration of the q-admissible partitions of {1, …, w−1}.
///
/// Restricted growth strings a_1 … a_{w−1} in lexicographic order, where an
/// element may open a new block only if it is not divisible by q−1 (it is
/// then that block's minimum).
pub struct AdmissiblePartitions {
    q: u32,
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn q_admissible_partitions(w: u32, q: u32) -> AdmissiblePartitions {
    let n = w.saturating_sub(1) as usize;
    AdmissiblePartitions {
        q,
        rgs: vec![0; n],
        started: false,
        // element 1 always opens the first block
        done: n == 0 || q < 2 || 1 % (q - 1) == 0,
    }
}

impl AdmissiblePartitions {
    fn may_open(&self, pos: usize) -> bool {
        !(pos as u32 + 1).is_multiple_of(self.q - 1)
    }
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            let m = self.rgs[..i].iter().copied().max().expect("i ≥ 1");
            let next = self.rgs[i] + 1;
            if next <= m || (next == m + 1 && self.may_open(i)) {
                self.rgs[i] = next;
                self.rgs[i + 1..].iter_mut().for_each(|a| *a = 0);
                return true;
            }
        }
        false
    }
    fn current(&self) -> Partition {
        let nblocks = self.rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &a) in self.rgs.iter().enumerate() {
            blocks[a].push(i as u32 + 1);
        }
        Partition(blocks)
    }
}

impl Iterator for AdmissiblePartitions {
    type Item = Partition;
    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// {1 ≤ n ≤ w−1 : (q−1) ∤ n}.
pub fn admissible_support(w: u32, q: u32) -> Vec<u32> {
    (1..w).filter(|n| n % (q - 1) != 0).collect()
}

/// {(w)} together with g^{−1} of ⌊|𝒮|/(r−1)⌋ disjoint (r−1)-subsets of 𝒮,
/// chunked largest elements first.
pub fn independent_family(w: u32, r: u32, q: u32) -> Result<Vec<Index>> {
    check_family_args(w, r, q)?;
    let mut support = admissible_support(w, q);
    support.reverse();
    let mut out = vec![Index::new(vec![w])?];
    for chunk in support.chunks_exact(r as usize - 1) {
        out.push(g_inverse(&GImage(chunk.iter().copied().collect()), w)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimBound {
    pub bound_1r: u64,
    pub bound_r: u64,
}

/// 1 + ⌊(w−1−⌊(w−1)/(q−1)⌋)/(r−1)⌋ and that value minus one.
pub fn dim_lower_bound(w: u32, r: u32, q: u32) -> Result<DimBound> {
    check_family_args(w, r, q)?;
    let (w, r, q) = (w as u64, r as u64, q as u64);
    let support = w - 1 - (w - 1) / (q - 1);
    let bound_1r = 1 + support / (r - 1);
    Ok(DimBound { bound_1r, bound_r: bound_1r - 1 })
}

fn check_family_args(w: u32, r: u32, q: u32) -> Result<()> {
    if w == 0 {
        return Err(Error::Domain("weight must be positive".into()));
    }
    if r < 2 {
        return Err(Error::Domain(format!("depth r = {r} must be at least 2")));
    }
    if q < 2 {
        return Err(Error::Domain(format!("q = {q} is not a field size")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[u32]) -> Index {
        Index::new(v.to_vec()).unwrap()
    }
    fn img(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn g_map_examples() {
        assert_eq!(g_map(&idx(&[6])).elements(), &img(&[0]));
        assert_eq!(g_map(&idx(&[1, 2, 2, 1])).elements(), &img(&[1, 3, 5]));
        assert_eq!(g_map(&idx(&[2, 2, 2])).elements(), &img(&[2, 4]));
        let t = GImage::new(img(&[1, 3, 5]), 6).unwrap();
        assert_eq!(g_inverse(&t, 6).unwrap(), idx(&[1, 2, 2, 1]));
        let z = GImage::new(img(&[0]), 7).unwrap();
        assert_eq!(g_inverse(&z, 7).unwrap(), idx(&[7]));
    }

    #[test]
    fn bad_images_rejected() {
        assert!(GImage::new(img(&[]), 4).is_err());
        assert!(GImage::new(img(&[0, 2]), 4).is_err());
        assert!(GImage::new(img(&[4]), 4).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(is_g_independent(&[idx(&[5])]));
        assert!(is_g_independent(&[idx(&[2, 1]), idx(&[1, 2])]));
        assert!(!is_g_independent(&[idx(&[2, 1]), idx(&[2, 1])]));
        assert!(!is_g_independent(&[idx(&[1, 3]), idx(&[1, 2, 1])]));
    }

    #[test]
    fn partition_examples() {
        let p33: Vec<Partition> = q_admissible_partitions(3, 3).collect();
        assert_eq!(p33, vec![Partition::new(vec![vec![1, 2]], 3).unwrap()]);
        let p2: Vec<Partition> = q_admissible_partitions(2, 5).collect();
        assert_eq!(p2, vec![Partition::new(vec![vec![1]], 2).unwrap()]);
        assert_eq!(q_admissible_partitions(1, 3).count(), 0);
        assert_eq!(q_admissible_partitions(5, 2).count(), 0);
        let target = Partition::new(vec![vec![2, 4], vec![1, 3, 5]], 6).unwrap();
        assert!(q_admissible_partitions(6, 5).any(|p| p == target));
        assert_eq!(
            target.family(6).unwrap(),
            vec![idx(&[6]), idx(&[1, 2, 2, 1]), idx(&[2, 2, 2])]
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![vec![1], vec![1, 2]], 3).is_err());
        assert!(Partition::new(vec![vec![1]], 3).is_err());
        assert!(Partition::new(vec![vec![], vec![1, 2]], 3).is_err());
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            independent_family(5, 2, 3).unwrap(),
            vec![idx(&[5]), idx(&[2, 3]), idx(&[4, 1])]
        );
        assert_eq!(independent_family(5, 4, 3).unwrap(), vec![idx(&[5])]);
        assert_eq!(independent_family(1, 2, 3).unwrap(), vec![idx(&[1])]);
        assert!(independent_family(5, 1, 3).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(dim_lower_bound(10, 3, 3).unwrap(), DimBound { bound_1r: 3, bound_r: 2 });
        assert_eq!(dim_lower_bound(9, 3, 2).unwrap().bound_1r, 1);
        let j = serde_json::to_string(&dim_lower_bound(10, 3, 3).unwrap()).unwrap();
        assert_eq!(j, r#"{"bound_1r":3,"bound_r":2}"#);
    }

    #[test]
    fn json_shapes() {
        let g = g_map(&idx(&[1, 2, 2, 1]));
        assert_eq!(serde_json::to_string(&g).unwrap(), "[1,3,5]");
        let p = Partition::new(vec![vec![2, 4], vec![1, 3, 5]], 6).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,3,5],[2,4]]");
        assert_eq!(serde_json::to_string(&idx(&[2, 1])).unwrap(), "[2,1]");
    }
}

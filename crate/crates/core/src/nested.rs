//! Truncated nested sums Σ_{i_1 > … > i_r ≥ base} ∏_j term_j(i_j).
//!
//! Every layer supplies a valuation lower bound lb_j(i) that is strictly
//! increasing in i and a term evaluator that honours a requested precision.
//! A tuple is skipped once Σ lb_j exceeds the target precision, and each
//! factor is computed only as precisely as the bounds of the other factors
//! require, so every product lands at precision ≥ target.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub(crate) trait Summand: Clone + Send {
    fn times(&self, o: &Self) -> Self;
    fn plus(&self, o: &Self) -> Result<Self>;
}

type LbFn<'a> = dyn Fn(u32) -> i64 + Sync + 'a;
type TermFn<'a, T> = dyn Fn(u32, i64) -> Result<T> + Sync + 'a;

pub(crate) struct Layer<'a, T> {
    pub lb: Box<LbFn<'a>>,
    pub term: Box<TermFn<'a, T>>,
}

/// Heights beyond this are never reached by convergent inputs at sane precision.
const MAX_HEIGHT: u32 = 4096;

/// Sum of all terms whose lower bound is ≤ prec; None when no term qualifies.
pub(crate) fn nested_sum<T: Summand>(
    layers: &[Layer<'_, T>],
    base: u32,
    prec: i64,
) -> Result<Option<T>> {
    let r = layers.len();
    assert!(r > 0, "empty nested sum");
    // rest[j] = smallest possible Σ_{k ≥ j} lb_k, attained by the staircase
    // i_k = base + (r − 1 − k).
    let mut rest = vec![0i64; r + 1];
    for k in (0..r).rev() {
        rest[k] = rest[k + 1] + (layers[k].lb)(base + (r - 1 - k) as u32);
    }
    let mut outer = Vec::new();
    let mut i = base + (r - 1) as u32;
    while (layers[0].lb)(i) + rest[1] <= prec {
        outer.push(i);
        i += 1;
        if i > MAX_HEIGHT {
            return Err(Error::Resolution(
                "nested sum does not terminate; lower bounds are not increasing".into(),
            ));
        }
    }
    let partial: Vec<Option<T>> = outer
        .par_iter()
        .map(|&i0| {
            let lb0 = (layers[0].lb)(i0);
            let t = (layers[0].term)(i0, prec - rest[1])?;
            if r == 1 {
                return Ok(Some(t));
            }
            inner(layers, 1, base, i0, t, lb0, &rest, prec)
        })
        .collect::<Result<_>>()?;
    let mut acc: Option<T> = None;
    for p in partial.into_iter().flatten() {
        acc = Some(match acc {
            None => p,
            Some(a) => a.plus(&p)?,
        });
    }
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn inner<T: Summand>(
    layers: &[Layer<'_, T>],
    j: usize,
    base: u32,
    upper: u32,
    prefix: T,
    prefix_lb: i64,
    rest: &[i64],
    prec: i64,
) -> Result<Option<T>> {
    let r = layers.len();
    let mut acc: Option<T> = None;
    // layer j ranges over base + (r − 1 − j) ≤ i < upper
    for i in base + (r - 1 - j) as u32..upper {
        let lb = (layers[j].lb)(i);
        if prefix_lb + lb + rest[j + 1] > prec {
            break;
        }
        let t = (layers[j].term)(i, prec - prefix_lb - rest[j + 1])?;
        let prod = prefix.times(&t);
        let part = if j + 1 == r {
            Some(prod)
        } else {
            inner(layers, j + 1, base, i, prod, prefix_lb + lb, rest, prec)?
        };
        if let Some(p) = part {
            acc = Some(match acc {
                None => p,
                Some(a) => a.plus(&p)?,
            });
        }
    }
    Ok(acc)
}

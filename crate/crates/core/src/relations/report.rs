//! Relation hunts with reverification, and independence reports for families
//! of indices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::index::Index;
use crate::indices::{g_map, is_g_independent, GImage};
use crate::laurent::LaurentApprox;

use super::{find_relations, verify_relation, Evaluator, Label, RelationCertificate, ValueVector, MARGIN};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntOutcome {
    pub labels: Vec<String>,
    pub q: u32,
    #[serde(rename = "D")]
    pub deg_bound: usize,
    #[serde(rename = "N")]
    pub prec: i64,
    pub margin: usize,
    /// Values as (valuation, precision) metadata, in label order.
    pub valuations: Vec<Option<i64>>,
    /// Certificates that also vanish when recomputed at the checking precision.
    pub certificates: Vec<RelationCertificate>,
    /// Candidates found at N that failed reverification.
    pub discarded: usize,
    pub checked_at: i64,
}

fn evaluate_all(ev: &Evaluator, labels: &[Label], prec: i64) -> Result<ValueVector> {
    let values: Vec<LaurentApprox> = labels
        .par_iter()
        .map(|l| ev.evaluate(l, prec))
        .collect::<Result<_>>()?;
    ValueVector::new(labels.iter().map(|l| l.text().to_string()).collect(), values)
}

fn search(
    ev: &Evaluator,
    labels: &[Label],
    d: usize,
    prec: i64,
    check_factor: i64,
) -> Result<HuntOutcome> {
    let v = evaluate_all(ev, labels, prec)?;
    let candidates = find_relations(&v, d, prec)?;
    let checked_at = check_factor * prec;
    let mut certificates = Vec::new();
    if !candidates.is_empty() {
        let hi = evaluate_all(ev, labels, checked_at)?;
        for c in &candidates {
            if verify_relation(&hi, c)? {
                certificates.push(c.clone());
            }
        }
    }
    Ok(HuntOutcome {
        labels: v.labels().to_vec(),
        q: ev.field().q(),
        deg_bound: d,
        prec,
        margin: MARGIN,
        valuations: v.values().iter().map(|x| x.valuation()).collect(),
        discarded: candidates.len() - certificates.len(),
        certificates,
        checked_at,
    })
}

/// Evaluates `labels` through N, searches for relations of degree ≤ D and
/// keeps those that reverify at 2N.
pub fn hunt(ev: &Evaluator, labels: &[Label], d: usize, prec: i64) -> Result<HuntOutcome> {
    search(ev, labels, d, prec, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No relation up to (D, N) among a g-independent family.
    Consistent,
    /// A reverified relation among a g-independent family.
    Anomaly,
    /// The family is not g-independent, so relations carry no contradiction.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub family: Vec<Index>,
    pub q: u32,
    #[serde(rename = "D")]
    pub deg_bound: usize,
    #[serde(rename = "N")]
    pub prec: i64,
    pub g_images: Vec<GImage>,
    pub g_independent: bool,
    pub margin: usize,
    pub certificates: Vec<RelationCertificate>,
    pub discarded: usize,
    pub verdict: Verdict,
    pub summary: String,
}

/// Searches for F_q[θ]-relations among Γ_{s_1}⋯Γ_{s_r}·ζ_A(s) over the family.
/// Candidates must reverify at 4N before they are reported.
pub fn independence_report(
    ev: &Evaluator,
    family: &[Index],
    d: usize,
    prec: i64,
) -> Result<IndependenceReport> {
    let labels: Vec<Label> = family
        .iter()
        .map(|s| {
            let e: Vec<String> = s.entries().iter().map(|x| x.to_string()).collect();
            ev.parse(&format!("gz:{}", e.join(",")))
        })
        .collect::<Result<_>>()?;
    let outcome = search(ev, &labels, d, prec, 4)?;
    let g_independent = is_g_independent(family);
    let verdict = match (g_independent, outcome.certificates.is_empty()) {
        (true, true) => Verdict::Consistent,
        (true, false) => Verdict::Anomaly,
        (false, _) => Verdict::NotApplicable,
    };
    let summary = match verdict {
        Verdict::Consistent => format!(
            "g-independent family; no F_q[θ]-linear relation with coefficient degree ≤ {d} \
             at precision {prec}, consistent with linear independence over k up to ({d}, {prec})"
        ),
        Verdict::Anomaly => format!(
            "g-independent family with {} relation(s) surviving reverification at precision {}",
            outcome.certificates.len(),
            outcome.checked_at
        ),
        Verdict::NotApplicable => format!(
            "family is not g-independent; {} reverified relation(s)",
            outcome.certificates.len()
        ),
    };
    Ok(IndependenceReport {
        family: family.to_vec(),
        q: outcome.q,
        deg_bound: d,
        prec,
        g_images: family.iter().map(g_map).collect(),
        g_independent,
        margin: MARGIN,
        certificates: outcome.certificates,
        discarded: outcome.discarded,
        verdict,
        summary,
    })
}

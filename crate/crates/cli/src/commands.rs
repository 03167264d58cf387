//! Subcommand bodies. Each returns both a JSON document and a text rendering.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use ffzeta_core::acceptance::run_all;
use ffzeta_core::anderson::AtPolynomials;
use ffzeta_core::indices::{
    dim_lower_bound, g_map, independent_family, is_g_independent, q_admissible_partitions,
};
use ffzeta_core::relations::{
    hunt, independence_report, verify_relation, Evaluator, Label, RelationCertificate,
    ValueVector,
};
use ffzeta_core::scalar::{parse_ratfunc, Field};
use ffzeta_core::store::Store;
use ffzeta_core::zeta::Zeta;
use ffzeta_core::{Error, Index, LaurentApprox, SignVector};
use serde_json::{json, Value};

use crate::cache::FileCache;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a check ran to completion but did not pass.
    pub success: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, success: true }
    }
}

type CliResult = Result<Output, CliError>;

pub struct Context {
    store: Option<Arc<dyn Store>>,
}

impl Context {
    pub fn new(cache_dir: Option<&Path>) -> Result<Context, CliError> {
        let store = match cache_dir {
            None => None,
            Some(dir) => {
                let c = FileCache::open(dir).map_err(|e| {
                    CliError::Input(format!("cache directory {}: {e}", dir.display()))
                })?;
                Some(Arc::new(c) as Arc<dyn Store>)
            }
        };
        Ok(Context { store })
    }

    fn zeta_for(&self, field: &Field) -> Zeta {
        match &self.store {
            Some(s) => Zeta::new(field).with_store(s.clone()),
            None => Zeta::new(field),
        }
    }

    fn evaluator(&self, field: &Field) -> Evaluator {
        match &self.store {
            Some(s) => Evaluator::with_store(field, s.clone()),
            None => Evaluator::new(field),
        }
    }

    /// mzv, amzv (with signs) or cmpl (with points).
    pub fn zeta(
        &self,
        q: u32,
        index: &str,
        prec: i64,
        signs: Option<&str>,
        points: Option<&str>,
    ) -> CliResult {
        let field = Field::new(q)?;
        let s: Index = index.parse()?;
        let z = self.zeta_for(&field);
        let (name, value) = match (signs, points) {
            (Some(e), _) => {
                let eps = SignVector::parse(&field, e)?;
                (format!("ζ_A({}; {e})", entries(&s)), z.amzv(&s, &eps, prec)?)
            }
            (None, Some(p)) => {
                let us = p
                    .split(',')
                    .map(|u| parse_ratfunc(&field, u))
                    .collect::<Result<Vec<_>, _>>()?;
                (format!("Li_({})({p})", entries(&s)), z.cmpl(&s, &us, prec)?)
            }
            (None, None) => (format!("ζ_A({})", entries(&s)), z.mzv(&s, prec)?),
        };
        Ok(Output::ok(value_json(&name, &value), value_text(&name, &value)))
    }

    pub fn atpoly(&self, q: u32, n: u64) -> CliResult {
        let field = Field::new(q)?;
        let mut at = AtPolynomials::new(&field);
        if let Some(s) = &self.store {
            at.set_store(s.clone());
        }
        let h = at.get(n)?;
        let json = json!({
            "q": q,
            "n": n,
            "t_degree": h.t_degree(),
            "theta_degree": h.theta_degree(),
            "table": h.to_table(),
            "pretty": h.to_string(),
        });
        Ok(Output::ok(json, format!("H_{n} = {h}\n")))
    }

    pub fn hunt(
        &self,
        q: u32,
        labels: &[String],
        d: usize,
        prec: i64,
        out: Option<&Path>,
    ) -> CliResult {
        let field = Field::new(q)?;
        let ev = self.evaluator(&field);
        let ls = labels
            .iter()
            .map(|l| Label::parse(&field, l))
            .collect::<Result<Vec<_>, _>>()?;
        let outcome = hunt(&ev, &ls, d, prec)?;
        let json = serde_json::to_value(&outcome).expect("plain data");
        if let Some(path) = out {
            write_json(path, &json)?;
        }
        let mut text = format!(
            "{} value(s) over F_{q}, D={d}, N={prec}: {} relation(s) reverified at {}, {} discarded\n",
            outcome.labels.len(),
            outcome.certificates.len(),
            outcome.checked_at,
            outcome.discarded
        );
        for c in &outcome.certificates {
            text.push_str(&format!("  {c}\n"));
        }
        Ok(Output::ok(json, text))
    }

    pub fn verify(&self, path: &Path, factor: i64) -> CliResult {
        if factor < 2 {
            return Err(CliError::Input(format!("--factor must be ≥ 2, got {factor}")));
        }
        let raw = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let doc: Value = serde_json::from_str(&raw)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let certs: Vec<RelationCertificate> = match doc.get("certificates") {
            Some(list) => serde_json::from_value(list.clone()),
            None => serde_json::from_value(doc.clone()).map(|c| vec![c]),
        }
        .map_err(|e| CliError::Input(format!("{}: not a certificate: {e}", path.display())))?;
        let mut results = Vec::new();
        let mut text = String::new();
        let mut all = true;
        for c in &certs {
            let field = Field::new(c.q)?;
            let ev = self.evaluator(&field);
            let prec = factor * c.prec;
            let values = c
                .labels
                .iter()
                .map(|l| ev.evaluate(&Label::parse(&field, l)?, prec))
                .collect::<Result<Vec<LaurentApprox>, _>>()?;
            let v = ValueVector::new(c.labels.clone(), values)?;
            let ok = verify_relation(&v, c)?;
            all &= ok;
            text.push_str(&format!(
                "{} at precision {prec}: {c}\n",
                if ok { "verified" } else { "FAILED" }
            ));
            results.push(json!({"certificate": c, "checked_at": prec, "verified": ok}));
        }
        Ok(Output {
            json: json!({"results": results, "all_verified": all}),
            text,
            success: all,
        })
    }

    pub fn report(
        &self,
        q: u32,
        family: Option<&str>,
        wr: Option<(u32, u32)>,
        d: usize,
        prec: i64,
    ) -> CliResult {
        let field = Field::new(q)?;
        let fam: Vec<Index> = match (family, wr) {
            (Some(f), _) => f
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?,
            (None, Some((w, r))) => independent_family(w, r, q)?,
            (None, None) => {
                return Err(CliError::Input("give --family or both --w and --r".into()))
            }
        };
        if fam.is_empty() {
            return Err(CliError::Input("empty family".into()));
        }
        let ev = self.evaluator(&field);
        let r = independence_report(&ev, &fam, d, prec)?;
        let mut text = String::new();
        for (s, g) in r.family.iter().zip(&r.g_images) {
            text.push_str(&format!("  {s}  g = {g}\n"));
        }
        text.push_str(&format!("{}\n", r.summary));
        for c in &r.certificates {
            text.push_str(&format!("  {c}\n"));
        }
        Ok(Output::ok(serde_json::to_value(&r).expect("plain data"), text))
    }
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(v).expect("plain data");
    fs::write(path, body + "\n")
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn entries(s: &Index) -> String {
    let e: Vec<String> = s.entries().iter().map(|x| x.to_string()).collect();
    e.join(",")
}

fn value_json(name: &str, v: &LaurentApprox) -> Value {
    json!({
        "value": name,
        "q": v.q(),
        "valuation": v.valuation(),
        "precision": v.precision(),
        "digits": v.digits(),
        "expansion": v.to_string(),
    })
}

fn value_text(name: &str, v: &LaurentApprox) -> String {
    let val = v.valuation().map_or("none (zero to precision)".to_string(), |x| x.to_string());
    format!(
        "{name} over F_{}\n  = {v}\n  valuation {val}, precision {}\n",
        v.q(),
        v.precision()
    )
}

pub fn partitions(w: u32, q: u32, limit: Option<usize>) -> CliResult {
    Field::new(q)?;
    let mut list = Vec::new();
    let mut text = String::new();
    for p in q_admissible_partitions(w, q).take(limit.unwrap_or(usize::MAX)) {
        let fam = p.family(w)?;
        let names: Vec<String> = fam.iter().map(|s| s.to_string()).collect();
        text.push_str(&format!("{p} -> {}\n", names.join(" ")));
        list.push(json!({"partition": p, "family": fam}));
    }
    text.push_str(&format!("{} partition(s)\n", list.len()));
    let json = json!({"w": w, "q": q, "count": list.len(), "partitions": list});
    Ok(Output::ok(json, text))
}

pub fn bound(q: u32, w: u32, r: u32) -> CliResult {
    let b = dim_lower_bound(w, r, q)?;
    Ok(Output::ok(
        serde_json::to_value(b).expect("plain data"),
        format!("bound_1r = {}, bound_r = {}\n", b.bound_1r, b.bound_r),
    ))
}

pub fn family(q: u32, w: u32, r: u32) -> CliResult {
    let fam = independent_family(w, r, q)?;
    let images: Vec<_> = fam.iter().map(g_map).collect();
    let mut text = String::new();
    for (s, g) in fam.iter().zip(&images) {
        text.push_str(&format!("{s}  g = {g}\n"));
    }
    let json = json!({
        "q": q,
        "w": w,
        "r": r,
        "chunking": "largest-first",
        "family": fam,
        "g_images": images,
        "g_independent": is_g_independent(&fam),
    });
    Ok(Output::ok(json, text))
}

pub fn gmap(w: Option<u32>, index: &str) -> CliResult {
    let s: Index = index.parse()?;
    if let Some(w) = w {
        if w != s.weight() {
            return Err(CliError::Input(format!("{s} has weight {}, not {w}", s.weight())));
        }
    }
    let g = g_map(&s);
    let json = json!({"index": s, "w": s.weight(), "g_image": g});
    Ok(Output::ok(json, format!("{g}\n")))
}

pub fn suite(quick: bool) -> CliResult {
    let results = run_all(quick);
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    let success = results.iter().all(|r| r.passed());
    let json = json!({
        "quick": quick,
        "criteria": results,
        "passed": success,
    });
    Ok(Output { json, text, success })
}

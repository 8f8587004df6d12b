//! Markdown tables: one row per manifold/stratum with its dimensions and
//! verdict.

use anyhow::Result;
use serde::Serialize;

use poissonlab::hopf::{self, strata, HopfRow};
use poissonlab::report::{verdict_word, ProductTables, RuledRow};

fn table(head: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", head.join(" | "));
    out += &format!("|{}\n", "---|".repeat(head.len()));
    for r in rows {
        out += &format!("| {} |\n", r.join(" | "));
    }
    out
}

pub fn ruled_md(rows: &[RuledRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![format!("F_{}", r.m), r.stratum.clone(), format!("`{}`", r.lambda0), r.dim_h2.to_string(), r.verdict.clone()])
        .collect();
    table(&["manifold", "stratum", "Poisson structure", "dim ℍ²", "verdict"], &body)
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfTableRow {
    #[serde(flatten)]
    pub row: HopfRow,
    pub verdict: String,
}

/// The cohomology rows together with the classification of each stratum.
pub fn hopf_rows(p: u32, degree: Option<u32>) -> Result<Vec<HopfTableRow>> {
    let rows = hopf::hopf_tables(p, degree)?;
    strata(p)?
        .iter()
        .zip(rows)
        .map(|(s, row)| {
            let cert = hopf::classify(&s.ty, &s.lambda0)?;
            Ok(HopfTableRow { row, verdict: verdict_word(&cert.verdict).to_string() })
        })
        .collect()
}

pub fn hopf_md(rows: &[HopfTableRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let (h0, h1, h2) = r.row.dims;
            vec![
                r.row.ty.clone(),
                r.row.stratum.clone(),
                format!("`({})*(@z^@w)`", r.row.lambda0),
                r.row.h0_theta.len().to_string(),
                r.row.h0_sq.len().to_string(),
                format!("({h0}, {h1}, {h2})"),
                r.verdict.clone(),
            ]
        })
        .collect();
    table(&["type", "stratum", "Poisson structure", "dim H⁰(Θ)", "dim H⁰(∧²Θ)", "(ℍ⁰, ℍ¹, ℍ²)", "verdict"], &body)
}

pub fn products_md(t: &ProductTables) -> String {
    let body: Vec<Vec<String>> = t
        .ep1
        .iter()
        .chain(&t.tp1)
        .map(|r| vec![r.manifold.clone(), format!("`{}`", r.stratum), r.h1.to_string(), r.h2.to_string(), r.verdict.clone()])
        .collect();
    let mut out = table(&["manifold", "Poisson structure", "dim ℍ¹", "dim ℍ²", "verdict"], &body);
    out += "\n";
    let torus: Vec<Vec<String>> = t.torus.iter().map(|r| vec![format!("T^{}", r.n), r.h1.to_string()]).collect();
    out += &table(&["complex torus", "dim ℍ¹"], &torus);
    out
}

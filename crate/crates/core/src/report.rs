//! Table sweeps and the aggregated JSON report. Every collection is built in
//! a fixed order and serialized through `serde_json`'s sorted maps, so two
//! runs produce identical bytes.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Poly;
use crate::hopf::{
    h95_degeneracy, hopf_family_by_name, hopf_tables, verify_hopf_family, DegenerateCase, HopfFamilyReport, HopfRow,
};
use crate::obstruction::{Certificate, Verdict};
use crate::products::{ep1_classify, torus_dims, torus_lambda0, tp1_classify, Classified, Tp1PoissonClass};
use crate::ruled::{table1_verdict, verify_family, RuledFamily, RuledPoisson};
use crate::{Error, Result};

pub use crate::hopf::FAMILY_NAMES as HOPF_FAMILIES;
pub const RULED_FAMILIES: [&str; 4] = ["f2", "f3", "f4", "f5"];

pub fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Obstructed => "obstructed",
        Verdict::UnobstructedH2Zero | Verdict::UnobstructedMC { .. } => "unobstructed",
        Verdict::Undetermined { .. } => "undetermined",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuledRow {
    pub m: u32,
    pub stratum: String,
    pub lambda0: String,
    pub dim_h2: usize,
    pub verdict: String,
    pub certificate: Certificate,
}

/// Representatives of each stratum on `F_m`: `e ≠ 0`, `e = 0` with `f ≠ 0`,
/// and `Λ0 = 0`.
pub fn ruled_representatives(m: u32) -> Result<Vec<(String, RuledPoisson)>> {
    let mut f = vec![0i64; m as usize + 1];
    f[0] = 1;
    f[m as usize] += 1;
    Ok(vec![
        ("e != 0".to_string(), RuledPoisson::from_coeffs(m, &[], &[1, 1], &[0, 1])?),
        ("e = 0, f != 0".to_string(), RuledPoisson::from_coeffs(m, &[], &[], &f)?),
        ("0".to_string(), RuledPoisson::from_coeffs(m, &[], &[], &[])?),
    ])
}

pub fn ruled_table(m_max: u32) -> Result<Vec<RuledRow>> {
    let jobs: Vec<(u32, String, RuledPoisson)> = (0..=m_max)
        .map(|m| Ok(ruled_representatives(m)?.into_iter().map(move |(s, p)| (m, s, p))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    // par_iter keeps the input order on collect
    jobs.par_iter()
        .map(|(m, stratum, p)| {
            let row = table1_verdict(p)?;
            if row.obstructed {
                let md = crate::ruled::model(*m, &p.coeff())?;
                row.certificate.reverify(&md)?;
            }
            Ok(RuledRow {
                m: *m,
                stratum: stratum.clone(),
                lambda0: format!("({})*(@z^@xi)", p.coeff()),
                dim_h2: row.dim_h2,
                verdict: verdict_word(&row.certificate.verdict).to_string(),
                certificate: row.certificate,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RuledFamilyRow {
    pub name: String,
    pub ok: bool,
    pub h1_dim: usize,
    pub ks_rank: usize,
    pub lambda_u2: String,
    /// what `verify_family` reports once the correction terms are deleted
    pub without_corrections: String,
}

fn raw_family(name: &str) -> Option<RuledFamily> {
    match name {
        "f2" => Some(RuledFamily::f2_raw()),
        "f3" => Some(RuledFamily::f3_raw()),
        "f4" => Some(RuledFamily::f4_raw()),
        "f5" => Some(RuledFamily::f5_raw()),
        _ => None,
    }
}

pub fn ruled_family_row(name: &str) -> Result<RuledFamilyRow> {
    let unknown = || Error::UnknownSymbol(format!("family {name}"));
    let fam = RuledFamily::by_name(name).ok_or_else(unknown)?;
    let raw = raw_family(name).ok_or_else(unknown)?;
    let rep = verify_family(&fam)?;
    let without_corrections = match verify_family(&raw) {
        Ok(_) => "verifies".to_string(),
        Err(e) => e.to_string(),
    };
    Ok(RuledFamilyRow {
        name: rep.name,
        ok: rep.ks_rank == rep.h1_dim,
        h1_dim: rep.h1_dim,
        ks_rank: rep.ks_rank,
        lambda_u2: rep.lambda_u2.to_string(),
        without_corrections,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyRow {
    pub case: DegenerateCase,
    /// the candidate family's `∂/∂t` class is zero in ℍ¹
    pub ks_class_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductRow {
    pub manifold: String,
    pub stratum: String,
    pub h1: usize,
    pub h2: usize,
    pub verdict: String,
    pub certificate: Certificate,
}

fn product_row(c: Classified) -> ProductRow {
    ProductRow {
        manifold: c.certificate.manifold.clone(),
        stratum: c.certificate.stratum.clone(),
        h1: c.h1_dim,
        h2: c.h2_dim,
        verdict: verdict_word(&c.certificate.verdict).to_string(),
        certificate: c.certificate,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusRow {
    pub n: usize,
    pub h1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductTables {
    pub ep1: Vec<ProductRow>,
    pub tp1: Vec<ProductRow>,
    pub torus: Vec<TorusRow>,
}

pub fn product_tables() -> Result<ProductTables> {
    let s = Poly::sym;
    let z = Poly::zero;
    let ep1 = vec![
        product_row(ep1_classify(&s("A"), &s("B"), &s("C"))?),
        product_row(ep1_classify(&z(), &z(), &z())?),
    ];
    let classes = [
        Tp1PoissonClass::scalar(s("D")),
        Tp1PoissonClass::mixed(s("D"), s("A"), s("B"), s("C"), s("k")),
        Tp1PoissonClass::fiber(s("D"), s("A"), s("B"), s("C")),
    ];
    let tp1 = classes.iter().map(|c| tp1_classify(c).map(product_row)).collect::<Result<Vec<_>>>()?;
    let torus = (1..=3).map(|n| Ok(TorusRow { n, h1: torus_dims(n, &torus_lambda0(n)?)? })).collect::<Result<_>>()?;
    Ok(ProductTables { ep1, tp1, torus })
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfSection {
    pub p: u32,
    pub rows: Vec<HopfRow>,
    pub families: Vec<HopfFamilyReport>,
    pub degenerate: Vec<DegeneracyRow>,
}

pub fn hopf_section(p: u32, degree: Option<u32>) -> Result<HopfSection> {
    let rows = hopf_tables(p, degree)?;
    let families = HOPF_FAMILIES
        .iter()
        .map(|n| verify_hopf_family(&hopf_family_by_name(n, p)?))
        .collect::<Result<Vec<_>>>()?;
    let degenerate = [DegenerateCase::IvSquare, DegenerateCase::IiiPure]
        .into_iter()
        .map(|case| Ok(DegeneracyRow { case, ks_class_zero: h95_degeneracy(case, p)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(HopfSection { p, rows, families, degenerate })
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub ruled_table: Vec<RuledRow>,
    pub ruled_families: Vec<RuledFamilyRow>,
    pub hopf: HopfSection,
    pub products: ProductTables,
}

/// Everything the tables and family suites compute, for `F_0..F_{m_max}` and
/// Hopf exponent `p`.
pub fn full_report(m_max: u32, p: u32) -> Result<FullReport> {
    Ok(FullReport {
        ruled_table: ruled_table(m_max)?,
        ruled_families: RULED_FAMILIES.iter().map(|n| ruled_family_row(n)).collect::<Result<_>>()?,
        hopf: hopf_section(p, None)?,
        products: product_tables()?,
    })
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("report serializes");
    serde_json::to_string_pretty(&v).expect("value serializes")
}

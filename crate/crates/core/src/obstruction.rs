//! Primary obstruction classes, witness search, and certificates shared by
//! every model of the deformation complex.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{GaussRat, Mono, Poly, Var};
use crate::linalg::{kernel_basis, CokerReducer, LabeledBasis, LinMap, Reducer};
use crate::mvf::{ChartRef, FormedMultiVector};
use crate::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A finite model of the first two hypercohomology groups: `ℍ¹` is built
/// from `coker(h0_map)` and `ker(h1_map)`, `ℍ²` from `coker(h1_map)`, and
/// `pair` reduces a raw bracket `[a, b]` (a ∈ h0_sq, b ∈ h1_theta) to
/// coordinates in `h1_sq`.
#[derive(Clone)]
pub struct DeformationComplexModel {
    pub manifold: String,
    pub stratum: String,
    pub lambda0: FormedMultiVector,
    pub h0_theta: LabeledBasis,
    pub h0_sq: LabeledBasis,
    pub h1_theta: LabeledBasis,
    pub h1_sq: LabeledBasis,
    pub h1_map: LinMap,
    pub h2_reducer: Arc<dyn Reducer + Send + Sync>,
}

impl DeformationComplexModel {
    pub fn chart(&self) -> &ChartRef {
        self.lambda0.chart()
    }

    pub fn complement(&self) -> Vec<Vec<Poly>> {
        crate::linalg::cokernel_vectors(&self.h1_map, &[])
    }

    pub fn h2_dim(&self) -> usize {
        self.h1_map.nrows() - crate::linalg::generic_rank(&self.h1_map)
    }

    fn coker(&self) -> CokerReducer {
        CokerReducer::new(&self.h1_map, &self.complement())
    }

    /// Coordinates of `[a, b]` in `h1_sq`.
    pub fn pair(&self, a: &FormedMultiVector, b: &FormedMultiVector) -> Result<Vec<Poly>> {
        self.h2_reducer.reduce(&a.schouten(b)?)
    }

    /// `[Λ0, [Λ0, x]] = 0` on every basis element.
    pub fn check_complex(&self) -> Result<bool> {
        for basis in [&self.h0_theta, &self.h0_sq, &self.h1_theta, &self.h1_sq] {
            for x in &basis.elements {
                if !self.lambda0.schouten(&self.lambda0.schouten(x)?)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `[x, x]` for `x = λ + θ`.
pub fn primary_obstruction_raw(lambda: &FormedMultiVector, theta: &FormedMultiVector) -> Result<FormedMultiVector> {
    let x = lambda.add(theta)?;
    x.schouten(&x)
}

/// The class of `[λ+θ, λ+θ]` in the `ℍ²` model, as complement coordinates.
pub fn primary_obstruction(
    model: &DeformationComplexModel,
    lambda: &FormedMultiVector,
    theta: &FormedMultiVector,
) -> Result<Vec<Poly>> {
    let l0 = &model.lambda0;
    if !l0.schouten(lambda)?.is_zero() {
        return Err(Error::NotACocycle(format!("[Λ0, λ] ≠ 0 for λ = {lambda}")));
    }
    let raw = primary_obstruction_raw(lambda, theta)?;
    let coords = model.h2_reducer.reduce(&raw)?;
    model.coker().reduce(&coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoData {
    pub re: String,
    pub im: String,
    pub mono: Vec<(String, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermData {
    pub d: Vec<String>,
    pub dbar: Vec<String>,
    pub coeff: Vec<MonoData>,
}

/// A field in canonical text plus an exact structured encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldData {
    pub text: String,
    pub chart: Vec<String>,
    pub terms: Vec<TermData>,
}

fn names(mask: u32, gens: &[Var]) -> Vec<String> {
    gens.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x.name().to_string()).collect()
}

pub fn poly_data(p: &Poly) -> Vec<MonoData> {
    p.terms()
        .map(|(m, c)| MonoData {
            re: c.re.to_string(),
            im: c.im.to_string(),
            mono: m.pairs().iter().map(|(x, e)| (x.name().to_string(), *e)).collect(),
        })
        .collect()
}

pub fn poly_from_data(d: &[MonoData]) -> Result<Poly> {
    let bad = |s: &str| Error::Syntax { line: 0, col: 0, msg: format!("bad rational `{s}`") };
    let mut p = Poly::zero();
    for t in d {
        let re: BigRational = t.re.parse().map_err(|_| bad(&t.re))?;
        let im: BigRational = t.im.parse().map_err(|_| bad(&t.im))?;
        let pairs: Vec<(Var, i32)> = t.mono.iter().map(|(x, e)| (Var::new(x), *e)).collect();
        p.add_term(Mono::from_pairs(&pairs), &GaussRat::new(re, im));
    }
    Ok(p)
}

impl FieldData {
    pub fn from_field(x: &FormedMultiVector) -> Self {
        let ch = x.chart();
        FieldData {
            text: x.to_string(),
            chart: ch.vars().iter().map(|v| v.name().to_string()).collect(),
            terms: x
                .comps()
                .iter()
                .map(|((v, d), p)| TermData { d: names(*v, ch.vars()), dbar: names(*d, ch.dbar()), coeff: poly_data(p) })
                .collect(),
        }
    }

    pub fn to_field(&self, chart: &ChartRef) -> Result<FormedMultiVector> {
        let ours: Vec<String> = chart.vars().iter().map(|v| v.name().to_string()).collect();
        if ours != self.chart {
            return Err(Error::ChartMismatch(self.chart.join(","), ours.join(",")));
        }
        let mut acc = FormedMultiVector::zero(chart);
        for t in &self.terms {
            let d: Vec<&str> = t.d.iter().map(String::as_str).collect();
            let b: Vec<&str> = t.dbar.iter().map(String::as_str).collect();
            let mv = crate::mvf::MultiVector::term(chart, poly_from_data(&t.coeff)?, &d)?;
            acc = acc.add(&FormedMultiVector::new(&mv, &b)?)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Obstructed,
    UnobstructedH2Zero,
    UnobstructedMC { family: String, checks: Vec<String> },
    Undetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: FieldData,
    pub b: FieldData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    /// the raw bracket `[a, b]`
    pub bracket: FieldData,
    /// its coordinates in the `H¹`-level basis of the `ℍ²` model
    pub coords: Vec<Vec<MonoData>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub manifold: String,
    pub stratum: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<ClassData>,
    pub tool_version: String,
}

impl Certificate {
    pub fn new(model: &DeformationComplexModel, verdict: Verdict) -> Self {
        Certificate {
            manifold: model.manifold.clone(),
            stratum: model.stratum.clone(),
            verdict,
            witness: None,
            class: None,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn obstructed(
        model: &DeformationComplexModel,
        a: &FormedMultiVector,
        b: &FormedMultiVector,
        coords: &[Poly],
    ) -> Result<Self> {
        let mut c = Certificate::new(model, Verdict::Obstructed);
        c.witness = Some(Witness { a: FieldData::from_field(a), b: FieldData::from_field(b) });
        c.class = Some(ClassData {
            bracket: FieldData::from_field(&a.schouten(b)?),
            coords: coords.iter().map(poly_data).collect(),
        });
        Ok(c)
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Syntax { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    /// Recompute an `Obstructed` verdict against its model: `a` is in the
    /// span of `H⁰(∧²Θ)`, `b` lies in the kernel of the `H¹` bracket,
    /// `[a, b]` has the recorded coordinates, and those are outside the image.
    pub fn reverify(&self, model: &DeformationComplexModel) -> Result<()> {
        let fail = |m: &str| Err(Error::MembershipFails(m.to_string()));
        if self.verdict != Verdict::Obstructed {
            return Ok(());
        }
        let (Some(w), Some(cl)) = (&self.witness, &self.class) else { return fail("missing witness") };
        let chart = model.chart();
        let a = w.a.to_field(chart)?;
        let b = w.b.to_field(chart)?;
        model.h0_sq.coords_rat(&a)?;
        let bc = model.h1_theta.coords(&b)?;
        for row in &model.h1_map.entries {
            let s: Poly = row.iter().zip(&bc).map(|(x, y)| x * y).sum();
            if !s.is_zero() {
                return fail("b is not in the kernel");
            }
        }
        if cl.bracket.to_field(chart)? != a.schouten(&b)? {
            return fail("recorded bracket differs");
        }
        let coords = model.pair(&a, &b)?;
        let stored: Vec<Poly> = cl.coords.iter().map(|c| poly_from_data(c)).collect::<Result<_>>()?;
        if coords != stored {
            return fail("recorded class differs");
        }
        if model.coker().in_image(&coords)? {
            return fail("class lies in the image");
        }
        Ok(())
    }
}

/// Try `a` over `h0_sq` and `b` over the kernel of the `H¹` bracket; an
/// `[a, b]` outside the image witnesses an obstruction.
pub fn r4_search(model: &DeformationComplexModel) -> Result<Certificate> {
    let ker = kernel_basis(&model.h1_map);
    let coker = model.coker();
    for a in &model.h0_sq.elements {
        for k in &ker {
            let b = model.h1_theta.combine(k)?;
            let c = model.pair(a, &b)?;
            if !coker.in_image(&c)? {
                return Certificate::obstructed(model, a, &b, &c);
            }
        }
    }
    if model.h2_dim() == 0 {
        return Ok(Certificate::new(model, Verdict::UnobstructedH2Zero));
    }
    Ok(Certificate::new(
        model,
        Verdict::Undetermined {
            reason: format!(
                "ℍ² has dimension {} but every [a, b] with a in {} and b in ker lies in the image",
                model.h2_dim(),
                model.h0_sq.space_name
            ),
        },
    ))
}

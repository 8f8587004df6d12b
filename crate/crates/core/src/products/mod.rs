//! Products with an elliptic or toroidal factor: `E×P¹`, `T×P¹` and complex
//! tori. Cohomology is modeled by Dolbeault representatives with constant
//! coefficients along the torus and coefficients of degree ≤ 2 in the
//! inhomogeneous fiber coordinate `ξ`, so `∂̄` vanishes on everything in scope.

mod ep1;
mod torus;
mod tp1;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use ep1::{
    ep1_bracket_matrices, ep1_classify, ep1_cokernel_f, ep1_lambda0, ep1_mc_solution, ep1_model, EP1_PARAMS,
};
pub use torus::{torus_dims, torus_lambda0, torus_model};
pub use tp1::{
    tp1_classify, tp1_mc_solution, tp1_model, tp1_poisson_minors, tp1_schouten_square, Tp1PoissonClass, TP1_PARAMS,
};

use crate::arith::{Poly, Var};
use crate::linalg::{generic_rank, kernel_basis, matrix_of_map, span_rank, BasisReducer, LabeledBasis, LinMap};
use crate::mvf::{mc_defect, ChartRef, FormedMultiVector, MultiVector};
use crate::obstruction::{Certificate, DeformationComplexModel};
use crate::syntax::parse_field;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// elliptic curve times `P¹`, chart `(z, ξ)`
    EllipticP1,
    /// two-dimensional torus times `P¹`, chart `(z1, z2, ξ)`
    TorusP1,
    /// `n`-dimensional complex torus, chart `(z1, …, zn)`
    Torus(usize),
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::EllipticP1 => write!(f, "E×P¹"),
            ProductKind::TorusP1 => write!(f, "T×P¹"),
            ProductKind::Torus(n) => write!(f, "T^{n}"),
        }
    }
}

/// Bases of `H^q(∧^p Θ)` keyed by `(q, p)`. Missing keys are zero groups.
#[derive(Clone, Debug)]
pub struct ProductModel {
    pub kind: ProductKind,
    pub chart: ChartRef,
    pub bases: BTreeMap<(u32, u32), LabeledBasis>,
}

fn field(src: &str, chart: &ChartRef) -> FormedMultiVector {
    parse_field(src, chart).unwrap_or_else(|e| panic!("static field `{src}`: {e}"))
}

/// `f, ξ f, ξ² f`
fn quad(f: &str) -> Vec<String> {
    ["1", "xi", "xi^2"].iter().map(|m| format!("{m}*({f})")).collect()
}

fn basis_of(name: &str, chart: &ChartRef, srcs: &[String]) -> LabeledBasis {
    LabeledBasis::new(name, srcs.iter().map(|s| field(s, chart)).collect())
}

pub(crate) fn group_name(q: u32, p: u32) -> String {
    if p == 1 {
        format!("H{q}(Θ)")
    } else {
        format!("H{q}(∧{p}Θ)")
    }
}

impl ProductModel {
    pub fn new(kind: ProductKind) -> Self {
        match kind {
            ProductKind::EllipticP1 => ep1::model_bases(),
            ProductKind::TorusP1 => tp1::model_bases(),
            ProductKind::Torus(n) => torus::model_bases(n),
        }
    }

    fn from_lists(kind: ProductKind, chart: ChartRef, lists: Vec<((u32, u32), Vec<String>)>) -> Self {
        let bases = lists
            .into_iter()
            .map(|((q, p), srcs)| ((q, p), basis_of(&group_name(q, p), &chart, &srcs)))
            .collect();
        ProductModel { kind, chart, bases }
    }

    pub fn basis(&self, q: u32, p: u32) -> Result<&LabeledBasis> {
        self.bases.get(&(q, p)).ok_or_else(|| Error::NotInSpan(group_name(q, p)))
    }

    pub fn dim(&self, q: u32, p: u32) -> usize {
        self.bases.get(&(q, p)).map_or(0, LabeledBasis::len)
    }

    /// `(group, dimension)` in key order.
    pub fn dims(&self) -> Vec<(String, usize)> {
        self.bases.iter().map(|(k, b)| (group_name(k.0, k.1), b.len())).collect()
    }

    /// `[Λ0, −] : H^q(∧^p) → H^q(∧^{p+1})`, or `None` when either side is a
    /// zero group (the image is then checked to vanish).
    pub fn bracket_map(&self, lambda0: &MultiVector, q: u32, p: u32) -> Result<Option<LinMap>> {
        let l0 = FormedMultiVector::from_mv(lambda0);
        let Some(dom) = self.bases.get(&(q, p)) else { return Ok(None) };
        match self.bases.get(&(q, p + 1)) {
            Some(cod) => {
                Ok(Some(matrix_of_map(|x| l0.schouten(x), dom, cod, &BasisReducer(cod.clone()))?))
            }
            None => {
                for x in &dom.elements {
                    if !l0.schouten(x)?.is_zero() {
                        return Err(Error::NotInSpan(group_name(q, p + 1)));
                    }
                }
                Ok(None)
            }
        }
    }

    fn rank(&self, lambda0: &MultiVector, q: u32, p: u32) -> Result<usize> {
        Ok(self.bracket_map(lambda0, q, p)?.as_ref().map_or(0, generic_rank))
    }

    /// `dim ker/im` at `H^q(∧^p)` in the `[Λ0, −]` complex.
    pub fn e2_dim(&self, lambda0: &MultiVector, q: u32, p: u32) -> Result<usize> {
        let out = self.rank(lambda0, q, p)?;
        let inc = if p > 1 { self.rank(lambda0, q, p - 1)? } else { 0 };
        Ok(self.dim(q, p) - out - inc)
    }

    /// `(dim ℍ⁰, dim ℍ¹, dim ℍ²)` from the degenerate spectral sequence:
    /// `ℍ^k = ⊕_{p+q=k+1} ker/im at H^q(∧^p)`, generic in any symbolic
    /// parameters of `Λ0`.
    pub fn hyper_dims(&self, lambda0: &MultiVector) -> Result<[usize; 3]> {
        let mut out = [0usize; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let total = k as u32 + 1;
            for q in 0..total {
                *slot += self.e2_dim(lambda0, q, total - q)?;
            }
        }
        Ok(out)
    }

    /// The `H⁰(∧²) × H¹(Θ) → H¹(∧²)` model used by the witness search, with
    /// `H⁰(∧²)` cut down to the `[Λ0, −]`-closed bivectors.
    pub fn complex_model(&self, lambda0: &MultiVector, stratum: &str) -> Result<DeformationComplexModel> {
        let h0_sq_all = self.basis(0, 2)?;
        let h0_sq = match self.bracket_map(lambda0, 0, 2)? {
            Some(m) => {
                let elems =
                    kernel_basis(&m).iter().map(|k| h0_sq_all.combine(k)).collect::<Result<Vec<_>>>()?;
                LabeledBasis::new(&format!("ker {}", h0_sq_all.space_name), elems)
            }
            None => h0_sq_all.clone(),
        };
        let h1_sq = self.basis(1, 2)?.clone();
        let h1_map = self
            .bracket_map(lambda0, 1, 1)?
            .ok_or_else(|| Error::NotInSpan(group_name(1, 2)))?;
        Ok(DeformationComplexModel {
            manifold: self.kind.to_string(),
            stratum: stratum.to_string(),
            lambda0: FormedMultiVector::from_mv(lambda0),
            h0_theta: self.basis(0, 1)?.clone(),
            h0_sq,
            h1_theta: self.basis(1, 1)?.clone(),
            h1_sq: h1_sq.clone(),
            h1_map,
            h2_reducer: Arc::new(BasisReducer(h1_sq)),
        })
    }
}

/// A verdict together with the hypercohomology dimensions it was made at.
#[derive(Clone, Debug)]
pub struct Classified {
    pub certificate: Certificate,
    pub h1_dim: usize,
    pub h2_dim: usize,
}

/// An explicit solution `x(t) = β(t) + α(t)` of `[Λ0, x] + ½[x, x] = 0`
/// (`∂̄x = 0` since every coefficient is holomorphic). `beta` is the
/// holomorphic bivector part and `alpha` the `(0,1)`-vector part; both
/// already include the higher-order `corrections`.
#[derive(Clone, Debug)]
pub struct McSolution {
    pub name: String,
    pub model: ProductModel,
    pub lambda0: MultiVector,
    pub beta: FormedMultiVector,
    pub alpha: FormedMultiVector,
    pub params: Vec<Var>,
    pub corrections: Vec<(String, FormedMultiVector)>,
    /// the `ℍ¹` representative each parameter is expected to hit
    pub tangent: Vec<FormedMultiVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub ok: bool,
    pub checks: Vec<String>,
}

impl McSolution {
    pub fn total(&self) -> Result<FormedMultiVector> {
        self.beta.add(&self.alpha)
    }

    pub fn defect(&self) -> Result<FormedMultiVector> {
        mc_defect(&self.lambda0, &self.total()?)
    }

    /// The defect split by form degree: `[(0,0)-part, (0,1)-part, (0,2)-part]`.
    pub fn defect_parts(&self) -> Result<[FormedMultiVector; 3]> {
        let d = self.defect()?;
        Ok([d.form_degree_part(0), d.form_degree_part(1), d.form_degree_part(2)])
    }

    pub fn correction(&self, name: &str) -> Result<&FormedMultiVector> {
        self.corrections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// The defect after deleting one named correction term.
    pub fn defect_without(&self, name: &str) -> Result<FormedMultiVector> {
        let x = self.total()?.sub(self.correction(name)?)?;
        mc_defect(&self.lambda0, &x)
    }

    /// `∂x/∂t_i` at `t = 0`.
    pub fn first_order(&self) -> Result<Vec<FormedMultiVector>> {
        let total = self.total()?;
        let zero: Vec<(&str, Poly)> = self.params.iter().map(|t| (t.name(), Poly::zero())).collect();
        self.params
            .iter()
            .map(|&t| total.map_coeffs(|p| p.partial(t).subs(&zero)))
            .collect()
    }

    /// Rank of the Kodaira–Spencer image in `ℍ¹ = ker/im ⊕ ker`, computed in
    /// `H⁰(∧²) ⊕ H¹(Θ)` coordinates modulo the image of `H⁰(Θ)`.
    pub fn ks_rank(&self) -> Result<usize> {
        let b0 = self.model.basis(0, 2)?;
        let b1 = self.model.basis(1, 1)?;
        let n = b0.len() + b1.len();
        let coords = |x: &FormedMultiVector| -> Result<Vec<Poly>> {
            let mut v = b0.coords(&x.form_degree_part(0))?;
            v.extend(b1.coords(&x.form_degree_part(1))?);
            Ok(v)
        };
        let l0 = FormedMultiVector::from_mv(&self.lambda0);
        let mut image = Vec::new();
        for e in &self.model.basis(0, 1)?.elements {
            image.push(coords(&l0.schouten(e)?)?);
        }
        let base = span_rank(&image, n);
        let mut all = image;
        for d in self.first_order()? {
            all.push(coords(&d)?);
        }
        Ok(span_rank(&all, n) - base)
    }

    pub fn check_ks(&self) -> Result<()> {
        let rank = self.ks_rank()?;
        if rank != self.params.len() {
            return Err(Error::KsDegenerate { rank, expected: self.params.len() });
        }
        Ok(())
    }

    pub fn verify(&self) -> Result<McReport> {
        let mut checks = Vec::new();
        let mut ok = true;
        let mut check = |good: bool, msg: String| {
            ok &= good;
            checks.push(format!("{}: {msg}", if good { "pass" } else { "FAIL" }));
        };
        let [d0, d1, d2] = self.defect_parts()?;
        check(d0.is_zero(), format!("[Λ0,β]+½[β,β] = {d0}"));
        check(d1.is_zero(), format!("[Λ0,α]+[β,α] = {d1}"));
        check(d2.is_zero(), format!("½[α,α] = {d2}"));
        let first = self.first_order()?;
        let hits = first.len() == self.tangent.len() && first.iter().zip(&self.tangent).all(|(a, b)| a == b);
        check(hits, "∂x/∂t at 0 equals the ℍ¹ representatives".to_string());
        let l0 = FormedMultiVector::from_mv(&self.lambda0);
        let closed = first.iter().map(|x| l0.schouten(x).map(|y| y.is_zero())).collect::<Result<Vec<_>>>()?;
        check(closed.iter().all(|&c| c), "first-order terms are [Λ0,−]-closed".to_string());
        let rank = self.ks_rank()?;
        check(rank == self.params.len(), format!("Kodaira–Spencer rank {rank} of {}", self.params.len()));
        for (name, _) in &self.corrections {
            let r = self.defect_without(name)?;
            let needed = if r.is_zero() { "redundant" } else { "needed" };
            checks.push(format!("note: correction {name} is {needed}"));
        }
        Ok(McReport { ok, checks })
    }
}

/// `c0 + c1 ξ + c2 ξ²`
pub fn fiber_quadratic(c: &[Poly; 3]) -> Poly {
    let xi = Poly::sym("xi");
    &(&c[0] + &(&c[1] * &xi)) + &(&c[2] * &xi.pow(2))
}

pub(crate) fn is_zero3(c: &[Poly; 3]) -> bool {
    c.iter().all(Poly::is_zero)
}

/// `f ⊗ (grade-p field from src)` with `src` a static expression.
pub(crate) fn scaled(f: &Poly, src: &str, chart: &ChartRef) -> FormedMultiVector {
    field(src, chart).mul_poly(f)
}

/// Free families by name: `ep1` and `tp1` over fully symbolic parameters.
pub fn verify_product_family(name: &str) -> Result<McReport> {
    let s = |x: &str| Poly::sym(x);
    let sol = match name {
        "ep1" => ep1_mc_solution(&s("A"), &s("B"), &s("C"), None)?,
        "tp1" => tp1_mc_solution(&Tp1PoissonClass::mixed(s("D"), s("A"), s("B"), s("C"), s("k")), None)?,
        other => return Err(Error::UnknownSymbol(other.to_string())),
    };
    sol.verify()
}

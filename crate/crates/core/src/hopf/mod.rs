//! Primary Hopf surfaces `X = W/⟨f⟩`, `W = ℂ²∖0`.
//!
//! Everything is computed on the cover: `H⁰` is the `f_*`-invariant part of
//! the polynomial fields on `W`, and `H¹` is the cokernel of `id − f_*`
//! (`M₁`, `M₂`). Fields are graded by a weight that every contraction
//! preserves, and on a block of weight `k` the operator `f_*` is unipotent up
//! to the scalar `α^{-k}` (or `δ^{-k}`). So only weight 0 contributes; the
//! truncation check confirms this up to a cap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{Poly, Var};
use crate::linalg::matrix::Echelon;
use crate::linalg::{cokernel_vectors, kernel_basis, matrix_of_map, BasisReducer, LabeledBasis, LinMap};
use crate::mvf::{pushforward, Chart, ChartMap, ChartRef, Direction, FormedMultiVector, MultiVector};
use crate::{Error, Result};

mod family;
mod tables;
#[cfg(test)]
mod tests;

pub use family::*;
pub use tables::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HopfKind {
    IV,
    III,
    IIa,
    IIb,
    IIc,
}

impl HopfKind {
    pub const ALL: [HopfKind; 5] = [HopfKind::IV, HopfKind::III, HopfKind::IIa, HopfKind::IIb, HopfKind::IIc];

    pub fn name(self) -> &'static str {
        match self {
            HopfKind::IV => "IV",
            HopfKind::III => "III",
            HopfKind::IIa => "IIa",
            HopfKind::IIb => "IIb",
            HopfKind::IIc => "IIc",
        }
    }

    /// Types whose contraction involves the exponent `p`.
    pub fn has_p(self) -> bool {
        matches!(self, HopfKind::III | HopfKind::IIa)
    }
}

impl FromStr for HopfKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HopfKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSymbol(format!("Hopf type {s}")))
    }
}

impl fmt::Display for HopfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Hopf type with its exponent. For III and IIa the relation `α = δᵖ` is
/// built in by never introducing `α`; for the other types `p` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HopfType {
    pub kind: HopfKind,
    pub p: u32,
}

impl HopfType {
    pub fn new(kind: HopfKind, p: u32) -> Result<Self> {
        if kind.has_p() {
            if p < 2 {
                return Err(Error::ConstraintViolation(format!("type {kind} needs p ≥ 2, got {p}")));
            }
            Ok(HopfType { kind, p })
        } else {
            Ok(HopfType { kind, p: 1 })
        }
    }

    /// All five types, with exponent `p` where it applies.
    pub fn all(p: u32) -> Result<Vec<HopfType>> {
        HopfKind::ALL.into_iter().map(|k| HopfType::new(k, p)).collect()
    }

    pub fn chart() -> ChartRef {
        Chart::new("W", &["z", "w"])
    }

    /// Parameter symbols of the contraction.
    pub fn params(&self) -> Vec<&'static str> {
        match self.kind {
            HopfKind::IV | HopfKind::IIb => vec!["alpha"],
            HopfKind::III | HopfKind::IIa => vec!["delta"],
            HopfKind::IIc => vec!["alpha", "delta"],
        }
    }

    /// Weight of `z`; `w` has weight 1.
    pub fn wz(&self) -> i32 {
        if self.kind.has_p() {
            self.p as i32
        } else {
            1
        }
    }

    /// Smallest truncation cap that sees every weight-0 monomial.
    pub fn default_degree(&self) -> u32 {
        3.max(self.wz() as u32 + 3)
    }

    pub fn contraction(&self) -> Contraction {
        let w = HopfType::chart();
        let (z, ww) = (Poly::sym("z"), Poly::sym("w"));
        let pw = |x: &str, e: i32| Poly::var_pow(x, e);
        let p = self.p as i32;
        let (fwd, inv) = match self.kind {
            HopfKind::IV => (
                [&pw("alpha", 1) * &z, &pw("alpha", 1) * &ww],
                [&pw("alpha", -1) * &z, &pw("alpha", -1) * &ww],
            ),
            HopfKind::III => (
                [&pw("delta", p) * &z, &pw("delta", 1) * &ww],
                [&pw("delta", -p) * &z, &pw("delta", -1) * &ww],
            ),
            HopfKind::IIa => (
                [&(&pw("delta", p) * &z) + &pw("w", p), &pw("delta", 1) * &ww],
                [&(&pw("delta", -p) * &z) - &(&pw("delta", -2 * p) * &pw("w", p)), &pw("delta", -1) * &ww],
            ),
            HopfKind::IIb => (
                [&(&pw("alpha", 1) * &z) + &ww, &pw("alpha", 1) * &ww],
                [&(&pw("alpha", -1) * &z) - &(&pw("alpha", -2) * &ww), &pw("alpha", -1) * &ww],
            ),
            HopfKind::IIc => (
                [&pw("alpha", 1) * &z, &pw("delta", 1) * &ww],
                [&pw("alpha", -1) * &z, &pw("delta", -1) * &ww],
            ),
        };
        let [f1, f2] = fwd;
        let [g1, g2] = inv;
        let inverse = [("z", g1), ("w", g2)];
        let f = ChartMap::new(&w, &w, &[("z", f1), ("w", f2)], Some(&inverse));
        let f_inverse = f.reversed().expect("inverse supplied");
        Contraction { f, f_inverse }
    }
}

impl fmt::Display for HopfType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_p() {
            write!(f, "{}(p={})", self.kind, self.p)
        } else {
            write!(f, "{}", self.kind)
        }
    }
}

/// The contraction `f` on `W` and its inverse.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub f: ChartMap,
    pub f_inverse: ChartMap,
}

impl Contraction {
    /// `f∘f⁻¹ = id` and `f⁻¹∘f = id` as substitutions.
    pub fn check_inverse(&self) -> Result<bool> {
        self.f.check_inverse()
    }

    /// `f_*x`, i.e. `Df(f⁻¹y)·x(f⁻¹y)`.
    pub fn push(&self, x: &MultiVector) -> Result<MultiVector> {
        pushforward(&self.f, x, Direction::Forward)
    }

    pub fn id_minus(&self, x: &MultiVector) -> Result<MultiVector> {
        x.sub(&self.push(x)?)
    }

    pub fn id_minus_formed(&self, x: &FormedMultiVector) -> Result<FormedMultiVector> {
        Ok(FormedMultiVector::from_mv(&self.id_minus(&x.form_part(0))?))
    }
}

/// `z^μ w^ν ∂`-mask with `∂z` = bit 0 and `∂w` = bit 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoKey {
    pub mask: u32,
    pub mu: i32,
    pub nu: i32,
}

impl MonoKey {
    pub fn field(&self, chart: &ChartRef) -> MultiVector {
        let c = &Poly::var_pow("z", self.mu) * &Poly::var_pow("w", self.nu);
        MultiVector::from_mask(chart, self.mask, c)
    }
}

fn masks(grade: u32) -> &'static [u32] {
    match grade {
        1 => &[1, 2],
        2 => &[3],
        _ => &[],
    }
}

impl HopfType {
    /// Weight of the ∂'s in `mask`.
    fn mask_weight(&self, mask: u32) -> i32 {
        (if mask & 1 != 0 { self.wz() } else { 0 }) + (if mask & 2 != 0 { 1 } else { 0 })
    }

    /// Field weight of `z^μ w^ν ∂_mask`; every contraction preserves it.
    pub fn field_weight(&self, k: &MonoKey) -> i32 {
        self.wz() * k.mu + k.nu - self.mask_weight(k.mask)
    }

    /// Lowest weight occurring in the given grade.
    pub fn min_weight(&self, grade: u32) -> i32 {
        masks(grade).iter().map(|&m| -self.mask_weight(m)).min().unwrap_or(0)
    }
}

/// All monomial fields of one grade and one weight.
#[derive(Clone, Debug)]
pub struct Block {
    pub grade: u32,
    pub weight: i32,
    pub keys: Vec<MonoKey>,
    pub basis: LabeledBasis,
}

impl Block {
    pub fn new(t: &HopfType, grade: u32, weight: i32) -> Self {
        let chart = HopfType::chart();
        let wz = t.wz();
        let mut keys = Vec::new();
        for &mask in masks(grade) {
            let total = weight + t.mask_weight(mask);
            if total < 0 {
                continue;
            }
            for mu in (0..=total / wz).rev() {
                keys.push(MonoKey { mask, mu, nu: total - wz * mu });
            }
        }
        let basis = LabeledBasis::from_mvs(
            &format!("{t} grade {grade} weight {weight}"),
            keys.iter().map(|k| k.field(&chart)).collect(),
        );
        Block { grade, weight, keys, basis }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Coefficients of the block monomials in `x`; other monomials are dropped.
    pub fn project(&self, x: &MultiVector) -> Vec<Poly> {
        let vars = x.chart().vars().to_vec();
        let mut out = Vec::with_capacity(self.len());
        let mut cache = std::collections::BTreeMap::new();
        for k in &self.keys {
            let coll = cache.entry(k.mask).or_insert_with(|| x.comp(k.mask).collect(&vars));
            out.push(coll.get(&vec![k.mu, k.nu]).cloned().unwrap_or_default());
        }
        out
    }

    /// `id − f_*` restricted to this block.
    pub fn id_minus_fstar(&self, t: &HopfType) -> Result<LinMap> {
        let c = t.contraction();
        matrix_of_map(|x| c.id_minus_formed(x), &self.basis, &self.basis, &BasisReducer(self.basis.clone()))
    }
}

/// Monomial fields of one grade up to a degree cap, graded by weight:
/// a field of weight `k` is kept when `k ≤ D − grade`. For the weights
/// `(1, 1)` this is exactly `μ + ν ≤ D`.
#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    pub grade: u32,
    pub degree: u32,
    pub blocks: Vec<Block>,
    pub basis: LabeledBasis,
}

impl TruncatedSpace {
    pub fn new(t: &HopfType, grade: u32, degree: u32) -> Self {
        let top = degree as i32 - grade as i32;
        let blocks: Vec<Block> =
            (t.min_weight(grade)..=top).map(|k| Block::new(t, grade, k)).filter(|b| !b.is_empty()).collect();
        let els = blocks.iter().flat_map(|b| b.basis.elements.iter().cloned()).collect();
        let basis = LabeledBasis::new(&format!("{t} grade {grade} to degree {degree}"), els);
        TruncatedSpace { grade, degree, blocks, basis }
    }
}

/// Matrix of `v ↦ v − f_*v` on the truncated monomial basis.
pub fn id_minus_fstar(t: &HopfType, s: &TruncatedSpace) -> Result<LinMap> {
    let c = t.contraction();
    matrix_of_map(|x| c.id_minus_formed(x), &s.basis, &s.basis, &BasisReducer(s.basis.clone()))
}

/// Greedily keep the `preferred` vectors that lie in `span(space)` and are
/// independent, then complete from `space`.
pub(crate) fn pick_in_span(space: &[Vec<Poly>], preferred: &[Vec<Poly>], n: usize) -> Vec<Vec<Poly>> {
    let mut span = Echelon::new(n);
    for v in space {
        span.insert(v);
    }
    let mut chosen = Echelon::new(n);
    let mut out = Vec::new();
    for v in preferred.iter().chain(space) {
        if chosen.rank() == span.rank() {
            break;
        }
        if span.contains(v) && chosen.insert(v) {
            out.push(v.clone());
        }
    }
    out
}

/// Coordinates of `fields` that lie entirely in `block`.
fn preferred_in(block: &Block, fields: &[MultiVector]) -> Vec<Vec<Poly>> {
    fields
        .iter()
        .filter_map(|f| block.basis.coords(&FormedMultiVector::from_mv(f)).ok())
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Kernel,
    Cokernel,
}

/// Kernel or cokernel of `id − f_*` block by block, using `preferred`
/// representatives where they fit.
fn block_part(t: &HopfType, grade: u32, degree: u32, part: Part, preferred: &[MultiVector]) -> Result<Vec<MultiVector>> {
    let space = TruncatedSpace::new(t, grade, degree);
    let mut out = Vec::new();
    for b in &space.blocks {
        let l = b.id_minus_fstar(t)?;
        let pref = preferred_in(b, preferred);
        let vecs = match part {
            Part::Kernel => pick_in_span(&kernel_basis(&l), &pref, b.len()),
            Part::Cokernel => cokernel_vectors(&l, &pref),
        };
        for v in vecs {
            out.push(b.basis.combine(&v)?.form_part(0));
        }
    }
    Ok(out)
}

fn stable<T: PartialEq>(d: u32, f: impl Fn(u32) -> Result<T>) -> Result<T> {
    let a = f(d)?;
    if a != f(d + 2)? {
        return Err(Error::TruncationUnstable(d, d + 2));
    }
    Ok(a)
}

fn same_fields(a: &[MultiVector], b: &[MultiVector]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same(y))
}

#[derive(Debug)]
struct Fields(Vec<MultiVector>);

impl PartialEq for Fields {
    fn eq(&self, o: &Self) -> bool {
        same_fields(&self.0, &o.0)
    }
}

/// Cokernel representatives of `id − f_*` on grades 1 and 2, preferring the
/// standard lists. Fails if the answer changes between `D` and `D + 2`.
pub fn m1_m2_bases(t: &HopfType, degree: u32) -> Result<(LabeledBasis, LabeledBasis)> {
    let (p1, p2) = standard_m_reps(t);
    let m1 = stable(degree, |d| Ok(Fields(block_part(t, 1, d, Part::Cokernel, &p1)?)))?;
    let m2 = stable(degree, |d| Ok(Fields(block_part(t, 2, d, Part::Cokernel, &p2)?)))?;
    Ok((LabeledBasis::from_mvs("M1", m1.0), LabeledBasis::from_mvs("M2", m2.0)))
}

/// `f`-invariant polynomial fields of the given grade, preferring the
/// standard bases.
pub fn invariant_fields_at(t: &HopfType, grade: u32, degree: u32) -> Result<LabeledBasis> {
    let pref = match grade {
        1 => standard_h0_theta(t),
        _ => standard_h0_sq(t),
    };
    let k = stable(degree, |d| Ok(Fields(block_part(t, grade, d, Part::Kernel, &pref)?)))?;
    let name = if grade == 1 { "H0(Theta)" } else { "H0(wedge2 Theta)" };
    Ok(LabeledBasis::from_mvs(name, k.0))
}

/// A basis of `H⁰(X, Θ)`.
pub fn invariant_vector_fields(t: &HopfType) -> Result<LabeledBasis> {
    invariant_fields_at(t, 1, t.default_degree())
}

/// A basis of `H⁰(X, ∧²Θ)`.
pub fn invariant_bivectors(t: &HopfType) -> Result<LabeledBasis> {
    invariant_fields_at(t, 2, t.default_degree())
}

/// Parameter symbols as variables.
pub fn param_vars(t: &HopfType) -> Vec<Var> {
    t.params().into_iter().map(Var::new).collect()
}

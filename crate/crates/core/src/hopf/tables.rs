use std::sync::Arc;

use serde::Serialize;

use super::{invariant_fields_at, m1_m2_bases, Block, HopfKind, HopfType};
use crate::arith::{Poly, RatFunc};
use crate::linalg::matrix::{from_columns, primitive, solve, solve_rat, to_rat, Echelon};
use crate::linalg::{
    generic_rank, kernel_basis, matrix_of_map, span_rank, BasisReducer, CokerReducer, LabeledBasis, LinMap, Reducer,
};
use crate::mvf::{FormedMultiVector, MultiVector};
use crate::obstruction::{r4_search, Certificate, DeformationComplexModel, Verdict};
use crate::syntax::parse_mv;
use crate::{Error, Result};

fn fields(srcs: &[String]) -> Vec<MultiVector> {
    let chart = HopfType::chart();
    srcs.iter().map(|s| parse_mv(s, &chart).expect("built-in field parses")).collect()
}

fn biv(coeffs: &[String]) -> Vec<MultiVector> {
    fields(&coeffs.iter().map(|c| format!("({c})*@z^@w")).collect::<Vec<_>>())
}

/// The standard basis of `H⁰(X, Θ)`.
pub fn standard_h0_theta(t: &HopfType) -> Vec<MultiVector> {
    let p = t.p;
    let s: Vec<String> = match t.kind {
        HopfKind::IV => vec!["z*@z".into(), "w*@z".into(), "z*@w".into(), "w*@w".into()],
        HopfKind::III => vec!["z*@z".into(), "w*@w".into(), format!("w^{p}*@z")],
        HopfKind::IIa => vec![format!("{p}*z*@z + w*@w"), format!("w^{p}*@z")],
        HopfKind::IIb => vec!["z*@z + w*@w".into(), "w*@z".into()],
        HopfKind::IIc => vec!["z*@z".into(), "w*@w".into()],
    };
    fields(&s)
}

/// The standard basis of `H⁰(X, ∧²Θ)`, as multiples of `∂z∧∂w`.
pub fn standard_h0_sq(t: &HopfType) -> Vec<MultiVector> {
    let q = t.p + 1;
    let s: Vec<String> = match t.kind {
        HopfKind::IV => vec!["z^2".into(), "z*w".into(), "w^2".into()],
        HopfKind::III => vec!["z*w".into(), format!("w^{q}")],
        HopfKind::IIa => vec![format!("w^{q}")],
        HopfKind::IIb => vec!["w^2".into()],
        HopfKind::IIc => vec!["z*w".into()],
    };
    biv(&s)
}

/// Standard representatives of `M₁ = coker(id − f_*)` on vector fields and
/// `M₂` on bivector fields.
pub fn standard_m_reps(t: &HopfType) -> (Vec<MultiVector>, Vec<MultiVector>) {
    let p = t.p;
    let q = p + 1;
    let (m1, m2): (Vec<String>, Vec<String>) = match t.kind {
        HopfKind::IV => (
            vec!["z*@z".into(), "w*@z".into(), "z*@w".into(), "w*@w".into()],
            vec!["z^2".into(), "z*w".into(), "w^2".into()],
        ),
        HopfKind::III => (vec!["z*@z".into(), format!("w^{p}*@z"), "w*@w".into()], vec!["z*w".into(), format!("w^{q}")]),
        HopfKind::IIa => (vec![format!("(delta^{p}*z - w^{p})*@z"), "w*@w".into()], vec!["z*w".into()]),
        HopfKind::IIb => {
            (vec!["(alpha*z - w)*@z + alpha*w*@w".into(), "(alpha*z - w)*@w".into()], vec!["z^2".into()])
        }
        HopfKind::IIc => (vec!["z*@z".into(), "w*@w".into()], vec!["z*w".into()]),
    };
    (fields(&m1), biv(&m2))
}

/// A Poisson stratum: `Λ0 = λ·∂z∧∂w` with `λ` in the given form and the
/// listed polynomials nonzero.
#[derive(Clone, Debug)]
pub struct HopfStratum {
    pub ty: HopfType,
    pub name: String,
    pub lambda0: Poly,
    pub nonzero: Vec<Poly>,
}

fn ps(s: &str) -> Poly {
    crate::syntax::parse_poly(s).expect("built-in polynomial parses")
}

/// The eight strata of the cohomology table.
pub fn strata(p: u32) -> Result<Vec<HopfStratum>> {
    let q = p + 1;
    let mk = |kind, name: &str, l: &str, nz: &[&str]| -> Result<HopfStratum> {
        Ok(HopfStratum {
            ty: HopfType::new(kind, p)?,
            name: name.to_string(),
            lambda0: ps(l),
            nonzero: nz.iter().map(|s| ps(s)).collect(),
        })
    };
    Ok(vec![
        mk(HopfKind::IV, "0", "0", &[])?,
        mk(HopfKind::IV, "(A,B,C) != 0", "A*z^2 + B*z*w + C*w^2", &[])?,
        mk(HopfKind::III, "0", "0", &[])?,
        mk(HopfKind::III, "B != 0", &format!("B*w^{q}"), &["B"])?,
        mk(HopfKind::III, "A != 0", &format!("A*z*w + B*w^{q}"), &["A"])?,
        mk(HopfKind::IIa, "any A", &format!("A*w^{q}"), &[])?,
        mk(HopfKind::IIb, "any A", "A*w^2", &[])?,
        mk(HopfKind::IIc, "any A", "A*z*w", &[])?,
    ])
}

/// `M₂` coordinates of a bivector: its weight-0 block coordinates modulo
/// the image of `id − f_*`.
pub struct M2Reducer {
    block: Block,
    coker: CokerReducer,
    target: LabeledBasis,
}

impl Reducer for M2Reducer {
    fn reduce(&self, x: &FormedMultiVector) -> Result<Vec<Poly>> {
        let c = self.block.basis.coords(x)?;
        self.coker.reduce(&c)
    }

    fn target(&self) -> &LabeledBasis {
        &self.target
    }
}

/// The two-term hypercohomology model of `(X, Λ0)` restricted to weight 0,
/// which carries all of `H⁰` and `H¹`.
pub struct HopfHyper {
    pub ty: HopfType,
    pub lambda0: MultiVector,
    pub blk1: Block,
    pub blk2: Block,
    pub l1: LinMap,
    pub l2: LinMap,
    /// `[Λ0, −]` from the weight-0 vector block to the bivector block
    pub br: LinMap,
    pub h0_theta: LabeledBasis,
    pub h0_sq: LabeledBasis,
    pub m1: LabeledBasis,
    pub m2: LabeledBasis,
    pub h0_map: LinMap,
    pub h1_map: LinMap,
    m1_coords: Vec<Vec<Poly>>,
    h0_sq_coords: Vec<Vec<Poly>>,
    coker0: Vec<Vec<Poly>>,
    ker1: Vec<Vec<Poly>>,
    nu: Vec<Vec<RatFunc>>,
}

fn block_coords(b: &Block, basis: &LabeledBasis) -> Result<Vec<Vec<Poly>>> {
    basis.elements.iter().map(|e| b.basis.coords(e)).collect()
}

fn mat_vec(m: &[Vec<Poly>], v: &[RatFunc]) -> Vec<RatFunc> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                .fold(RatFunc::zero(), |acc, (a, x)| acc.add(&RatFunc::from_poly(a.clone()).mul(x)))
        })
        .collect()
}

fn rat_cols(cols: &[Vec<Poly>], n: usize) -> Vec<Vec<RatFunc>> {
    to_rat(&from_columns(cols, n))
}

fn independent(cols: Vec<Vec<Poly>>, n: usize) -> Vec<Vec<Poly>> {
    let mut e = Echelon::new(n);
    cols.into_iter().filter(|c| e.insert(c)).collect()
}

impl HopfHyper {
    pub fn new(t: &HopfType, lambda0: &Poly, degree: u32) -> Result<Self> {
        let chart = HopfType::chart();
        let lam = MultiVector::from_mask(&chart, 3, lambda0.clone());
        let lam_f = FormedMultiVector::from_mv(&lam);
        let (m1, m2) = m1_m2_bases(t, degree)?;
        let h0_theta = invariant_fields_at(t, 1, degree)?;
        let h0_sq = invariant_fields_at(t, 2, degree)?;
        let blk1 = Block::new(t, 1, 0);
        let blk2 = Block::new(t, 2, 0);
        let lam_c = blk2.basis.coords(&lam_f).map_err(|_| {
            Error::ConstraintViolation(format!("{lambda0} is not an invariant bivector coefficient for {t}"))
        })?;
        let l1 = blk1.id_minus_fstar(t)?;
        let l2 = blk2.id_minus_fstar(t)?;
        if mat_vec(&l2.entries, &lam_c.iter().cloned().map(RatFunc::from_poly).collect::<Vec<_>>())
            .iter()
            .any(|x| !x.is_zero())
        {
            return Err(Error::ConstraintViolation(format!("{lambda0} is not f-invariant for {t}")));
        }
        let bracket = |x: &FormedMultiVector| lam_f.schouten(x);
        let br = matrix_of_map(bracket, &blk1.basis, &blk2.basis, &BasisReducer(blk2.basis.clone()))?;
        let m1_coords = block_coords(&blk1, &m1)?;
        let m2_coords = block_coords(&blk2, &m2)?;
        let h0_sq_coords = block_coords(&blk2, &h0_sq)?;
        let red = M2Reducer { block: blk2.clone(), coker: CokerReducer::new(&l2, &m2_coords), target: m2.clone() };
        let h0_map = matrix_of_map(bracket, &h0_theta, &h0_sq, &BasisReducer(h0_sq.clone()))?;
        let h1_map = matrix_of_map(bracket, &m1, &m2, &red)?;
        let coker0 = crate::linalg::cokernel_vectors(&h0_map, &[]);
        let ker1 = kernel_basis(&h1_map);
        let mut nu = Vec::new();
        for k in &ker1 {
            let mut v = vec![Poly::zero(); blk1.len()];
            for (c, rep) in k.iter().zip(&m1_coords) {
                for (vi, ri) in v.iter_mut().zip(rep) {
                    *vi = &*vi + &(c * ri);
                }
            }
            let rhs: Vec<Poly> = br.entries.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
            let x = solve(&l2.entries, &rhs).ok_or_else(|| Error::NotACocycle("[Λ0, ker] outside the image of id - f_*".into()))?;
            nu.push(x);
        }
        Ok(HopfHyper {
            ty: *t,
            lambda0: lam,
            blk1,
            blk2,
            l1,
            l2,
            br,
            h0_theta,
            h0_sq,
            m1,
            m2,
            h0_map,
            h1_map,
            m1_coords,
            h0_sq_coords,
            coker0,
            ker1,
            nu,
        })
    }

    /// `(dim ℍ⁰, dim ℍ¹, dim ℍ²)` for generic parameter values.
    pub fn dims(&self) -> (usize, usize, usize) {
        let r0 = generic_rank(&self.h0_map);
        let r1 = generic_rank(&self.h1_map);
        let h0 = self.h0_theta.len() - r0;
        let h1 = (self.h0_sq.len() - r0) + (self.m1.len() - r1);
        let h2 = self.m2.len() - r1;
        (h0, h1, h2)
    }

    /// Infinitesimal Poisson automorphisms: the kernel of `[Λ0, −]` on `H⁰(Θ)`.
    pub fn poisson_automorphisms(&self) -> Result<Vec<MultiVector>> {
        kernel_basis(&self.h0_map).iter().map(|k| Ok(self.h0_theta.combine(k)?.form_part(0))).collect()
    }

    /// `(id − f_*)B = [Λ0, A]` exactly.
    pub fn check_pair(&self, b: &MultiVector, a: &MultiVector) -> Result<()> {
        let lhs = self.ty.contraction().id_minus(b)?;
        let rhs = self.lambda0.schouten(a)?;
        let residual = lhs.sub(&rhs)?;
        if !residual.is_zero() {
            return Err(Error::MembershipFails(format!("(id - f_*)B - [Λ0, A] = {residual}")));
        }
        Ok(())
    }

    /// `ℍ¹` coordinates of a pair `(B, A)` with `(id − f_*)B = [Λ0, A]`:
    /// first the `coker(H⁰Θ → H⁰∧²Θ)` part, then the `ker(M₁ → M₂)` part.
    pub fn class_of(&self, b: &MultiVector, a: &MultiVector) -> Result<Vec<RatFunc>> {
        self.check_pair(b, a)?;
        let n1 = self.blk1.len();
        let n2 = self.blk2.len();
        let va = self.blk1.project(a);
        let vb: Vec<RatFunc> = self.blk2.project(b).into_iter().map(RatFunc::from_poly).collect();
        // va = L1·γ + Σ c_j m1_j
        let mut cols = self.l1.columns();
        cols.extend(self.m1_coords.iter().cloned());
        let x = solve(&from_columns(&cols, n1), &va).ok_or_else(|| Error::MembershipFails("A outside image + M1".into()))?;
        let (gamma, c) = x.split_at(n1);
        // c = Σ κ_k K_k
        let kappa = if self.ker1.is_empty() {
            if c.iter().any(|v| !v.is_zero()) {
                return Err(Error::MembershipFails("A has a component outside ker(M1 → M2)".into()));
            }
            Vec::new()
        } else {
            solve_rat(&rat_cols(&self.ker1, self.m1.len()), c)
                .ok_or_else(|| Error::MembershipFails("A has a component outside ker(M1 → M2)".into()))?
        };
        // B0 = vB − Br·γ − Σ κ_k ν_k is invariant
        let brg = mat_vec(&self.br.entries, gamma);
        let mut b0: Vec<RatFunc> = vb.iter().zip(&brg).map(|(x, y)| x.sub(y)).collect();
        for (kk, nu) in kappa.iter().zip(&self.nu) {
            for (bi, ni) in b0.iter_mut().zip(nu) {
                *bi = bi.sub(&kk.mul(ni));
            }
        }
        if mat_vec(&self.l2.entries, &b0).iter().any(|v| !v.is_zero()) {
            return Err(Error::MembershipFails("corrected B is not invariant".into()));
        }
        let u = solve_rat(&rat_cols(&self.h0_sq_coords, n2), &b0)
            .ok_or_else(|| Error::MembershipFails("corrected B outside H0(wedge2)".into()))?;
        let n0 = self.h0_sq.len();
        let img = independent(self.h0_map.columns(), n0);
        let ni = img.len();
        let mut sys = img;
        sys.extend(self.coker0.iter().cloned());
        let mut out = if n0 == 0 {
            Vec::new()
        } else {
            let y = solve_rat(&rat_cols(&sys, n0), &u).ok_or_else(|| Error::NotInSpan("H0 image + complement".into()))?;
            y[ni..].to_vec()
        };
        out.extend(kappa);
        Ok(out)
    }

    /// Rank of a family of `ℍ¹` coordinate vectors.
    pub fn class_rank(classes: &[Vec<RatFunc>]) -> usize {
        let n = classes.first().map_or(0, |c| c.len());
        let prim: Vec<Vec<Poly>> = classes.iter().map(|c| primitive(c)).collect();
        span_rank(&prim, n)
    }

    pub fn model(&self, stratum: &str) -> Result<DeformationComplexModel> {
        let m2_coords = block_coords(&self.blk2, &self.m2)?;
        let red = M2Reducer {
            block: self.blk2.clone(),
            coker: CokerReducer::new(&self.l2, &m2_coords),
            target: self.m2.clone(),
        };
        Ok(DeformationComplexModel {
            manifold: format!("Hopf {}", self.ty),
            stratum: stratum.to_string(),
            lambda0: FormedMultiVector::from_mv(&self.lambda0),
            h0_theta: self.h0_theta.clone(),
            h0_sq: self.h0_sq.clone(),
            h1_theta: self.m1.clone(),
            h1_sq: self.m2.clone(),
            h1_map: self.h1_map.clone(),
            h2_reducer: Arc::new(red),
        })
    }
}

/// `(dim ℍ⁰, dim ℍ¹, dim ℍ²)` of `(X, Λ0 = λ∂z∧∂w)`.
pub fn table5_dims(t: &HopfType, lambda0: &Poly) -> Result<(usize, usize, usize)> {
    Ok(HopfHyper::new(t, lambda0, t.default_degree())?.dims())
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfRow {
    pub ty: String,
    pub stratum: String,
    pub lambda0: String,
    pub h0_theta: Vec<String>,
    pub h0_sq: Vec<String>,
    pub m1: Vec<String>,
    pub m2: Vec<String>,
    pub automorphisms: Vec<String>,
    pub dims: (usize, usize, usize),
}

/// All strata with their bases and dimensions.
pub fn hopf_tables(p: u32, degree: Option<u32>) -> Result<Vec<HopfRow>> {
    let mut rows = Vec::new();
    for s in strata(p)? {
        let d = degree.unwrap_or_else(|| s.ty.default_degree());
        let h = HopfHyper::new(&s.ty, &s.lambda0, d)?;
        rows.push(HopfRow {
            ty: s.ty.to_string(),
            stratum: s.name.clone(),
            lambda0: s.lambda0.to_string(),
            h0_theta: h.h0_theta.labels(),
            h0_sq: h.h0_sq.labels(),
            m1: h.m1.labels(),
            m2: h.m2.labels(),
            automorphisms: h.poisson_automorphisms()?.iter().map(|x| x.to_string()).collect(),
            dims: h.dims(),
        });
    }
    Ok(rows)
}

/// Witness data for `Λ0 = 0`: `a = λ∂z∧∂w ∈ H⁰(∧²Θ)`, `b ∈ M₁`, and the
/// class of `[a, b]` in `M₂`.
#[derive(Clone, Debug)]
pub struct HopfWitness {
    pub a: MultiVector,
    pub b: MultiVector,
    pub class: MultiVector,
    pub coords: Vec<Poly>,
}

/// Instantiate the general bracket of an invariant bivector with an `M₁`
/// field for `Λ0 = 0`. IV takes `(A, B, C, d, e, f, g)` for
/// `a = Az² + Bzw + Cw²`, `b = (dz + ew)∂z + (fz + gw)∂w`; III takes
/// `(A, B, d, e, f)` for `a = Azw + Bw^{p+1}`, `b = (dz + ewᵖ)∂z + fw∂w`.
/// `None` when the class vanishes.
pub fn obstruction_witness(t: &HopfType, consts: &[i64]) -> Result<Option<HopfWitness>> {
    let p = t.p;
    let n = |i: usize| consts[i];
    let (a, b) = match t.kind {
        HopfKind::IV => {
            if consts.len() != 7 {
                return Err(Error::ConstraintViolation("type IV takes A, B, C, d, e, f, g".into()));
            }
            (
                format!("({}*z^2 + {}*z*w + {}*w^2)*@z^@w", n(0), n(1), n(2)),
                format!("({}*z + {}*w)*@z + ({}*z + {}*w)*@w", n(3), n(4), n(5), n(6)),
            )
        }
        HopfKind::III => {
            if consts.len() != 5 {
                return Err(Error::ConstraintViolation("type III takes A, B, d, e, f".into()));
            }
            (
                format!("({}*z*w + {}*w^{})*@z^@w", n(0), n(1), p + 1),
                format!("({}*z + {}*w^{p})*@z + {}*w*@w", n(2), n(3), n(4)),
            )
        }
        _ => return Err(Error::NotObstructedStratum(format!("type {t}"))),
    };
    let chart = HopfType::chart();
    let a = parse_mv(&a, &chart)?;
    let b = parse_mv(&b, &chart)?;
    let h = HopfHyper::new(t, &Poly::zero(), t.default_degree())?;
    let md = h.model("Λ0 = 0")?;
    let fa = FormedMultiVector::from_mv(&a);
    let fb = FormedMultiVector::from_mv(&b);
    h.h0_sq.coords(&fa)?;
    h.m1.coords(&fb)?;
    let coords = md.pair(&fa, &fb)?;
    if coords.iter().all(Poly::is_zero) {
        return Ok(None);
    }
    let class = h.m2.combine(&coords)?.form_part(0);
    Ok(Some(HopfWitness { a, b, class, coords }))
}

/// The obstruction certificate for `Λ0 = 0` on types IV and III.
pub fn obstruction_certificate_hopf(t: &HopfType) -> Result<Certificate> {
    if !matches!(t.kind, HopfKind::IV | HopfKind::III) {
        return Err(Error::NotObstructedStratum(format!("type {t}")));
    }
    let h = HopfHyper::new(t, &Poly::zero(), t.default_degree())?;
    let md = h.model("Λ0 = 0")?;
    let cert = r4_search(&md)?;
    if !cert.is_obstructed() {
        return Err(Error::NotObstructedStratum(format!("type {t}: {:?}", cert.verdict)));
    }
    cert.reverify(&md)?;
    Ok(cert)
}

/// Classify `(X, λ∂z∧∂w)`: `Λ0 = 0` on IV/III by a witness; strata with a
/// known complete family by verifying that family; the rest by `r4_search`.
pub fn classify(t: &HopfType, lambda0: &Poly) -> Result<Certificate> {
    let degree = t.default_degree();
    let h = HopfHyper::new(t, lambda0, degree)?;
    let stratum = format!("Λ0 = ({lambda0})*(@z^@w)");
    let md = h.model(&stratum)?;
    if lambda0.is_zero() && matches!(t.kind, HopfKind::IV | HopfKind::III) {
        let cert = r4_search(&md)?;
        cert.reverify(&md)?;
        return Ok(cert);
    }
    match super::family::family_for(t, lambda0)? {
        Some(fam) => {
            let rep = super::family::verify_hopf_family(&fam)?;
            let verdict = if rep.ok {
                Verdict::UnobstructedMC { family: fam.name.to_string(), checks: rep.checks }
            } else {
                Verdict::Undetermined { reason: format!("family {} failed: {}", fam.name, rep.checks.join("; ")) }
            };
            Ok(Certificate::new(&md, verdict))
        }
        None => r4_search(&md),
    }
}

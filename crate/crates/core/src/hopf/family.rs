use serde::Serialize;

use super::tables::HopfHyper;
use super::{HopfKind, HopfType};
use crate::arith::{Poly, RatFunc, Var};
use crate::mvf::MultiVector;
use crate::syntax::parse_poly;
use crate::{Error, Result};

/// A Poisson analytic family `(W × S/⟨F⟩, Λ_s ∂z∧∂w)` with `F(z,w,s)` and
/// `Λ_s` polynomial in the family parameters, specialising at `base` to the
/// contraction of `ty` and to `Λ0`.
#[derive(Clone, Debug)]
pub struct HopfFamily {
    pub name: &'static str,
    pub ty: HopfType,
    pub lambda0: Poly,
    pub lambda: Poly,
    pub map: [Poly; 2],
    pub params: Vec<&'static str>,
    /// values of the parameters at the base point; unlisted ones stay symbolic
    pub base: Vec<(&'static str, Poly)>,
}

fn ps(s: &str) -> Poly {
    parse_poly(s).expect("built-in polynomial parses")
}

pub const FAMILY_NAMES: [&str; 5] = ["hopf-iv", "hopf-iii", "hopf-iia", "hopf-iib", "hopf-iic"];

/// The complete family of a type on its generic stratum, with symbolic
/// Poisson constants `A, B, C`.
pub fn hopf_family(kind: HopfKind, p: u32) -> Result<HopfFamily> {
    let ty = HopfType::new(kind, p)?;
    let (p, q) = (ty.p, ty.p + 1);
    let fam = match kind {
        HopfKind::IV => HopfFamily {
            name: "hopf-iv",
            ty,
            lambda0: ps("A*z^2 + B*z*w + C*w^2"),
            lambda: ps("(1 + t)*(A*z^2 + B*z*w + C*w^2)"),
            map: [ps("(alpha + beta*B)*z + beta*C*w"), ps("-beta*A*z + alpha*w")],
            params: vec!["alpha", "beta", "t"],
            base: vec![("beta", Poly::zero()), ("t", Poly::zero())],
        },
        HopfKind::III => HopfFamily {
            name: "hopf-iii",
            ty,
            lambda0: ps(&format!("A*z*w + B*w^{q}")),
            lambda: ps(&format!("(1 + t)*(A*z*w + B*w^{q})")),
            map: [ps(&format!("alpha*z + B*A^(-1)*(alpha - delta^{p})*w^{p}")), ps("delta*w")],
            params: vec!["alpha", "delta", "t"],
            base: vec![("alpha", ps(&format!("delta^{p}"))), ("t", Poly::zero())],
        },
        HopfKind::IIa => HopfFamily {
            name: "hopf-iia",
            ty,
            lambda0: ps(&format!("A*w^{q}")),
            lambda: ps(&format!("(A + t)*((alpha - delta^{p})*z*w + w^{q})")),
            map: [ps(&format!("alpha*z + w^{p}")), ps("delta*w")],
            params: vec!["alpha", "delta", "t"],
            base: vec![("alpha", ps(&format!("delta^{p}"))), ("t", Poly::zero())],
        },
        HopfKind::IIb => HopfFamily {
            name: "hopf-iib",
            ty,
            lambda0: ps("A*w^2"),
            lambda: ps("(A + t)*(-beta*z^2 + w^2)"),
            map: [ps("alpha*z + w"), ps("beta*z + alpha*w")],
            params: vec!["alpha", "beta", "t"],
            base: vec![("beta", Poly::zero()), ("t", Poly::zero())],
        },
        HopfKind::IIc => HopfFamily {
            name: "hopf-iic",
            ty,
            lambda0: ps("A*z*w"),
            lambda: ps("(A + t)*z*w"),
            map: [ps("alpha*z"), ps("delta*w")],
            params: vec!["alpha", "delta", "t"],
            base: vec![("t", Poly::zero())],
        },
    };
    Ok(fam)
}

pub fn hopf_family_by_name(name: &str, p: u32) -> Result<HopfFamily> {
    let kind = match name {
        "hopf-iv" => HopfKind::IV,
        "hopf-iii" => HopfKind::III,
        "hopf-iia" => HopfKind::IIa,
        "hopf-iib" => HopfKind::IIb,
        "hopf-iic" => HopfKind::IIc,
        _ => return Err(Error::UnknownSymbol(format!("family {name}"))),
    };
    hopf_family(kind, p)
}

/// The candidate families for the two strata left open: IV with `Λ0 = Az²`
/// (a representative of `4AC = B²`) and III with `Λ0 = Aw^{p+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegenerateCase {
    IvSquare,
    IiiPure,
}

pub fn degenerate_family(case: DegenerateCase, p: u32) -> Result<HopfFamily> {
    Ok(match case {
        DegenerateCase::IvSquare => HopfFamily {
            name: "hopf-iv-square",
            ty: HopfType::new(HopfKind::IV, p)?,
            lambda0: ps("A*z^2"),
            lambda: ps("(A + t)*z^2"),
            map: [ps("alpha*z"), ps("beta*z + alpha*w")],
            params: vec!["alpha", "beta", "t"],
            base: vec![("beta", Poly::zero()), ("t", Poly::zero())],
        },
        DegenerateCase::IiiPure => {
            let ty = HopfType::new(HopfKind::III, p)?;
            let (p, q) = (ty.p, ty.p + 1);
            HopfFamily {
                name: "hopf-iii-pure",
                ty,
                lambda0: ps(&format!("A*w^{q}")),
                lambda: ps(&format!("(A + t)*w^{q}")),
                map: [ps(&format!("delta^{p}*z + lambda*w^{p}")), ps("delta*w")],
                params: vec!["delta", "lambda", "t"],
                base: vec![("lambda", Poly::zero()), ("t", Poly::zero())],
            }
        }
    })
}

impl HopfFamily {
    fn at_base(&self, f: &Poly) -> Result<Poly> {
        let pairs: Vec<(&str, Poly)> = self.base.iter().map(|(n, v)| (*n, v.clone())).collect();
        f.subs(&pairs)
    }

    /// Substitute values for Poisson constants throughout.
    pub fn specialize(&self, assign: &[(&str, Poly)]) -> Result<HopfFamily> {
        let mut out = self.clone();
        out.lambda0 = self.lambda0.subs(assign)?;
        out.lambda = self.lambda.subs(assign)?;
        out.map = [self.map[0].subs(assign)?, self.map[1].subs(assign)?];
        Ok(out)
    }
}

/// `Λ(F(z,w)) = det(DF)·Λ(z,w)`: the bivector `Λ∂z∧∂w` is invariant under
/// the generator `F`, hence under the group.
pub fn family_invariance(lambda: &Poly, map: &[Poly; 2]) -> Result<bool> {
    let (z, w) = (Var::new("z"), Var::new("w"));
    let lhs = lambda.subs(&[("z", map[0].clone()), ("w", map[1].clone())])?;
    let det = &(&map[0].partial(z) * &map[1].partial(w)) - &(&map[0].partial(w) * &map[1].partial(z));
    Ok(lhs == &det * lambda)
}

/// The image of `∂/∂s` in the pair space: `(∂Λ/∂s|₀ ∂z∧∂w, Q(f⁻¹x)·∂x)` with
/// `Q = ∂F/∂s|₀`.
#[derive(Clone, Debug)]
pub struct TauPair {
    pub param: &'static str,
    pub b: MultiVector,
    pub a: MultiVector,
}

pub fn tau(fam: &HopfFamily) -> Result<Vec<TauPair>> {
    let chart = HopfType::chart();
    let c = fam.ty.contraction();
    let mut out = Vec::new();
    for &s in &fam.params {
        let x = Var::new(s);
        let b = MultiVector::from_mask(&chart, 3, fam.at_base(&fam.lambda.partial(x))?);
        let mut a = MultiVector::zero(&chart);
        for (i, f) in fam.map.iter().enumerate() {
            let q = fam.at_base(&f.partial(x))?;
            a.add_comp(1 << i, &c.f.pull_function_to_target(&q)?);
        }
        out.push(TauPair { param: s, b, a });
    }
    Ok(out)
}

/// Membership of every `τ` pair in `D` and their `ℍ¹` classes.
#[derive(Clone, Debug)]
pub struct DMembership {
    pub pairs: Vec<TauPair>,
    pub classes: Vec<Vec<RatFunc>>,
    pub rank: usize,
    pub h1_dim: usize,
}

pub fn d_membership(fam: &HopfFamily) -> Result<DMembership> {
    let h = HopfHyper::new(&fam.ty, &fam.lambda0, fam.ty.default_degree())?;
    let pairs = tau(fam)?;
    let classes = pairs.iter().map(|t| h.class_of(&t.b, &t.a)).collect::<Result<Vec<_>>>()?;
    let rank = HopfHyper::class_rank(&classes);
    Ok(DMembership { pairs, classes, rank, h1_dim: h.dims().1 })
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfFamilyReport {
    pub family: String,
    pub ok: bool,
    pub checks: Vec<String>,
}

/// Invariance, base point, `D`-membership and full rank of the Poisson
/// Kodaira–Spencer image.
pub fn verify_hopf_family(fam: &HopfFamily) -> Result<HopfFamilyReport> {
    let mut checks = Vec::new();
    let mut ok = true;
    let mut record = |pass: bool, msg: String| {
        ok &= pass;
        checks.push(format!("{}: {msg}", if pass { "pass" } else { "FAIL" }));
    };
    record(family_invariance(&fam.lambda, &fam.map)?, "Λ(F) = det(DF)·Λ".into());
    let c = fam.ty.contraction();
    let f0 = [fam.at_base(&fam.map[0])?, fam.at_base(&fam.map[1])?];
    let fz = c.f.forward.get(&Var::new("z")).cloned().unwrap_or_default();
    let fw = c.f.forward.get(&Var::new("w")).cloned().unwrap_or_default();
    record(f0[0] == fz && f0[1] == fw, format!("F at the base point is the contraction of {}", fam.ty));
    record(fam.at_base(&fam.lambda)? == fam.lambda0, format!("Λ at the base point is {}", fam.lambda0));
    match d_membership(fam) {
        Ok(d) => {
            record(true, format!("{} pairs satisfy (id - f_*)B = [Λ0, A]", d.pairs.len()));
            record(
                d.rank == d.h1_dim && d.rank == fam.params.len(),
                format!("Kodaira-Spencer rank {} onto dim ℍ¹ = {}", d.rank, d.h1_dim),
            );
        }
        Err(Error::MembershipFails(m)) => record(false, format!("membership: {m}")),
        Err(e) => return Err(e),
    }
    Ok(HopfFamilyReport { family: fam.name.to_string(), ok, checks })
}

/// Whether the candidate family's `∂/∂t` image is the zero class in `ℍ¹`.
pub fn h95_degeneracy(case: DegenerateCase, p: u32) -> Result<bool> {
    let fam = degenerate_family(case, p)?;
    let h = HopfHyper::new(&fam.ty, &fam.lambda0, fam.ty.default_degree())?;
    let t = tau(&fam)?.into_iter().find(|t| t.param == "t").expect("t is a family parameter");
    Ok(h.class_of(&t.b, &t.a)?.iter().all(RatFunc::is_zero))
}

fn coeff(l: &Poly, mu: i32, nu: i32) -> Poly {
    l.collect(&[Var::new("z"), Var::new("w")]).get(&vec![mu, nu]).cloned().unwrap_or_default()
}

/// The complete family for `(t, λ∂z∧∂w)` specialised to the constants of
/// `λ`, or `None` on strata where no such family is known.
pub fn family_for(t: &HopfType, lambda0: &Poly) -> Result<Option<HopfFamily>> {
    let q = t.p as i32 + 1;
    let base = hopf_family(t.kind, t.p)?;
    let (assign, rebuilt, generic): (Vec<(&str, Poly)>, Poly, bool) = match t.kind {
        HopfKind::IV => {
            let (a, b, c) = (coeff(lambda0, 2, 0), coeff(lambda0, 1, 1), coeff(lambda0, 0, 2));
            let disc = &(&Poly::int(4) * &(&a * &c)) - &(&b * &b);
            let re = ps("A*z^2 + B*z*w + C*w^2").subs(&[("A", a.clone()), ("B", b.clone()), ("C", c.clone())])?;
            (vec![("A", a), ("B", b), ("C", c)], re, !disc.is_zero())
        }
        HopfKind::III => {
            let (a, b) = (coeff(lambda0, 1, 1), coeff(lambda0, 0, q));
            let re = ps(&format!("A*z*w + B*w^{q}")).subs(&[("A", a.clone()), ("B", b.clone())])?;
            let nz = !a.is_zero();
            (vec![("A", a), ("B", b)], re, nz)
        }
        HopfKind::IIa | HopfKind::IIb | HopfKind::IIc => {
            let (mu, nu) = match t.kind {
                HopfKind::IIa => (0, q),
                HopfKind::IIb => (0, 2),
                _ => (1, 1),
            };
            let a = coeff(lambda0, mu, nu);
            let re = base.lambda0.subs(&[("A", a.clone())])?;
            (vec![("A", a)], re, true)
        }
    };
    if rebuilt != *lambda0 {
        return Err(Error::ConstraintViolation(format!("{lambda0} is not an invariant bivector coefficient for {t}")));
    }
    if !generic {
        return Ok(None);
    }
    Ok(Some(base.specialize(&assign)?))
}

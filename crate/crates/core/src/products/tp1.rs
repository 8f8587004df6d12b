//! `T×P¹` with `T` a two-dimensional torus: the three classes of Poisson
//! structures and the explicit solution for the mixed class.

use std::fmt;

use super::ep1::{check_cokernel_f, ep1_bracket_matrices, ep1_cokernel_f};
use super::{fiber_quadratic, is_zero3, quad, scaled, Classified, McSolution, ProductKind, ProductModel};
use crate::arith::{Poly, Var};
use crate::mvf::{pushforward, Chart, ChartMap, ChartRef, Direction, FormedMultiVector, MultiVector};
use crate::obstruction::{r4_search, Certificate, DeformationComplexModel, Verdict};
use crate::{Error, Result};

pub const TP1_PARAMS: [&str; 9] = ["t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"];

pub(super) fn model_bases() -> ProductModel {
    let chart = Chart::with_dbar("TxP1", &["z1", "z2", "xi"], &["z1", "z2"]);
    let cat = |parts: Vec<Vec<String>>| parts.concat();
    let one = |s: &str| vec![s.to_string()];
    let theta = |suffix: &str| cat(vec![one(&format!("@z1{suffix}")), one(&format!("@z2{suffix}")), quad(&format!("@xi{suffix}"))]);
    let h1_theta = cat(vec![
        one("@z1*~z1"),
        one("@z2*~z1"),
        one("@z1*~z2"),
        one("@z2*~z2"),
        quad("@xi*~z1"),
        quad("@xi*~z2"),
    ]);
    let h0_sq = cat(vec![one("@z1^@z2"), quad("@z2^@xi"), quad("@xi^@z1")]);
    let h1_sq = cat(vec![
        one("@z1^@z2*~z1"),
        one("@z1^@z2*~z2"),
        quad("@z1^@xi*~z1"),
        quad("@z2^@xi*~z1"),
        quad("@z2^@xi*~z2"),
        quad("@z1^@xi*~z2"),
    ]);
    let h2_sq = cat(vec![one("@z1^@z2*~z1^~z2"), quad("@z1^@xi*~z1^~z2"), quad("@z2^@xi*~z1^~z2")]);
    ProductModel::from_lists(
        ProductKind::TorusP1,
        chart,
        vec![
            ((0, 1), theta("")),
            ((1, 1), h1_theta),
            ((2, 1), theta("*~z1^~z2")),
            ((0, 2), h0_sq),
            ((1, 2), h1_sq),
            ((2, 2), h2_sq),
            ((0, 3), quad("@z1^@z2^@xi")),
            ((1, 3), cat(vec![quad("@z1^@z2^@xi*~z1"), quad("@z1^@z2^@xi*~z2")])),
        ],
    )
}

fn chart() -> ChartRef {
    ProductModel::new(ProductKind::TorusP1).chart
}

/// One of the three normal forms `D ∂z1∧∂z2 (+ P ∂z2∧∂ξ + kP ∂ξ∧∂z1)` or
/// `D ∂z1∧∂z2 + P ∂ξ∧∂z1` with `P = A + Bξ + Cξ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tp1PoissonClass {
    pub id: u8,
    pub d: Poly,
    pub abc: [Poly; 3],
    pub k: Poly,
}

impl Tp1PoissonClass {
    pub fn scalar(d: Poly) -> Self {
        Tp1PoissonClass { id: 1, d, abc: [Poly::zero(), Poly::zero(), Poly::zero()], k: Poly::zero() }
    }

    pub fn mixed(d: Poly, a: Poly, b: Poly, c: Poly, k: Poly) -> Self {
        Tp1PoissonClass { id: 2, d, abc: [a, b, c], k }
    }

    pub fn fiber(d: Poly, a: Poly, b: Poly, c: Poly) -> Self {
        Tp1PoissonClass { id: 3, d, abc: [a, b, c], k: Poly::zero() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ConstraintViolation(format!("class {}: {m}", self.id)));
        match self.id {
            1 if !is_zero3(&self.abc) || !self.k.is_zero() => bad("only D may be set"),
            2 | 3 if is_zero3(&self.abc) => bad("(A, B, C) ≠ 0"),
            3 if !self.k.is_zero() => bad("k is not a parameter"),
            1..=3 => Ok(()),
            _ => bad("class must be 1, 2 or 3"),
        }
    }

    pub fn p(&self) -> Poly {
        fiber_quadratic(&self.abc)
    }

    pub fn lambda0(&self) -> MultiVector {
        let ch = chart();
        let p = self.p();
        let mut out = scaled(&self.d, "@z1^@z2", &ch);
        let add = |acc: FormedMultiVector, f: &Poly, src: &str| acc.add(&scaled(f, src, &ch)).expect("one chart");
        match self.id {
            2 => {
                out = add(out, &p, "@z2^@xi");
                out = add(out, &(&self.k * &p), "@xi^@z1");
            }
            3 => out = add(out, &p, "@xi^@z1"),
            _ => {}
        }
        out.form_part(0)
    }

    /// Class 3 is class 2 after exchanging `z1` and `z2`.
    pub fn swapped(&self) -> Option<Tp1PoissonClass> {
        (self.id == 3).then(|| {
            let [a, b, c] = &self.abc;
            Tp1PoissonClass::mixed(-&self.d, -a, -b, -c, Poly::zero())
        })
    }

    fn stratum(&self) -> String {
        format!("class {}: Λ0 = {}", self.id, self.lambda0())
    }
}

impl fmt::Display for Tp1PoissonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.stratum())
    }
}

/// `z1 ↔ z2` on the `T×P¹` chart.
pub fn swap_z(x: &MultiVector) -> Result<MultiVector> {
    let ch = chart();
    let s = |n: &str| Poly::sym(n);
    let pairs = [("z1", s("z2")), ("z2", s("z1")), ("xi", s("xi"))];
    let map = ChartMap::new(&ch, &ch, &pairs, Some(&pairs));
    pushforward(&map, x, Direction::Forward)
}

/// The three 2×2 minors `b1c0 − b0c1`, `b2c0 − b0c2`, `b2c1 − b1c2`.
pub fn tp1_poisson_minors(b: &[Poly; 3], c: &[Poly; 3]) -> [Poly; 3] {
    let m = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    [m(1, 0), m(2, 0), m(2, 1)]
}

/// The `∂z1∧∂z2∧∂ξ` coefficient of `[Λ0, Λ0]` for the general element
/// `a ∂z1∧∂z2 + (b·ξ) ∂z2∧∂ξ + (c·ξ) ∂ξ∧∂z1` of `H⁰(∧²Θ)`.
pub fn tp1_schouten_square(a: &Poly, b: &[Poly; 3], c: &[Poly; 3]) -> Result<Poly> {
    let ch = chart();
    let l = scaled(a, "@z1^@z2", &ch)
        .add(&scaled(&fiber_quadratic(b), "@z2^@xi", &ch))?
        .add(&scaled(&fiber_quadratic(c), "@xi^@z1", &ch))?
        .form_part(0);
    Ok(l.schouten(&l)?.comp(0b111))
}

pub fn tp1_model(c: &Tp1PoissonClass) -> Result<DeformationComplexModel> {
    c.validate()?;
    ProductModel::new(ProductKind::TorusP1).complex_model(&c.lambda0(), &c.stratum())
}

/// For the mixed class: `x(t) = Λ(t) + Λ′(t) + φ(t) + φ′(t)` with
/// `Λ = t0 ∂z1∧∂z2 + t2 F ∂z2∧∂ξ + (t1 P + k t2 F) ∂ξ∧∂z1`,
/// `Λ′ = t1 t2 F ∂ξ∧∂z1`,
/// `φ = (t3 ∂z1 + t4 ∂z2) dz̄1 + (t5 ∂z1 + t6 ∂z2) dz̄2 + (t7 dz̄1 + t8 dz̄2) P ∂ξ`,
/// `φ′ = t2 (t7 dz̄1 + t8 dz̄2) F ∂ξ`.
/// `F` spans the cokernel of `H⁰(Θ) → H⁰(∧²Θ)` restricted to the
/// `∂z2∧∂ξ` slot, which is the `E×P¹` map for the same `P`.
pub fn tp1_mc_solution(c: &Tp1PoissonClass, f: Option<[Poly; 3]>) -> Result<McSolution> {
    c.validate()?;
    if c.id != 2 {
        return Err(Error::ConstraintViolation(format!("class {} has no direct solution; use the z1↔z2 swap", c.id)));
    }
    let [a, b, cc] = &c.abc;
    let (_, h0) = ep1_bracket_matrices(a, b, cc)?;
    let f = match f {
        Some(f) => f,
        None => ep1_cokernel_f(a, b, cc)?,
    };
    check_cokernel_f(&h0, &f)?;

    let model = ProductModel::new(ProductKind::TorusP1);
    let ch = model.chart.clone();
    let t: Vec<Poly> = TP1_PARAMS.iter().map(|s| Poly::sym(s)).collect();
    let (p, ff) = (c.p(), fiber_quadratic(&f));
    let one = Poly::one();
    let f_class = scaled(&ff, "@z2^@xi", &ch).add(&scaled(&(&c.k * &ff), "@xi^@z1", &ch))?;
    let tangent = vec![
        scaled(&one, "@z1^@z2", &ch),
        scaled(&p, "@xi^@z1", &ch),
        f_class,
        scaled(&one, "@z1*~z1", &ch),
        scaled(&one, "@z2*~z1", &ch),
        scaled(&one, "@z1*~z2", &ch),
        scaled(&one, "@z2*~z2", &ch),
        scaled(&p, "@xi*~z1", &ch),
        scaled(&p, "@xi*~z2", &ch),
    ];
    let linear = |range: std::ops::Range<usize>| -> Result<FormedMultiVector> {
        range.into_iter().try_fold(FormedMultiVector::zero(&ch), |acc, i| acc.add(&tangent[i].mul_poly(&t[i])))
    };
    let t1t2 = &t[1] * &t[2];
    let lambda_p = scaled(&(&t1t2 * &ff), "@xi^@z1", &ch);
    let phi_p = scaled(&(&(&t[2] * &t[7]) * &ff), "@xi*~z1", &ch)
        .add(&scaled(&(&(&t[2] * &t[8]) * &ff), "@xi*~z2", &ch))?;
    let beta = linear(0..3)?.add(&lambda_p)?;
    let alpha = linear(3..9)?.add(&phi_p)?;
    Ok(McSolution {
        name: "tp1".to_string(),
        lambda0: c.lambda0(),
        beta,
        alpha,
        params: TP1_PARAMS.iter().map(|s| Var::new(s)).collect(),
        corrections: vec![("Λ′".to_string(), lambda_p), ("φ′".to_string(), phi_p)],
        tangent,
        model,
    })
}

/// Class 1: the witness search on `H⁰(∧²) × H¹(Θ)`; classes 2 and 3: the
/// explicit solution (class 3 through the swap).
pub fn tp1_classify(c: &Tp1PoissonClass) -> Result<Classified> {
    c.validate()?;
    let model = ProductModel::new(ProductKind::TorusP1);
    let l0 = c.lambda0();
    let [_, h1_dim, h2_dim] = model.hyper_dims(&l0)?;
    let md = model.complex_model(&l0, &c.stratum())?;
    let certificate = if c.id == 1 {
        let cert = r4_search(&md)?;
        cert.reverify(&md)?;
        cert
    } else {
        let (target, mut checks) = match c.swapped() {
            Some(s) => {
                let same = swap_z(&l0)? == s.lambda0();
                (s, vec![format!("{}: z1↔z2 carries Λ0 to class 2", if same { "pass" } else { "FAIL" })])
            }
            None => (c.clone(), vec![]),
        };
        let rep = tp1_mc_solution(&target, None)?.verify()?;
        let ok = rep.ok && checks.iter().all(|s| s.starts_with("pass"));
        checks.extend(rep.checks);
        let verdict = if ok {
            Verdict::UnobstructedMC { family: "tp1".to_string(), checks }
        } else {
            Verdict::Undetermined { reason: format!("tp1 solution failed: {}", checks.join("; ")) }
        };
        Certificate::new(&md, verdict)
    };
    Ok(Classified { certificate, h1_dim, h2_dim })
}

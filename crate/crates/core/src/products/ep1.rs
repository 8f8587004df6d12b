//! `E×P¹` with `Λ0 = (A + Bξ + Cξ²) ∂z∧∂ξ`.

use super::{fiber_quadratic, is_zero3, scaled, Classified, McSolution, ProductKind, ProductModel};
use crate::arith::{Poly, Var};
use crate::linalg::{cokernel_vectors, CokerReducer, LinMap};
use crate::mvf::{Chart, MultiVector};
use crate::obstruction::{r4_search, Certificate, Verdict};
use crate::{Error, Result};

pub const EP1_PARAMS: [&str; 3] = ["t0", "t1", "t2"];

pub(super) fn model_bases() -> ProductModel {
    let chart = Chart::with_dbar("ExP1", &["z", "xi"], &["z"]);
    let theta = |suffix: &str| {
        let mut v = vec![format!("@z{suffix}")];
        v.extend(super::quad(&format!("@xi{suffix}")));
        v
    };
    ProductModel::from_lists(
        ProductKind::EllipticP1,
        chart,
        vec![
            ((0, 1), theta("")),
            ((1, 1), theta("*~z")),
            ((0, 2), super::quad("@z^@xi")),
            ((1, 2), super::quad("@z^@xi*~z")),
            ((2, 1), vec![]),
            ((2, 2), vec![]),
        ],
    )
}

pub fn ep1_lambda0(a: &Poly, b: &Poly, c: &Poly) -> MultiVector {
    let chart = ProductModel::new(ProductKind::EllipticP1).chart;
    MultiVector::from_mask(&chart, 0b11, fiber_quadratic(&[a.clone(), b.clone(), c.clone()]))
}

fn stratum(a: &Poly, b: &Poly, c: &Poly) -> String {
    format!("Λ0 = ({})*(@z^@xi)", fiber_quadratic(&[a.clone(), b.clone(), c.clone()]))
}

/// `[Λ0, −]` on `H¹(Θ) → H¹(∧²Θ)` and on `H⁰(Θ) → H⁰(∧²Θ)`, in that order.
pub fn ep1_bracket_matrices(a: &Poly, b: &Poly, c: &Poly) -> Result<(LinMap, LinMap)> {
    let model = ProductModel::new(ProductKind::EllipticP1);
    let l0 = ep1_lambda0(a, b, c);
    let missing = || Error::NotInSpan("H(∧2Θ)".to_string());
    let h1 = model.bracket_map(&l0, 1, 1)?.ok_or_else(missing)?;
    let h0 = model.bracket_map(&l0, 0, 1)?.ok_or_else(missing)?;
    Ok((h1, h0))
}

pub fn ep1_model(a: &Poly, b: &Poly, c: &Poly) -> Result<crate::obstruction::DeformationComplexModel> {
    ProductModel::new(ProductKind::EllipticP1).complex_model(&ep1_lambda0(a, b, c), &stratum(a, b, c))
}

fn require_nonzero(a: &Poly, b: &Poly, c: &Poly) -> Result<[Poly; 3]> {
    let abc = [a.clone(), b.clone(), c.clone()];
    if is_zero3(&abc) {
        return Err(Error::ConstraintViolation("(A, B, C) ≠ 0".to_string()));
    }
    Ok(abc)
}

/// `(F0, F1, F2)` with `F(ξ) ∂z∧∂ξ` spanning the cokernel of `H⁰(Θ) → H⁰(∧²Θ)`.
pub fn ep1_cokernel_f(a: &Poly, b: &Poly, c: &Poly) -> Result<[Poly; 3]> {
    require_nonzero(a, b, c)?;
    let (_, h0) = ep1_bracket_matrices(a, b, c)?;
    let co = cokernel_vectors(&h0, &[]);
    let [v] = co.as_slice() else {
        return Err(Error::ConstraintViolation(format!("cokernel has dimension {}", co.len())));
    };
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// Reject `F` that is zero or lies in the image of `H⁰(Θ)`.
pub(super) fn check_cokernel_f(h0: &LinMap, f: &[Poly; 3]) -> Result<()> {
    let red = CokerReducer::new(h0, &cokernel_vectors(h0, &[]));
    if is_zero3(f) || red.in_image(f)? {
        return Err(Error::ConstraintViolation(format!("F = {} lies in the bracket image", fiber_quadratic(f))));
    }
    Ok(())
}

/// `x(t) = t0 F ∂z∧∂ξ + t1 ∂z dz̄ + t2 P ∂ξ dz̄ + t0 t2 F ∂ξ dz̄` with
/// `P = A + Bξ + Cξ²` and `F` a cokernel representative (given or chosen).
pub fn ep1_mc_solution(a: &Poly, b: &Poly, c: &Poly, f: Option<[Poly; 3]>) -> Result<McSolution> {
    let abc = require_nonzero(a, b, c)?;
    let (_, h0) = ep1_bracket_matrices(a, b, c)?;
    let f = match f {
        Some(f) => f,
        None => ep1_cokernel_f(a, b, c)?,
    };
    check_cokernel_f(&h0, &f)?;
    let model = ProductModel::new(ProductKind::EllipticP1);
    let chart = model.chart.clone();
    let [t0, t1, t2] = EP1_PARAMS.map(Poly::sym);
    let (p, ff) = (fiber_quadratic(&abc), fiber_quadratic(&f));

    let tangent = vec![scaled(&ff, "@z^@xi", &chart), scaled(&Poly::one(), "@z*~z", &chart), scaled(&p, "@xi*~z", &chart)];
    let correction = scaled(&(&(&t0 * &t2) * &ff), "@xi*~z", &chart);
    let beta = tangent[0].mul_poly(&t0);
    let alpha = tangent[1].mul_poly(&t1).add(&tangent[2].mul_poly(&t2))?.add(&correction)?;
    Ok(McSolution {
        name: "ep1".to_string(),
        lambda0: ep1_lambda0(a, b, c),
        beta,
        alpha,
        params: EP1_PARAMS.iter().map(|s| Var::new(s)).collect(),
        corrections: vec![("t0*t2*F*@xi*~z".to_string(), correction)],
        tangent,
        model,
    })
}

/// `(A,B,C) ≠ 0`: unobstructed by the explicit solution. `Λ0 = 0`: the
/// witness search finds `[∂z∧∂ξ, ξ∂ξ dz̄] = ∂z∧∂ξ dz̄` outside the image.
pub fn ep1_classify(a: &Poly, b: &Poly, c: &Poly) -> Result<Classified> {
    let model = ProductModel::new(ProductKind::EllipticP1);
    let l0 = ep1_lambda0(a, b, c);
    let [_, h1_dim, h2_dim] = model.hyper_dims(&l0)?;
    let md = model.complex_model(&l0, &stratum(a, b, c))?;
    let certificate = if is_zero3(&[a.clone(), b.clone(), c.clone()]) {
        let cert = r4_search(&md)?;
        cert.reverify(&md)?;
        cert
    } else {
        let rep = ep1_mc_solution(a, b, c, None)?.verify()?;
        let verdict = if rep.ok {
            Verdict::UnobstructedMC { family: "ep1".to_string(), checks: rep.checks }
        } else {
            Verdict::Undetermined { reason: format!("ep1 solution failed: {}", rep.checks.join("; ")) }
        };
        Certificate::new(&md, verdict)
    };
    Ok(Classified { certificate, h1_dim, h2_dim })
}

//! Complex tori `Cⁿ/Λ` with a constant Poisson structure. Every cohomology
//! group `H^q(∧^p Θ)` is spanned by constant fields `∂_I ⊗ dz̄_J`.

use super::{group_name, ProductKind, ProductModel};
use crate::arith::Poly;
use crate::linalg::LabeledBasis;
use crate::mvf::{Chart, FormedMultiVector, MultiVector};
use crate::{Error, Result};

fn masks(n: usize, k: u32) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() == k).collect()
}

pub(super) fn model_bases(n: usize) -> ProductModel {
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let chart = Chart::with_dbar(&format!("T{n}"), &refs, &refs);
    let mut bases = std::collections::BTreeMap::new();
    // ℍ⁰..ℍ² only see q ≤ 2 and p ≤ 3
    for q in 0..=2u32.min(n as u32) {
        for p in 1..=3u32.min(n as u32) {
            let mut elems = Vec::new();
            for d in masks(n, q) {
                for v in masks(n, p) {
                    let mut x = FormedMultiVector::zero(&chart);
                    x.add_comp(v, d, &Poly::one());
                    elems.push(x);
                }
            }
            bases.insert((q, p), LabeledBasis::new(&group_name(q, p), elems));
        }
    }
    ProductModel { kind: ProductKind::Torus(n), chart, bases }
}

pub fn torus_model(n: usize) -> Result<ProductModel> {
    if n == 0 {
        return Err(Error::ConstraintViolation("torus dimension n ≥ 1".to_string()));
    }
    Ok(model_bases(n))
}

/// `Σ_{i<j} b_ij ∂zi∧∂zj` with symbolic `b_ij`.
pub fn torus_lambda0(n: usize) -> Result<MultiVector> {
    let model = torus_model(n)?;
    let mut out = MultiVector::zero(&model.chart);
    for m in masks(n, 2) {
        let (i, j) = (m.trailing_zeros() + 1, 31 - m.leading_zeros() + 1);
        out.add_comp(m, &Poly::sym(&format!("b{i}_{j}")));
    }
    Ok(out)
}

/// `dim ℍ¹` for a constant `Λ0`, after checking that `[Λ0, −]` vanishes on
/// every constant basis the count depends on.
pub fn torus_dims(n: usize, lambda0: &MultiVector) -> Result<usize> {
    let model = torus_model(n)?;
    if **lambda0.chart() != *model.chart {
        return Err(Error::ChartMismatch(lambda0.chart().name().to_string(), model.chart.name().to_string()));
    }
    let l0 = lambda0.clone();
    let vars = model.chart.vars();
    if l0.comps().values().any(|p| p.vars().iter().any(|x| vars.contains(x))) {
        return Err(Error::ConstraintViolation("Λ0 must have constant coefficients".to_string()));
    }
    let f0 = FormedMultiVector::from_mv(&l0);
    for basis in model.bases.values() {
        for x in &basis.elements {
            if !f0.schouten(x)?.is_zero() {
                return Err(Error::NotACocycle(format!("[Λ0, {x}] ≠ 0")));
            }
        }
    }
    Ok(model.hyper_dims(&l0)?[1])
}

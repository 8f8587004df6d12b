//! `classify <manifold> --poisson <expr>`: parse the bivector in the
//! manifold's chart, read off its normal-form constants, and certify.

use anyhow::{bail, Context, Result};

use poissonlab::arith::{Poly, Var};
use poissonlab::hopf::{self, HopfKind, HopfType};
use poissonlab::mvf::{ChartRef, MultiVector};
use poissonlab::obstruction::Certificate;
use poissonlab::products::{ep1_classify, tp1_classify, ProductKind, ProductModel, Tp1PoissonClass};
use poissonlab::ruled::{table1_verdict, RuledPoisson, RuledSurface};
use poissonlab::syntax::parse_mv;

/// A bivector whose only component is `mask`.
fn single(x: &MultiVector, mask: u32, what: &str) -> Result<Poly> {
    if let Some(m) = x.comps().keys().find(|&&m| m != mask) {
        bail!("{what}: unexpected component with mask {m:#b} in {x}");
    }
    Ok(x.comp(mask))
}

/// `c0 + c1 ξ + c2 ξ²` → `[c0, c1, c2]`, each free of the chart variables.
fn xi_quadratic(p: &Poly, chart: &ChartRef, xi: &str) -> Result<[Poly; 3]> {
    let mut out = [Poly::zero(), Poly::zero(), Poly::zero()];
    for (e, c) in p.to_univariate(Var::new(xi)) {
        if !(0..=2).contains(&e) {
            bail!("{p} has ξ-degree {e} outside 0..2");
        }
        if c.vars().iter().any(|v| chart.vars().contains(v)) {
            bail!("{p} must have constant coefficients along the base");
        }
        out[e as usize] = c;
    }
    Ok(out)
}

fn ruled(m: u32, src: &str) -> Result<Certificate> {
    let s = RuledSurface::new(m);
    let c = single(&parse_mv(src, &s.u1)?, 0b11, "F_m")?;
    let mut def = [Poly::zero(), Poly::zero(), Poly::zero()];
    for (e, part) in c.to_univariate(Var::new("xi")) {
        if !(0..=2).contains(&e) {
            bail!("{c} has ξ-degree {e} outside 0..2");
        }
        def[e as usize] = part;
    }
    let [d, e, f] = def;
    Ok(table1_verdict(&RuledPoisson::new(m, d, e, f)?)?.certificate)
}

fn hopf_cert(spec: &str, src: &str) -> Result<Certificate> {
    let (kind, p) = match spec.split_once(':') {
        Some((k, p)) => (k, p.parse::<u32>().with_context(|| format!("exponent in `{spec}`"))?),
        None => (spec, 2),
    };
    let t = HopfType::new(kind.parse::<HopfKind>()?, p)?;
    let lambda = single(&parse_mv(src, &HopfType::chart())?, 0b11, "Hopf")?;
    Ok(hopf::classify(&t, &lambda)?)
}

fn ep1(src: &str) -> Result<Certificate> {
    let chart = ProductModel::new(ProductKind::EllipticP1).chart;
    let p = single(&parse_mv(src, &chart)?, 0b11, "E×P¹")?;
    let [a, b, c] = xi_quadratic(&p, &chart, "xi")?;
    Ok(ep1_classify(&a, &b, &c)?.certificate)
}

/// Normal form of `D ∂z1∧∂z2 + P ∂z2∧∂ξ + Q ∂ξ∧∂z1`: class 1 when
/// `P = Q = 0`, class 2 when `Q = kP`, class 3 when `P = 0`.
pub fn tp1_class(x: &MultiVector) -> Result<Tp1PoissonClass> {
    let chart = x.chart().clone();
    let d = x.comp(0b011);
    if d.vars().iter().any(|v| chart.vars().contains(v)) {
        bail!("D = {d} must be constant");
    }
    if let Some(m) = x.comps().keys().find(|&&m| ![0b011, 0b110, 0b101].contains(&m)) {
        bail!("T×P¹: unexpected component with mask {m:#b}");
    }
    let p = xi_quadratic(&x.comp(0b110), &chart, "xi")?;
    // ∂ξ∧∂z1 = −∂z1∧∂ξ
    let q = xi_quadratic(&-&x.comp(0b101), &chart, "xi")?;
    let zero = |c: &[Poly; 3]| c.iter().all(Poly::is_zero);
    let class = match (zero(&p), zero(&q)) {
        (true, true) => Tp1PoissonClass::scalar(d),
        (true, false) => {
            let [a, b, c] = q;
            Tp1PoissonClass::fiber(d, a, b, c)
        }
        (false, _) => {
            let i = p.iter().position(|c| !c.is_zero()).expect("p is nonzero");
            let k = q[i].div_exact(&p[i]).context("∂ξ∧∂z1 part is not a multiple of the ∂z2∧∂ξ part")?;
            if (0..3).any(|j| q[j] != &k * &p[j]) {
                bail!("[Λ0, Λ0] ≠ 0: the ∂ξ∧∂z1 and ∂z2∧∂ξ parts are not proportional");
            }
            let [a, b, c] = p;
            Tp1PoissonClass::mixed(d, a, b, c, k)
        }
    };
    Ok(class)
}

fn tp1(src: &str) -> Result<Certificate> {
    let chart = ProductModel::new(ProductKind::TorusP1).chart;
    let class = tp1_class(&parse_mv(src, &chart)?)?;
    Ok(tp1_classify(&class)?.certificate)
}

pub fn classify(manifold: &str, poisson: &str) -> Result<Certificate> {
    let lower = manifold.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("hopf-") {
        return hopf_cert(rest, poisson);
    }
    match lower.as_str() {
        "ep1" | "exp1" => ep1(poisson),
        "tp1" | "txp1" => tp1(poisson),
        _ => match lower.strip_prefix('f').map(str::parse::<u32>) {
            Some(Ok(m)) => ruled(m, poisson),
            _ => bail!("unknown manifold `{manifold}`; expected F<m>, hopf-<type>[:p], ep1 or tp1"),
        },
    }
}

use std::collections::HashMap;

use super::{hyper_h1, Cocycle, HyperH1, RuledSurface};
use crate::arith::{v, Poly, Var};
use crate::linalg::span_rank;
use crate::mvf::{pushforward, ChartMap, Direction, MultiVector};
use crate::syntax::parse_poly;
use crate::{Error, Result};

/// A deformation of `(F_m, Λ0)` given by the transition
/// `(z', ξ') = (1/z, z^m ξ + shift(z, t))` and the bivector `F(z, ξ, t) ∂z∧∂ξ`
/// on `U1`.
#[derive(Clone, Debug)]
pub struct RuledFamily {
    pub name: String,
    pub m: u32,
    pub params: Vec<Var>,
    pub shift: Poly,
    pub lambda: Poly,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub name: String,
    /// coefficient of `∂z'∧∂ξ'` on `U2`
    pub lambda_u2: Poly,
    /// one column per parameter, in ℍ¹ coordinates
    pub ks_columns: Vec<Vec<Poly>>,
    pub ks_rank: usize,
    pub h1_dim: usize,
}

fn params(n: usize) -> Vec<Var> {
    (1..=n).map(|i| v(&format!("t{i}"))).collect()
}

impl RuledFamily {
    pub fn new(name: &str, m: u32, nparams: usize, shift: &str, lambda: &str) -> Result<Self> {
        Ok(RuledFamily {
            name: name.to_string(),
            m,
            params: params(nparams),
            shift: parse_poly(shift)?,
            lambda: parse_poly(lambda)?,
        })
    }

    pub fn transition(&self, s: &RuledSurface) -> Result<ChartMap> {
        let m = self.m as i32;
        let zp = Poly::var_pow("zp", 1);
        let fwd_xi = &(&Poly::var_pow("z", m) * &Poly::var_pow("xi", 1)) + &self.shift;
        let shift_back = self.shift.subs(&[("z", Poly::var_pow("zp", -1))])?;
        let inv_xi = &Poly::var_pow("zp", m) * &(&Poly::var_pow("xip", 1) - &shift_back);
        let map = ChartMap::new(
            &s.u1,
            &s.u2,
            &[("zp", Poly::var_pow("z", -1)), ("xip", fwd_xi)],
            Some(&[("z", zp.powi(-1).expect("monomial")), ("xi", inv_xi)]),
        );
        if !map.check_inverse()? {
            return Err(Error::NonInvertibleSubstitution(format!("{}: transition inverse", self.name)));
        }
        Ok(map)
    }

    fn at_zero(&self, p: &Poly) -> Result<Poly> {
        let z: HashMap<Var, Poly> = self.params.iter().map(|&t| (t, Poly::zero())).collect();
        p.substitute(&z)
    }

    pub fn lambda0(&self) -> Result<Poly> {
        self.at_zero(&self.lambda)
    }

    /// The 10-parameter family over `(F_2, 0)`.
    pub fn f2() -> Self {
        Self::new("f2", 2, 10, "t1*z", &format!("{F2_PI} + t1*t5*z - t1^2*t9*z + 2*t1*t10*z*(z^2*xi+t1*z) - t1^2*t10*z^2"))
            .expect("f2")
    }

    pub fn f2_raw() -> Self {
        Self::new("f2-raw", 2, 10, "t1*z", F2_PI).expect("f2-raw")
    }

    /// The 11-parameter family over `(F_3, 0)`.
    pub fn f3() -> Self {
        Self::new("f3", 3, 11, "t1*z + t2*z^2", &format!("{F3_PI} {F3_CORR}")).expect("f3")
    }

    pub fn f3_raw() -> Self {
        Self::new("f3-raw", 3, 11, "t1*z + t2*z^2", F3_PI).expect("f3-raw")
    }

    /// The 5-parameter family over `(F_4, (zξ+zξ²)∂z∧∂ξ)`.
    pub fn f4() -> Self {
        Self::new("f4", 4, 5, F4_SHIFT, F4_A).expect("f4")
    }

    pub fn f4_raw() -> Self {
        Self::new("f4-raw", 4, 5, "t1*z + t2*z^3", "t2 + (2*t2+t3+z+t4*z)*xi + (z+t5*z^6)*xi^2").expect("f4-raw")
    }

    /// The 5-parameter family over `(F_5, zξ∂z∧∂ξ)`.
    pub fn f5() -> Self {
        Self::new("f5", 5, 5, F5_SHIFT, F5_A).expect("f5")
    }

    pub fn f5_raw() -> Self {
        Self::new("f5-raw", 5, 5, "t1*z + t2*z^4", "t2 + (z+t3*z)*xi + (t4+t5*z^7)*xi^2").expect("f5-raw")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Some(match name {
            "f2" => Self::f2(),
            "f3" => Self::f3(),
            "f4" => Self::f4(),
            "f5" => Self::f5(),
            "f2-raw" => Self::f2_raw(),
            "f3-raw" => Self::f3_raw(),
            "f4-raw" => Self::f4_raw(),
            "f5-raw" => Self::f5_raw(),
            _ => return None,
        })
    }
}

const F2_PI: &str = "t2 + (t3+t4*z+t5*z^2)*xi + (t6+t7*z+t8*z^2+t9*z^3+t10*z^4)*xi^2";

const F3_PI: &str = "(t3+t4*z+t5*z^2)*xi + (t6+t7*z+t8*z^2+t9*z^3+t10*z^4+t11*z^5)*xi^2";

const F3_CORR: &str = "- (-t2*t4-t1*t5+t8*t2^2+2*t1*t2*t9+t1^2*t10) \
    - (-t2*t5+t9*t2^2+2*t1*t2*t10+t1^2*t11)*z - (t10*t2^2+2*t1*t2*t11)*z^2 - t11*t2^2*z^3 \
    + 2*(t2*t10+t1*t11+t2*t11*z)*(z^3*xi+t1*z+t2*z^2)";

const F4_SHIFT: &str = "t1*z + t2*z^3 - (t2^2+t2*t3)*z^2";

const F4_A: &str = "t2 + (2*t2+t3+z+t4*z+t3*t4+t2*t4)*xi + (z+t5*z^6)*xi^2 \
    - ( -t2*t4 + t1^2*t5 + t2^2*t5*z^4 + t5*(t2^2+t2*t3)^2*z^2 \
    - 2*t1*t5*(z^3*xi+t1+t2*z^2-(t2^2+t2*t3)*z) \
    - (2*t2*t5*z-2*t5*(t2^2+t2*t3))*(z^4*xi+t1*z+t2*z^3-(t2^2+t2*t3)*z^2) \
    + 2*t1*t2*t5*z^2 - 2*t1*t5*(t2^2+t2*t3)*z - 2*t2*t5*(t2^2+t2*t3)*z^3 )";

const F5_SHIFT: &str = "t1*z + t2*z^4 + t2^2*t4*z^2 - t1^2*t5*z^3";

// The ξ² coefficient carries t3*t5*z^7, matching the corrected Π′; the
// closed form as printed repeats t5*z^7 instead.
const F5_A: &str = "t2 + (z+t3*z)*xi + (t4+t5*z^7+t3*t4+t3*t5*z^7)*xi^2 \
    + 2*t1*t5*(z^3*xi+t2*z^2+t2^2*t4-t1^2*t5*z) + 2*t1*t3*t5*(z^3*xi+t2*z^2+t2^2*t4-t1^2*t5*z) \
    + t2*t3 - (t5+t3*t5)*t2^2*z^5 + 2*(t5+t3*t5)*t2*(z^5*xi+t1*z+t2*z^4+t2^2*t4*z^2-t1^2*t5*z^3)*z \
    - 2*(t5+t3*t5)*t1*t2*z^2 - (t5+t3*t5)*t2^4*t4^2*z - (t5+t3*t5)*t1^4*t5^2*z^3 \
    + 2*(t5+t3*t5)*t2^2*t4*(z^4*xi+t1+t2*z^3+t2^2*t4*z-t1^2*t5*z^2) \
    - 2*(t5+t3*t5)*t1^2*t5*(z^5*xi+t1*z+t2*z^4+t2^2*t4*z^2-t1^2*t5*z^3) - 2*(t5+t3*t5)*t1*t2^2*t4 \
    + 2*(t5+t3*t5)*t1^3*t5*z - 2*(t5+t3*t5)*t2^3*t4*z^3 + 2*(t5+t3*t5)*t1^2*t2*t5*z^4 \
    + 2*(t5+t3*t5)*t1^2*t2^2*t4*t5*z^2";

/// The three family checks: holomorphic pushforward to `U2` for symbolic
/// `t`, `[Λ_t, Λ_t] = 0`, and a Kodaira–Spencer map of full rank onto ℍ¹.
pub fn verify_family(fam: &RuledFamily) -> Result<FamilyReport> {
    let s = RuledSurface::new(fam.m);
    let tm = fam.transition(&s)?;
    let lam = s.bivector(fam.lambda.clone());
    if !s.holomorphic_on_u1(&lam)? {
        return Err(Error::RationalPartSurvives { residual: format!("on U1: {}", fam.lambda) });
    }
    let on_u2 = pushforward(&tm, &lam, Direction::Forward)?;
    let g = on_u2.comp(0b11);
    let polar = g.polar_part(&[v("zp"), v("xip")]);
    if !polar.is_zero() {
        return Err(Error::RationalPartSurvives { residual: polar.to_string() });
    }
    if g.max_degree(v("xip")).unwrap_or(0) > 2 {
        return Err(Error::RationalPartSurvives { residual: format!("ξ'-degree above 2 in {g}") });
    }
    if !lam.schouten(&lam)?.is_zero() {
        return Err(Error::NotACocycle(format!("{}: [Λ_t, Λ_t] ≠ 0", fam.name)));
    }
    if !fam.at_zero(&fam.shift)?.is_zero() {
        return Err(Error::ConstraintViolation(format!("{}: transition at t=0 is not standard", fam.name)));
    }
    let hyper = hyper_h1(fam.m, &fam.lambda0()?)?;
    let mut cols = Vec::new();
    for &t in &fam.params {
        cols.push(hyper.class_of(&ks_cocycle(fam, &s, &g, t)?)?);
    }
    let n = hyper.dim();
    let rank = span_rank(&cols, n);
    if rank != n || cols.len() != n {
        return Err(Error::KsDegenerate { rank, expected: n });
    }
    Ok(FamilyReport { name: fam.name.clone(), lambda_u2: g, ks_columns: cols, ks_rank: rank, h1_dim: hyper.dim() })
}

/// The `∂/∂t` cocycle at `t = 0`: `λ1 = ∂F/∂t`, `λ2 = ∂G/∂t` with `G` the
/// `U2` coefficient, `θ = (∂ξ'/∂t) ∂ξ'`.
pub(crate) fn ks_cocycle(fam: &RuledFamily, s: &RuledSurface, g: &Poly, t: Var) -> Result<Cocycle> {
    let l1 = fam.at_zero(&fam.lambda.partial(t))?;
    let l2 = fam.at_zero(&g.partial(t))?;
    let th = fam.at_zero(&fam.shift.partial(t))?.subs(&[("z", Poly::var_pow("zp", -1))])?;
    Ok(Cocycle {
        lambda1: s.bivector(l1),
        lambda2: MultiVector::from_mask(&s.u2, 0b11, l2),
        theta: s.to_u1(&MultiVector::from_mask(&s.u2, 0b10, th))?,
    })
}

/// ℍ¹ data of a family's central fiber.
pub fn family_h1(fam: &RuledFamily) -> Result<HyperH1> {
    hyper_h1(fam.m, &fam.lambda0()?)
}

use super::{Cocycle, RuledSurface};
use crate::arith::{GaussRat, Poly};
use crate::linalg::kernel_basis;
use crate::mvf::MultiVector;
use crate::Result;

/// The 2-cochain `γ_j = −[λ_j, λ_j]`, `η = −[λ1 + λ2, θ]` built from a
/// 1-cocycle, together with the two identity defects.
#[derive(Clone, Debug)]
pub struct CechSquare {
    pub gamma1: MultiVector,
    pub gamma2: MultiVector,
    pub eta: MultiVector,
    /// `[Λ0, γ1]` and `[Λ0, γ2]`
    pub lambda0_gamma: (MultiVector, MultiVector),
    /// `−(γ1 − γ2) + [Λ0, η]` on the overlap
    pub delta_defect: MultiVector,
}

impl CechSquare {
    pub fn identities_hold(&self) -> bool {
        self.lambda0_gamma.0.is_zero() && self.lambda0_gamma.1.is_zero() && self.delta_defect.is_zero()
    }
}

pub fn cech_square(s: &RuledSurface, lambda0: &MultiVector, c: &Cocycle) -> Result<CechSquare> {
    s.check_cocycle(lambda0, c)?;
    let l0_u2 = s.to_u2(lambda0)?;
    for (l0, l) in [(lambda0, &c.lambda1), (&l0_u2, &c.lambda2)] {
        let d = l0.schouten(l)?;
        if !d.is_zero() {
            return Err(crate::Error::NotACocycle(format!("[Λ0, λ] = {d}")));
        }
    }
    let gamma1 = -&c.lambda1.schouten(&c.lambda1)?;
    let gamma2 = -&c.lambda2.schouten(&c.lambda2)?;
    let l2 = s.to_u1(&c.lambda2)?;
    let eta = -&c.lambda1.add(&l2)?.schouten(&c.theta)?;
    let lambda0_gamma = (lambda0.schouten(&gamma1)?, l0_u2.schouten(&gamma2)?);
    let delta = gamma1.sub(&s.to_u1(&gamma2)?)?;
    let delta_defect = lambda0.schouten(&eta)?.sub(&delta)?;
    Ok(CechSquare { gamma1, gamma2, eta, lambda0_gamma, delta_defect })
}

fn rand_poly(vars: [&str; 2], deg: [i32; 2], next: &mut dyn FnMut() -> i64) -> Poly {
    let mut p = Poly::zero();
    for a in 0..=deg[0] {
        for j in 0..=deg[1] {
            let c = next();
            if c != 0 {
                p += &(&Poly::var_pow(vars[0], a) * &Poly::var_pow(vars[1], j)).scale(&GaussRat::from_int(c));
            }
        }
    }
    p
}

/// A valid 1-cocycle on `(F_m, Λ0)` assembled from a random global
/// bivector, random local fields `b1`, `b2`, and a random kernel element of
/// `[Λ0, −]` on `H¹(Θ)`; `next` supplies integer coefficients.
pub fn random_cocycle(s: &RuledSurface, lambda0: &MultiVector, next: &mut dyn FnMut() -> i64) -> Result<Cocycle> {
    let mut b1 = MultiVector::zero(&s.u1);
    b1.add_comp(0b01, &rand_poly(["z", "xi"], [3, 0], next));
    b1.add_comp(0b10, &rand_poly(["z", "xi"], [3, 2], next));
    let mut b2 = MultiVector::zero(&s.u2);
    b2.add_comp(0b01, &rand_poly(["zp", "xip"], [3, 0], next));
    b2.add_comp(0b10, &rand_poly(["zp", "xip"], [3, 2], next));
    let h0 = s.h0_bivectors();
    let coeffs: Vec<Poly> = (0..h0.len()).map(|_| Poly::int(next())).collect();
    let global = h0.combine(&coeffs)?.form_part(0);

    let hyper = super::hyper_h1(s.m, &lambda0.comp(0b11))?;
    let ker = kernel_basis(&hyper.h1_map);
    let mut g = MultiVector::zero(&s.u1);
    let h1 = s.h1_theta();
    for k in &ker {
        let x = Poly::int(next());
        g = g.add(&h1.combine(k)?.form_part(0).mul_poly(&x))?;
    }
    let corr = s.split_bivector(&lambda0.schouten(&g)?)?;

    let theta = g.add(&s.to_u1(&b2)?)?.sub(&b1)?;
    let lambda1 = global.add(&lambda0.schouten(&b1)?)?.add(&corr.b1)?;
    let lambda2 = s.to_u2(&global)?.add(&s.to_u2(lambda0)?.schouten(&b2)?)?.add(&corr.b2)?;
    Ok(Cocycle { lambda1, lambda2, theta })
}

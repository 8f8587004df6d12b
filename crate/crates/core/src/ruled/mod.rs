//! Hirzebruch surfaces `F_m` on the standard two-chart cover
//! `U1 = (z, ξ)`, `U2 = (z', ξ')` with `z' = 1/z`, `ξ' = z^m ξ`, plus the
//! fiber-infinity charts `(z, 1/ξ)` and `(z', 1/ξ')` used for global checks.

mod cech;
mod family;

use std::collections::BTreeMap;

pub use cech::{cech_square, random_cocycle, CechSquare};
pub use family::{family_h1, verify_family, FamilyReport, RuledFamily};

use crate::arith::{v, Poly, Var};
use crate::linalg::matrix::{from_columns, solve};
use crate::linalg::{
    cokernel_vectors, generic_rank, kernel_basis, matrix_of_map, BasisReducer, CokerReducer, LabeledBasis, LinMap, Reducer,
};
use crate::mvf::{pushforward, Chart, ChartMap, ChartRef, Direction, FormedMultiVector, MultiVector};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RuledSurface {
    pub m: u32,
    pub u1: ChartRef,
    pub u2: ChartRef,
    pub u3: ChartRef,
    pub u4: ChartRef,
    /// `U1 → U2`
    pub transition: ChartMap,
    /// `U1 → (z, 1/ξ)`
    pub fiber1: ChartMap,
    /// `U2 → (z', 1/ξ')`
    pub fiber2: ChartMap,
}

/// A Čech 1-cochain of the Poisson complex on the standard cover:
/// bivectors `λ1` on `U1`, `λ2` on `U2`, and the field `θ = θ21` on the
/// overlap written in `U1` coordinates. It is a cocycle when
/// `λ1 − λ2 + [Λ0, θ] = 0` on the overlap.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub lambda1: MultiVector,
    pub lambda2: MultiVector,
    pub theta: MultiVector,
}

/// `x = Σ gap_k e_k + b2 − b1` on the overlap, with `b1` holomorphic on
/// `U1` and `b2` holomorphic on `U2` (written in `U2` coordinates).
#[derive(Clone, Debug)]
pub struct Split {
    pub gap: Vec<Poly>,
    pub b1: MultiVector,
    pub b2: MultiVector,
}

fn zpow(x: &str, e: i32) -> Poly {
    Poly::var_pow(x, e)
}

impl RuledSurface {
    pub fn new(m: u32) -> Self {
        let mi = m as i32;
        let u1 = Chart::new("U1", &["z", "xi"]);
        let u2 = Chart::new("U2", &["zp", "xip"]);
        let u3 = Chart::new("U3", &["z", "eta"]);
        let u4 = Chart::new("U4", &["zp", "etap"]);
        let transition = ChartMap::new(
            &u1,
            &u2,
            &[("zp", zpow("z", -1)), ("xip", &zpow("z", mi) * &zpow("xi", 1))],
            Some(&[("z", zpow("zp", -1)), ("xi", &zpow("zp", mi) * &zpow("xip", 1))]),
        );
        let fiber1 = ChartMap::new(
            &u1,
            &u3,
            &[("z", zpow("z", 1)), ("eta", zpow("xi", -1))],
            Some(&[("z", zpow("z", 1)), ("xi", zpow("eta", -1))]),
        );
        let fiber2 = ChartMap::new(
            &u2,
            &u4,
            &[("zp", zpow("zp", 1)), ("etap", zpow("xip", -1))],
            Some(&[("zp", zpow("zp", 1)), ("xip", zpow("etap", -1))]),
        );
        RuledSurface { m, u1, u2, u3, u4, transition, fiber1, fiber2 }
    }

    fn vars1(&self) -> [Var; 2] {
        [v("z"), v("xi")]
    }

    /// `f ∂z∧∂ξ` on `U1`.
    pub fn bivector(&self, f: Poly) -> MultiVector {
        MultiVector::from_mask(&self.u1, 0b11, f)
    }

    fn field(&self, dz: Poly, dxi: Poly) -> MultiVector {
        let mut x = MultiVector::zero(&self.u1);
        x.add_comp(0b01, &dz);
        x.add_comp(0b10, &dxi);
        x
    }

    pub fn to_u1(&self, x: &MultiVector) -> Result<MultiVector> {
        pushforward(&self.transition, x, Direction::Backward)
    }

    pub fn to_u2(&self, x: &MultiVector) -> Result<MultiVector> {
        pushforward(&self.transition, x, Direction::Forward)
    }

    /// Holomorphic on `U1` including the fiber point at infinity.
    pub fn holomorphic_on_u1(&self, x: &MultiVector) -> Result<bool> {
        let hol = |y: &MultiVector| y.comps().values().all(|p| p.is_holomorphic(y.chart().vars()));
        Ok(hol(x) && hol(&pushforward(&self.fiber1, x, Direction::Forward)?))
    }

    /// Holomorphic on `U2` (given in `U2` coordinates), fiber infinity included.
    pub fn holomorphic_on_u2(&self, x: &MultiVector) -> Result<bool> {
        let hol = |y: &MultiVector| y.comps().values().all(|p| p.is_holomorphic(y.chart().vars()));
        Ok(hol(x) && hol(&pushforward(&self.fiber2, x, Direction::Forward)?))
    }

    /// A `U1` expression extends to a global holomorphic field.
    pub fn is_global(&self, x: &MultiVector) -> Result<bool> {
        Ok(self.holomorphic_on_u1(x)? && self.holomorphic_on_u2(&self.to_u2(x)?)?)
    }

    /// Global vector fields `a∂z + (b ξ + c ξ² + const)∂ξ`, listed
    /// `g0∂z, g1 z∂z, g2(z²∂z − m zξ∂ξ), ξ∂ξ, z^k ξ²∂ξ` (and `∂ξ` for `m = 0`).
    pub fn h0_theta(&self) -> LabeledBasis {
        let m = self.m as i32;
        let z = |e| zpow("z", e);
        let xi = |e| zpow("xi", e);
        let mut els = vec![
            self.field(Poly::one(), Poly::zero()),
            self.field(z(1), Poly::zero()),
            self.field(z(2), (&z(1) * &xi(1)).scale(&crate::arith::GaussRat::from_int(-(m as i64)))),
        ];
        if m == 0 {
            els.push(self.field(Poly::zero(), Poly::one()));
        }
        els.push(self.field(Poly::zero(), xi(1)));
        for k in 0..=m {
            els.push(self.field(Poly::zero(), &z(k) * &xi(2)));
        }
        LabeledBasis::from_mvs("H0(Theta)", els)
    }

    /// Global bivectors `(d + eξ + fξ²)∂z∧∂ξ`, ordered d-, e-, f-coefficients
    /// by ascending power of `z`.
    pub fn h0_bivectors(&self) -> LabeledBasis {
        let m = self.m as i32;
        let mut els = Vec::new();
        for (j, top) in [(0, 2 - m), (1, 2), (2, m + 2)] {
            for k in 0..=top {
                els.push(self.bivector(&zpow("z", k) * &zpow("xi", j)));
            }
        }
        LabeledBasis::from_mvs("H0(wedge2 Theta)", els)
    }

    /// `z^{-k}∂ξ`, `k = 1..m−1`.
    pub fn h1_theta(&self) -> LabeledBasis {
        let m = self.m as i32;
        let els = (1..m).map(|k| self.field(Poly::zero(), zpow("z", -k))).collect();
        LabeledBasis::from_mvs("H1(Theta)", els)
    }

    /// `z^{-k}∂z∧∂ξ`, `k = 1..m−3`.
    pub fn h1_bivectors(&self) -> LabeledBasis {
        let m = self.m as i32;
        let els = (1..m - 2).map(|k| self.bivector(zpow("z", -k))).collect();
        LabeledBasis::from_mvs("H1(wedge2 Theta)", els)
    }

    fn check_split(&self, x: &MultiVector, s: &Split, basis: &LabeledBasis) -> Result<()> {
        let gap = if basis.is_empty() { MultiVector::zero(&self.u1) } else { basis.combine(&s.gap)?.form_part(0) };
        let back = gap.add(&self.to_u1(&s.b2)?)?.sub(&s.b1)?;
        if back != *x {
            return Err(Error::NotInSpan(format!("split does not reproduce {x}")));
        }
        Ok(())
    }

    /// Canonical splitting of an overlap vector field.
    pub fn split_theta(&self, th: &MultiVector) -> Result<Split> {
        if th.comps().keys().any(|&k| k != 0b01 && k != 0b10) {
            return Err(Error::NotInSpan(format!("{th} is not a vector field")));
        }
        let m = self.m as i32;
        let vars = self.vars1();
        let mut gap = vec![Poly::zero(); (m - 1).max(0) as usize];
        let mut b1 = MultiVector::zero(&self.u1);
        let mut b2 = MultiVector::zero(&self.u2);
        let mut rest = th.clone();
        // ∂z terms first: their U2 lifts spill into ξ∂ξ
        for (e, c) in th.comp(0b01).collect(&vars) {
            let (a, j) = (e[0], e[1]);
            if j != 0 {
                return Err(Error::NotInSpan(format!("ξ-dependent ∂z coefficient in {th}")));
            }
            if a >= 0 {
                let t = MultiVector::from_mask(&self.u1, 0b01, &zpow("z", a) * &c);
                b1 = b1.sub(&t)?;
                rest = rest.sub(&t)?;
            } else {
                let u = MultiVector::from_mask(&self.u2, 0b01, &zpow("zp", 2 - a) * &(-&c));
                rest = rest.sub(&self.to_u1(&u)?)?;
                b2 = b2.add(&u)?;
            }
        }
        for (e, c) in rest.comp(0b10).collect(&vars) {
            let (a, j) = (e[0], e[1]);
            let here = MultiVector::from_mask(&self.u1, 0b10, &(&zpow("z", a) * &zpow("xi", j)) * &c);
            if a >= 0 && (0..=2).contains(&j) {
                b1 = b1.sub(&here)?;
                continue;
            }
            let there = |s: i32, jj: i32| MultiVector::from_mask(&self.u2, 0b10, &(&zpow("zp", s) * &zpow("xip", jj)) * &c);
            match j {
                0 if a <= -m => b2 = b2.add(&there(-a - m, 0))?,
                0 => gap[(-a - 1) as usize] += &c,
                1 => b2 = b2.add(&there(-a, 1))?,
                2 => b2 = b2.add(&there(m - a, 2))?,
                _ => return Err(Error::NotInSpan(format!("ξ-degree {j} in {th}"))),
            }
        }
        let s = Split { gap, b1, b2 };
        self.check_split(th, &s, &self.h1_theta())?;
        Ok(s)
    }

    /// Canonical splitting of an overlap bivector.
    pub fn split_bivector(&self, l: &MultiVector) -> Result<Split> {
        if l.comps().keys().any(|&k| k != 0b11) {
            return Err(Error::NotInSpan(format!("{l} is not a bivector")));
        }
        let m = self.m as i32;
        let mut gap = vec![Poly::zero(); (m - 3).max(0) as usize];
        let mut b1 = MultiVector::zero(&self.u1);
        let mut b2 = MultiVector::zero(&self.u2);
        for (e, c) in l.comp(0b11).collect(&self.vars1()) {
            let (a, j) = (e[0], e[1]);
            if a >= 0 && (0..=2).contains(&j) {
                b1 = b1.sub(&self.bivector(&(&zpow("z", a) * &zpow("xi", j)) * &c))?;
                continue;
            }
            // zp^s xip^j ∂zp∧∂xip = −z^{2−m−s+mj} ξ^j ∂z∧∂ξ
            let s = match j {
                0 if a <= 2 - m => 2 - m - a,
                0 => {
                    gap[(-a - 1) as usize] += &c;
                    continue;
                }
                1 | 2 => 2 - m + m * j - a,
                _ => return Err(Error::NotInSpan(format!("ξ-degree {j} in {l}"))),
            };
            b2 = b2.add(&MultiVector::from_mask(&self.u2, 0b11, &(&zpow("zp", s) * &zpow("xip", j)) * &(-&c)))?;
        }
        let s = Split { gap, b1, b2 };
        self.check_split(l, &s, &self.h1_bivectors())?;
        Ok(s)
    }

    /// `λ1 − λ2 + [Λ0, θ]` on the overlap.
    pub fn cocycle_defect(&self, lambda0: &MultiVector, c: &Cocycle) -> Result<MultiVector> {
        c.lambda1.sub(&self.to_u1(&c.lambda2)?)?.add(&lambda0.schouten(&c.theta)?)
    }

    pub fn check_cocycle(&self, lambda0: &MultiVector, c: &Cocycle) -> Result<()> {
        if !self.holomorphic_on_u1(&c.lambda1)? {
            return Err(Error::NotACocycle(format!("λ1 = {} is not holomorphic on U1", c.lambda1)));
        }
        if !self.holomorphic_on_u2(&c.lambda2)? {
            return Err(Error::NotACocycle(format!("λ2 = {} is not holomorphic on U2", c.lambda2)));
        }
        let d = self.cocycle_defect(lambda0, c)?;
        if !d.is_zero() {
            return Err(Error::NotACocycle(format!("λ1 − λ2 + [Λ0, θ] = {d}")));
        }
        Ok(())
    }
}

/// Gap coordinates of an overlap field in `H¹`.
pub struct H1Reducer {
    surface: RuledSurface,
    basis: LabeledBasis,
    bivectors: bool,
}

impl H1Reducer {
    pub fn theta(s: &RuledSurface) -> Self {
        H1Reducer { surface: s.clone(), basis: s.h1_theta(), bivectors: false }
    }

    pub fn bivectors(s: &RuledSurface) -> Self {
        H1Reducer { surface: s.clone(), basis: s.h1_bivectors(), bivectors: true }
    }
}

impl Reducer for H1Reducer {
    fn reduce(&self, x: &FormedMultiVector) -> Result<Vec<Poly>> {
        let mv = x.form_part(0);
        let s = if self.bivectors { self.surface.split_bivector(&mv)? } else { self.surface.split_theta(&mv)? };
        Ok(s.gap)
    }

    fn target(&self) -> &LabeledBasis {
        &self.basis
    }
}

/// Poisson cohomology data of `(F_m, Λ0)`: `ℍ¹ = coker(H⁰ map) ⊕ ker(H¹ map)`,
/// `ℍ² = coker(H¹ map)`.
#[derive(Clone, Debug)]
pub struct HyperH1 {
    pub surface: RuledSurface,
    pub lambda0: MultiVector,
    pub h0_map: LinMap,
    pub h1_map: LinMap,
    pub coker_vectors: Vec<Vec<Poly>>,
    pub coker: LabeledBasis,
    pub ker_vectors: Vec<Vec<Poly>>,
    pub ker: LabeledBasis,
    pub coker_reducer: CokerReducer,
}

impl HyperH1 {
    pub fn dim(&self) -> usize {
        self.coker_vectors.len() + self.ker_vectors.len()
    }

    pub fn dim_h2(&self) -> usize {
        self.h1_map.nrows() - generic_rank(&self.h1_map)
    }

    /// Class of a cocycle: complement coordinates of its global bivector part
    /// followed by kernel coordinates of its `H¹(Θ)` part.
    pub fn class_of(&self, c: &Cocycle) -> Result<Vec<Poly>> {
        let s = &self.surface;
        let l0 = &self.lambda0;
        s.check_cocycle(l0, c)?;
        let th = s.split_theta(&c.theta)?;
        let l1 = c.lambda1.sub(&l0.schouten(&th.b1)?)?;
        let gap_field =
            if th.gap.is_empty() { MultiVector::zero(&s.u1) } else { s.h1_theta().combine(&th.gap)?.form_part(0) };
        let corr = s.split_bivector(&l0.schouten(&gap_field)?)?;
        if corr.gap.iter().any(|g| !g.is_zero()) {
            return Err(Error::NotACocycle("H¹(Θ) part is not in the kernel".into()));
        }
        let global = l1.sub(&corr.b1)?;
        if !s.is_global(&global)? {
            return Err(Error::NotACocycle(format!("{global} is not global")));
        }
        let h0 = s.h0_bivectors().coords(&FormedMultiVector::from_mv(&global))?;
        let mut out = self.coker_reducer.reduce(&h0)?;
        if !self.ker_vectors.is_empty() {
            let a = from_columns(&self.ker_vectors, th.gap.len());
            let x = solve(&a, &th.gap).ok_or_else(|| Error::NotInSpan("ker".into()))?;
            for r in x {
                out.push(r.as_poly().ok_or_else(|| Error::NotPolynomial(r.to_string()))?);
            }
        }
        Ok(out)
    }
}

pub fn hyper_h1(m: u32, lambda0_coeff: &Poly) -> Result<HyperH1> {
    let s = RuledSurface::new(m);
    let l0 = s.bivector(lambda0_coeff.clone());
    if !s.is_global(&l0)? {
        return Err(Error::ConstraintViolation(format!("{l0} is not a global bivector on F_{m}")));
    }
    let fl0 = FormedMultiVector::from_mv(&l0);
    let bracket = |x: &FormedMultiVector| fl0.schouten(x);
    let h0b = s.h0_bivectors();
    let h0_map = matrix_of_map(bracket, &s.h0_theta(), &h0b, &BasisReducer(h0b.clone()))?;
    let h1_map = matrix_of_map(bracket, &s.h1_theta(), &s.h1_bivectors(), &H1Reducer::bivectors(&s))?;
    let coker_vectors = cokernel_vectors(&h0_map, &[]);
    let mut coker_els = Vec::new();
    for c in &coker_vectors {
        coker_els.push(h0b.combine(c)?);
    }
    let ker_vectors = kernel_basis(&h1_map);
    let mut ker_els = Vec::new();
    for k in &ker_vectors {
        ker_els.push(s.h1_theta().combine(k)?);
    }
    let coker_reducer = CokerReducer::new(&h0_map, &coker_vectors);
    Ok(HyperH1 {
        surface: s,
        lambda0: l0,
        h0_map,
        h1_map,
        coker: LabeledBasis::new("coker H0", coker_els),
        coker_vectors,
        ker: LabeledBasis::new("ker H1", ker_els),
        ker_vectors,
        coker_reducer,
    })
}

/// `h⁰(Θ), h⁰(∧²Θ), h¹(Θ), h¹(∧²Θ)` for `F_m`.
pub fn h_dims(m: u32) -> [usize; 4] {
    let s = RuledSurface::new(m);
    [s.h0_theta().len(), s.h0_bivectors().len(), s.h1_theta().len(), s.h1_bivectors().len()]
}

/// Coefficient map by `(z-exponent, ξ-exponent)` of a `U1` bivector.
pub fn bivector_terms(x: &MultiVector) -> BTreeMap<Vec<i32>, Poly> {
    x.comp(0b11).collect(&[v("z"), v("xi")])
}

#[cfg(test)]
mod tests;

/// `(d + eξ + fξ²)∂z∧∂ξ` with polynomial `d, e, f` in `z`, checked global
/// on `F_m` at construction.
#[derive(Clone, Debug)]
pub struct RuledPoisson {
    pub m: u32,
    pub d: Poly,
    pub e: Poly,
    pub f: Poly,
}

impl RuledPoisson {
    pub fn new(m: u32, d: Poly, e: Poly, f: Poly) -> Result<Self> {
        let p = RuledPoisson { m, d, e, f };
        let s = RuledSurface::new(m);
        if !s.is_global(&s.bivector(p.coeff()))? {
            return Err(Error::ConstraintViolation(format!("{} is not global on F_{m}", p.coeff())));
        }
        Ok(p)
    }

    /// From coefficient lists, lowest power of `z` first.
    pub fn from_coeffs(m: u32, d: &[i64], e: &[i64], f: &[i64]) -> Result<Self> {
        let poly = |c: &[i64]| -> Poly { c.iter().enumerate().map(|(k, &x)| &Poly::int(x) * &zpow("z", k as i32)).sum() };
        RuledPoisson::new(m, poly(d), poly(e), poly(f))
    }

    pub fn coeff(&self) -> Poly {
        let xi = zpow("xi", 1);
        &(&self.d + &(&self.e * &xi)) + &(&self.f * &(&xi * &xi))
    }
}

/// The deformation-complex model of `(F_m, Λ0)` on the standard cover.
pub fn model(m: u32, lambda0: &Poly) -> Result<crate::obstruction::DeformationComplexModel> {
    let h = hyper_h1(m, lambda0)?;
    let s = &h.surface;
    Ok(crate::obstruction::DeformationComplexModel {
        manifold: format!("F_{m}"),
        stratum: format!("Λ0 = ({lambda0})*(@z^@xi)"),
        lambda0: FormedMultiVector::from_mv(&h.lambda0),
        h0_theta: s.h0_theta(),
        h0_sq: s.h0_bivectors(),
        h1_theta: s.h1_theta(),
        h1_sq: s.h1_bivectors(),
        h1_map: h.h1_map.clone(),
        h2_reducer: std::sync::Arc::new(H1Reducer::bivectors(s)),
    })
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub m: u32,
    pub dim_h2: usize,
    pub obstructed: bool,
    pub certificate: crate::obstruction::Certificate,
}

pub fn table1_verdict(p: &RuledPoisson) -> Result<Table1Row> {
    let md = model(p.m, &p.coeff())?;
    let cert = crate::obstruction::r4_search(&md)?;
    Ok(Table1Row { m: p.m, dim_h2: md.h2_dim(), obstructed: cert.is_obstructed(), certificate: cert })
}

/// The witness `a = ξ∂z∧∂ξ`, `b = z⁻¹∂ξ`, `[a, b] = −z⁻¹∂z∧∂ξ` on the
/// stratum `e = 0`, `m ≥ 4`.
pub fn lemma_r4_certificate(p: &RuledPoisson) -> Result<crate::obstruction::Certificate> {
    if p.m < 4 || !p.e.is_zero() {
        return Err(Error::NotObstructedStratum(format!("m = {}, e = {}", p.m, p.e)));
    }
    let md = model(p.m, &p.coeff())?;
    let s = RuledSurface::new(p.m);
    let a = FormedMultiVector::from_mv(&s.bivector(zpow("xi", 1)));
    let b = FormedMultiVector::from_mv(&s.field(Poly::zero(), zpow("z", -1)));
    let c = md.pair(&a, &b)?;
    let cert = crate::obstruction::Certificate::obstructed(&md, &a, &b, &c)?;
    cert.reverify(&md)?;
    Ok(cert)
}

use std::collections::BTreeMap;
use std::fmt;

use super::chart::{grade, merge_sign, ChartRef};
use super::multivector::{check_chart, fmt_mask, MultiVector};
use crate::arith::{GaussRat, Poly, Var};
use crate::{Error, Result};

/// A sum of terms `A ⊗ ω` with `A` a multivector field and `ω` a product of
/// `dz̄` generators. Keys are `(∂-mask, dz̄-mask)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormedMultiVector {
    chart: ChartRef,
    comps: BTreeMap<(u32, u32), Poly>,
}

impl FormedMultiVector {
    pub fn zero(chart: &ChartRef) -> Self {
        FormedMultiVector { chart: chart.clone(), comps: BTreeMap::new() }
    }

    /// `mv ⊗ dz̄_{g1}∧…` with generators in the given order.
    pub fn new(mv: &MultiVector, dbar: &[&str]) -> Result<Self> {
        let chart = mv.chart();
        let mut mask = 0u32;
        let mut sign = 1;
        for name in dbar {
            let i = chart
                .dbar_index_of(Var::new(name))
                .ok_or_else(|| Error::UnknownVariable(format!("~{name}")))?;
            match merge_sign(mask, 1 << i) {
                Some(s) => sign *= s,
                None => return Ok(FormedMultiVector::zero(chart)),
            }
            mask |= 1 << i;
        }
        let mut out = FormedMultiVector::zero(chart);
        for (m, p) in mv.comps() {
            out.add_comp(*m, mask, &if sign < 0 { -p } else { p.clone() });
        }
        Ok(out)
    }

    pub fn from_mv(mv: &MultiVector) -> Self {
        FormedMultiVector::new(mv, &[]).expect("no generators")
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn comps(&self) -> &BTreeMap<(u32, u32), Poly> {
        &self.comps
    }

    pub fn add_comp(&mut self, vmask: u32, dmask: u32, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let e = self.comps.entry((vmask, dmask)).or_default();
        *e += f;
        if e.is_zero() {
            self.comps.remove(&(vmask, dmask));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The multivector coefficient of the `dz̄` monomial `dmask`.
    pub fn form_part(&self, dmask: u32) -> MultiVector {
        let mut mv = MultiVector::zero(&self.chart);
        for ((v, d), p) in &self.comps {
            if *d == dmask {
                mv.add_comp(*v, p);
            }
        }
        mv
    }

    /// All terms of form degree `p`.
    pub fn form_degree_part(&self, p: u32) -> FormedMultiVector {
        FormedMultiVector {
            chart: self.chart.clone(),
            comps: self.comps.iter().filter(|((_, d), _)| grade(*d) == p).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn dbar_masks(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.comps.keys().map(|k| k.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn add(&self, o: &FormedMultiVector) -> Result<FormedMultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let mut out = self.clone();
        for ((v, d), p) in &o.comps {
            out.add_comp(*v, *d, p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> FormedMultiVector {
        FormedMultiVector { chart: self.chart.clone(), comps: self.comps.iter().map(|(k, p)| (*k, -p)).collect() }
    }

    pub fn sub(&self, o: &FormedMultiVector) -> Result<FormedMultiVector> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> FormedMultiVector {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    pub fn mul_poly(&self, f: &Poly) -> FormedMultiVector {
        let mut out = FormedMultiVector::zero(&self.chart);
        for ((v, d), p) in &self.comps {
            out.add_comp(*v, *d, &(p * f));
        }
        out
    }

    pub fn map_coeffs<F: FnMut(&Poly) -> Result<Poly>>(&self, mut f: F) -> Result<FormedMultiVector> {
        let mut out = FormedMultiVector::zero(&self.chart);
        for ((v, d), p) in &self.comps {
            out.add_comp(*v, *d, &f(p)?);
        }
        Ok(out)
    }

    /// Split by dz̄ monomial into `(mask, A)` pairs.
    fn parts(&self) -> BTreeMap<u32, MultiVector> {
        let mut out: BTreeMap<u32, MultiVector> = BTreeMap::new();
        for ((v, d), p) in &self.comps {
            out.entry(*d).or_insert_with(|| MultiVector::zero(&self.chart)).add_comp(*v, p);
        }
        out
    }

    /// `(A⊗ω)∧(B⊗η) = (−1)^{|ω||B|} (A∧B)⊗(ω∧η)`.
    pub fn wedge(&self, o: &FormedMultiVector) -> Result<FormedMultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let mut out = FormedMultiVector::zero(&self.chart);
        for (w, a) in self.parts() {
            for (e, b) in o.parts() {
                let Some(fs) = merge_sign(w, e) else { continue };
                for k in b.grades() {
                    let bk = b.grade_part(k);
                    let s = fs * if (grade(w) * k).is_multiple_of(2) { 1 } else { -1 };
                    let ab = a.wedge(&bk)?;
                    for (v, p) in ab.comps() {
                        out.add_comp(*v, w | e, &if s < 0 { -p } else { p.clone() });
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[A⊗ω, B⊗η] = (−1)^{|ω|(|B|−1)} [A,B]⊗(ω∧η)`; the sign makes the
    /// bracket graded-symmetric in total degree, so `[φ,Λ] = [Λ,φ]` for a
    /// (0,1)-vector φ and a bivector Λ.
    pub fn schouten(&self, o: &FormedMultiVector) -> Result<FormedMultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let mut out = FormedMultiVector::zero(&self.chart);
        for (w, a) in self.parts() {
            for (e, b) in o.parts() {
                let Some(fs) = merge_sign(w, e) else { continue };
                for k in b.grades() {
                    let bk = b.grade_part(k);
                    let odd = grade(w) % 2 == 1 && k % 2 == 0;
                    let s = if odd { -fs } else { fs };
                    let ab = a.schouten(&bk)?;
                    for (v, p) in ab.comps() {
                        out.add_comp(*v, w | e, &if s < 0 { -p } else { p.clone() });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl From<&MultiVector> for FormedMultiVector {
    fn from(mv: &MultiVector) -> Self {
        FormedMultiVector::from_mv(mv)
    }
}

impl fmt::Display for FormedMultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, ((v, d), p)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})")?;
            if *v != 0 {
                write!(f, "*({})", fmt_mask(&self.chart, *v, '@', self.chart.vars()))?;
            }
            if *d != 0 {
                write!(f, "*({})", fmt_mask(&self.chart, *d, '~', self.chart.dbar()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormedMultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L(el) + ½[el, el]` with `L = ∂̄ + [Λ₀, −]`. All coefficients in scope are
/// holomorphic, so the ∂̄ term vanishes identically.
pub fn mc_defect(lambda0: &MultiVector, el: &FormedMultiVector) -> Result<FormedMultiVector> {
    let l0 = FormedMultiVector::from_mv(lambda0);
    let lin = l0.schouten(el)?;
    let quad = el.schouten(el)?.scale(&GaussRat::from_frac(1, 2));
    lin.add(&quad)
}

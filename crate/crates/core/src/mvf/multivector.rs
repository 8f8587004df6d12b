use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::chart::{grade, merge_sign, rank_below, ChartRef};
use crate::arith::{GaussRat, Poly, Var};
use crate::{Error, Result};

/// A holomorphic multivector field on a chart, possibly inhomogeneous.
/// Components are keyed by the bitmask of the ∂-indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    chart: ChartRef,
    comps: BTreeMap<u32, Poly>,
}

pub(crate) fn check_chart(a: &ChartRef, b: &ChartRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch(a.name().to_string(), b.name().to_string()))
    }
}

impl MultiVector {
    pub fn zero(chart: &ChartRef) -> Self {
        MultiVector { chart: chart.clone(), comps: BTreeMap::new() }
    }

    pub fn function(chart: &ChartRef, f: Poly) -> Self {
        MultiVector::from_mask(chart, 0, f)
    }

    pub fn from_mask(chart: &ChartRef, mask: u32, f: Poly) -> Self {
        let mut m = MultiVector::zero(chart);
        m.add_comp(mask, &f);
        m
    }

    /// `f ∂_{v1}∧…∧∂_{vk}` in the given (possibly unsorted) order.
    pub fn term(chart: &ChartRef, f: Poly, vars: &[&str]) -> Result<Self> {
        let mut mask = 0u32;
        let mut sign = 1;
        for name in vars {
            let i = chart
                .index_of(Var::new(name))
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            match merge_sign(mask, 1 << i) {
                Some(s) => sign *= s,
                None => return Ok(MultiVector::zero(chart)),
            }
            mask |= 1 << i;
        }
        let f = if sign < 0 { -f } else { f };
        Ok(MultiVector::from_mask(chart, mask, f))
    }

    /// `∂_x` as a vector field.
    pub fn d(chart: &ChartRef, x: &str) -> Self {
        MultiVector::term(chart, Poly::one(), &[x]).expect("variable on chart")
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn comps(&self) -> &BTreeMap<u32, Poly> {
        &self.comps
    }

    pub fn comp(&self, mask: u32) -> Poly {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    /// Coefficient of `∂_{vars}` with vars in the given order (sign-adjusted).
    pub fn coeff(&self, vars: &[&str]) -> Poly {
        let unit = MultiVector::term(&self.chart, Poly::one(), vars).expect("chart variables");
        match unit.comps.iter().next() {
            None => Poly::zero(),
            Some((mask, s)) => &self.comp(*mask) * s,
        }
    }

    pub fn add_comp(&mut self, mask: u32, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let e = self.comps.entry(mask).or_default();
        *e += f;
        if e.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Grades present.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.comps.keys().map(|&m| grade(m)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The homogeneous grade, if there is exactly one.
    pub fn grade(&self) -> Option<u32> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn grade_part(&self, k: u32) -> MultiVector {
        MultiVector {
            chart: self.chart.clone(),
            comps: self.comps.iter().filter(|(m, _)| grade(**m) == k).map(|(m, p)| (*m, p.clone())).collect(),
        }
    }

    pub fn map_coeffs<F: FnMut(&Poly) -> Result<Poly>>(&self, mut f: F) -> Result<MultiVector> {
        let mut out = MultiVector::zero(&self.chart);
        for (m, p) in &self.comps {
            out.add_comp(*m, &f(p)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRat) -> MultiVector {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    pub fn mul_poly(&self, f: &Poly) -> MultiVector {
        let mut out = MultiVector::zero(&self.chart);
        for (m, p) in &self.comps {
            out.add_comp(*m, &(p * f));
        }
        out
    }

    pub fn with_chart(&self, chart: &ChartRef) -> MultiVector {
        MultiVector { chart: chart.clone(), comps: self.comps.clone() }
    }

    pub fn add(&self, o: &MultiVector) -> Result<MultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let mut out = self.clone();
        for (m, p) in &o.comps {
            out.add_comp(*m, p);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &MultiVector) -> Result<MultiVector> {
        self.add(&-o)
    }

    pub fn wedge(&self, o: &MultiVector) -> Result<MultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let mut out = MultiVector::zero(&self.chart);
        for (a, f) in &self.comps {
            for (b, g) in &o.comps {
                if let Some(s) = merge_sign(*a, *b) {
                    let p = f * g;
                    out.add_comp(a | b, &if s < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Schouten–Nijenhuis bracket, via the odd-variable formula
    /// `[P,Q] = Σ (P ∂⃖_{θi})(∂_{xi} Q) − (P ∂⃖_{xi})(∂⃗_{θi} Q)`.
    pub fn schouten(&self, o: &MultiVector) -> Result<MultiVector> {
        check_chart(&self.chart, &o.chart)?;
        let n = self.chart.dim() as u32;
        let vars = self.chart.vars().to_vec();
        let mut out = MultiVector::zero(&self.chart);
        for (&a, f) in &self.comps {
            let ka = grade(a);
            for (&b, g) in &o.comps {
                for i in 0..n {
                    let bit = 1u32 << i;
                    let x = vars[i as usize];
                    if a & bit != 0 {
                        let dg = g.partial(x);
                        if !dg.is_zero() {
                            let ar = a & !bit;
                            if let Some(s) = merge_sign(ar, b) {
                                let r = rank_below(a, i);
                                let s1 = if (ka - 1 - r).is_multiple_of(2) { 1 } else { -1 };
                                let p = f * &dg;
                                out.add_comp(ar | b, &if s * s1 < 0 { -p } else { p });
                            }
                        }
                    }
                    if b & bit != 0 {
                        let df = f.partial(x);
                        if !df.is_zero() {
                            let br = b & !bit;
                            if let Some(s) = merge_sign(a, br) {
                                let r = rank_below(b, i);
                                let s2 = if r.is_multiple_of(2) { 1 } else { -1 };
                                let p = &df * g;
                                // subtracted term
                                out.add_comp(a | br, &if s * s2 < 0 { p } else { -p });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact scalar multiple test helper: `self == other`.
    pub fn same(&self, o: &MultiVector) -> bool {
        self.chart == o.chart && self.comps == o.comps
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        MultiVector { chart: self.chart.clone(), comps: self.comps.iter().map(|(m, p)| (*m, -p)).collect() }
    }
}

impl Neg for MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        -&self
    }
}

/// Panicking sum for fields known to share a chart.
impl<'a> Add<&'a MultiVector> for &'a MultiVector {
    type Output = MultiVector;
    fn add(self, o: &MultiVector) -> MultiVector {
        MultiVector::add(self, o).expect("chart mismatch in +")
    }
}

impl<'a> Sub<&'a MultiVector> for &'a MultiVector {
    type Output = MultiVector;
    fn sub(self, o: &MultiVector) -> MultiVector {
        MultiVector::sub(self, o).expect("chart mismatch in -")
    }
}

/// `∂`-monomial in canonical syntax, e.g. `@z^@xi`.
pub(crate) fn fmt_mask(chart: &ChartRef, mask: u32, prefix: char, gens: &[Var]) -> String {
    let _ = chart;
    let mut parts = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if mask & (1 << i) != 0 {
            parts.push(format!("{prefix}{g}"));
        }
    }
    parts.join("^")
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, p)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == 0 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*({})", fmt_mask(&self.chart, *m, '@', self.chart.vars()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

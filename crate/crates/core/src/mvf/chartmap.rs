use std::collections::{BTreeMap, HashMap};

use super::chart::ChartRef;
use super::multivector::MultiVector;
use crate::arith::{Poly, Var};
use crate::{Error, Result};

/// A coordinate change `source → target`. `forward[y]` expresses the target
/// coordinate `y` in source coordinates; `inverse[x]` expresses the source
/// coordinate `x` in target coordinates. Parameters may appear freely.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub source: ChartRef,
    pub target: ChartRef,
    pub forward: BTreeMap<Var, Poly>,
    pub inverse: Option<BTreeMap<Var, Poly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// source field → target field
    Forward,
    /// target field → source field
    Backward,
}

impl ChartMap {
    pub fn new(source: &ChartRef, target: &ChartRef, forward: &[(&str, Poly)], inverse: Option<&[(&str, Poly)]>) -> Self {
        let f = forward.iter().map(|(n, p)| (Var::new(n), p.clone())).collect();
        let i = inverse.map(|inv| inv.iter().map(|(n, p)| (Var::new(n), p.clone())).collect());
        ChartMap { source: source.clone(), target: target.clone(), forward: f, inverse: i }
    }

    pub fn identity(chart: &ChartRef) -> Self {
        let id: BTreeMap<Var, Poly> = chart.vars().iter().map(|&x| (x, Poly::var(x))).collect();
        ChartMap { source: chart.clone(), target: chart.clone(), forward: id.clone(), inverse: Some(id) }
    }

    /// Checks `forward ∘ inverse = id` on every target coordinate and
    /// `inverse ∘ forward = id` on every source coordinate.
    pub fn check_inverse(&self) -> Result<bool> {
        let Some(inv) = &self.inverse else { return Ok(false) };
        let si: HashMap<Var, Poly> = inv.iter().map(|(k, v)| (*k, v.clone())).collect();
        let sf: HashMap<Var, Poly> = self.forward.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (y, e) in &self.forward {
            if e.substitute(&si)? != Poly::var(*y) {
                return Ok(false);
            }
        }
        for (x, e) in inv {
            if e.substitute(&sf)? != Poly::var(*x) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Express a function on the source chart in target coordinates.
    pub fn pull_function_to_target(&self, f: &Poly) -> Result<Poly> {
        let inv = self.inverse.as_ref().ok_or_else(|| Error::NonInvertibleSubstitution("missing inverse".into()))?;
        let s: HashMap<Var, Poly> = inv.iter().map(|(k, v)| (*k, v.clone())).collect();
        f.substitute(&s)
    }

    /// Express a function on the target chart in source coordinates.
    pub fn pull_function_to_source(&self, f: &Poly) -> Result<Poly> {
        let s: HashMap<Var, Poly> = self.forward.iter().map(|(k, v)| (*k, v.clone())).collect();
        f.substitute(&s)
    }

    /// The reverse map (requires an inverse).
    pub fn reversed(&self) -> Result<ChartMap> {
        let inv = self.inverse.clone().ok_or_else(|| Error::NonInvertibleSubstitution("missing inverse".into()))?;
        Ok(ChartMap { source: self.target.clone(), target: self.source.clone(), forward: inv, inverse: Some(self.forward.clone()) })
    }

    /// Composite `other ∘ self` (first `self`, then `other`).
    pub fn then(&self, other: &ChartMap) -> Result<ChartMap> {
        let sf: HashMap<Var, Poly> = self.forward.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut fwd = BTreeMap::new();
        for (y, e) in &other.forward {
            fwd.insert(*y, e.substitute(&sf)?);
        }
        let inv = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => {
                let sb: HashMap<Var, Poly> = b.iter().map(|(k, v)| (*k, v.clone())).collect();
                let mut m = BTreeMap::new();
                for (x, e) in a {
                    m.insert(*x, e.substitute(&sb)?);
                }
                Some(m)
            }
            _ => None,
        };
        Ok(ChartMap { source: self.source.clone(), target: other.target.clone(), forward: fwd, inverse: inv })
    }
}

/// Push a field along the map. Each `∂_x` becomes `Σ_y (∂y/∂x) ∂_y`, and the
/// coefficients are then rewritten in the new coordinates by one
/// simultaneous substitution.
pub fn pushforward(m: &ChartMap, a: &MultiVector, dir: Direction) -> Result<MultiVector> {
    let m = match dir {
        Direction::Forward => m.clone(),
        Direction::Backward => m.reversed()?,
    };
    if a.chart() != &m.source {
        return Err(Error::ChartMismatch(a.chart().name().to_string(), m.source.name().to_string()));
    }
    let src = m.source.clone();
    let tgt = m.target.clone();
    // image of each ∂_{x_i} with coefficients still in source variables
    let mut images = Vec::with_capacity(src.dim());
    for &x in src.vars() {
        let mut img = MultiVector::zero(&tgt);
        for (j, &y) in tgt.vars().iter().enumerate() {
            let e = m.forward.get(&y).cloned().unwrap_or_else(|| Poly::var(y));
            img.add_comp(1 << j, &e.partial(x));
        }
        images.push(img);
    }
    let mut raw = MultiVector::zero(&tgt);
    for (mask, f) in a.comps() {
        let mut acc = MultiVector::function(&tgt, f.clone());
        for (i, img) in images.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.wedge(img)?;
            }
        }
        raw = raw.add(&acc)?;
    }
    let inv = m.inverse.as_ref().ok_or_else(|| Error::NonInvertibleSubstitution("missing inverse".into()))?;
    let s: HashMap<Var, Poly> = inv.iter().map(|(k, v)| (*k, v.clone())).collect();
    raw.map_coeffs(|p| p.substitute(&s))
}

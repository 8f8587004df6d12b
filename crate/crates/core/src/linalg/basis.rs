use std::collections::BTreeMap;

use super::matrix::solve;
use crate::arith::{Poly, RatFunc};
use crate::mvf::{ChartRef, FormedMultiVector, MultiVector};
use crate::{Error, Result};

/// An ordered basis of named elements; list order defines coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledBasis {
    pub space_name: String,
    pub elements: Vec<FormedMultiVector>,
}

/// Key of a chart-monomial field component: (∂-mask, dz̄-mask, exponents).
type Key = (u32, u32, Vec<i32>);

fn expand(x: &FormedMultiVector) -> BTreeMap<Key, Poly> {
    let vars = x.chart().vars().to_vec();
    let mut out = BTreeMap::new();
    for ((v, d), p) in x.comps() {
        for (e, c) in p.collect(&vars) {
            out.insert((*v, *d, e), c);
        }
    }
    out
}

impl LabeledBasis {
    pub fn new(name: &str, elements: Vec<FormedMultiVector>) -> Self {
        LabeledBasis { space_name: name.to_string(), elements }
    }

    pub fn from_mvs(name: &str, mvs: Vec<MultiVector>) -> Self {
        LabeledBasis::new(name, mvs.iter().map(FormedMultiVector::from_mv).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn chart(&self) -> Option<&ChartRef> {
        self.elements.first().map(|e| e.chart())
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_string()).collect()
    }

    /// Linear combination `Σ c_i e_i`.
    pub fn combine(&self, coords: &[Poly]) -> Result<FormedMultiVector> {
        let chart = self.chart().ok_or_else(|| Error::NotInSpan(self.space_name.clone()))?;
        let mut acc = FormedMultiVector::zero(chart);
        for (e, c) in self.elements.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.add(&e.mul_poly(c))?;
            }
        }
        Ok(acc)
    }

    /// Coordinates over the parameter fraction field.
    pub fn coords_rat(&self, x: &FormedMultiVector) -> Result<Vec<RatFunc>> {
        if x.is_zero() {
            return Ok(vec![RatFunc::zero(); self.len()]);
        }
        let cols: Vec<BTreeMap<Key, Poly>> = self.elements.iter().map(expand).collect();
        let target = expand(x);
        if let Some(fast) = self.monomial_fast_path(&cols, &target) {
            return Ok(fast.into_iter().map(RatFunc::from_poly).collect());
        }
        let mut keys: Vec<Key> = target.keys().cloned().collect();
        for c in &cols {
            keys.extend(c.keys().cloned());
        }
        keys.sort();
        keys.dedup();
        let a: Vec<Vec<Poly>> =
            keys.iter().map(|k| cols.iter().map(|c| c.get(k).cloned().unwrap_or_default()).collect()).collect();
        let b: Vec<Poly> = keys.iter().map(|k| target.get(k).cloned().unwrap_or_default()).collect();
        solve(&a, &b).ok_or_else(|| Error::NotInSpan(self.space_name.clone()))
    }

    fn monomial_fast_path(&self, cols: &[BTreeMap<Key, Poly>], target: &BTreeMap<Key, Poly>) -> Option<Vec<Poly>> {
        let mut index = BTreeMap::new();
        for (i, c) in cols.iter().enumerate() {
            if c.len() != 1 {
                return None;
            }
            let (k, v) = c.iter().next()?;
            if *v != Poly::one() {
                return None;
            }
            index.insert(k.clone(), i);
        }
        let mut out = vec![Poly::zero(); cols.len()];
        for (k, v) in target {
            out[*index.get(k)?] = v.clone();
        }
        Some(out)
    }

    /// Polynomial coordinates, or `NotPolynomial`.
    pub fn coords(&self, x: &FormedMultiVector) -> Result<Vec<Poly>> {
        self.coords_rat(x)?
            .into_iter()
            .map(|r| r.as_poly().ok_or_else(|| Error::NotPolynomial(format!("{r} in {}", self.space_name))))
            .collect()
    }
}

/// A normal form from raw chart expressions to coordinates.
pub trait Reducer {
    fn reduce(&self, x: &FormedMultiVector) -> Result<Vec<Poly>>;
    fn target(&self) -> &LabeledBasis;
}

/// Reduction by plain coordinates in a basis.
pub struct BasisReducer(pub LabeledBasis);

impl Reducer for BasisReducer {
    fn reduce(&self, x: &FormedMultiVector) -> Result<Vec<Poly>> {
        self.0.coords(x)
    }

    fn target(&self) -> &LabeledBasis {
        &self.0
    }
}

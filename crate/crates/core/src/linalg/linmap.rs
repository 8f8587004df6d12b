use std::collections::HashMap;

use super::basis::{LabeledBasis, Reducer};
use super::matrix::{bareiss_rank, from_columns, kernel, rref_rank, solve, Echelon, PolyMatrix};
use crate::arith::{Poly, RatFunc, Var};
use crate::mvf::FormedMultiVector;
use crate::{Error, Result};

/// A matrix over parameter polynomials between labeled bases.
/// `entries[i][j]` is the `i`-th codomain coordinate of the image of the
/// `j`-th domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub domain: LabeledBasis,
    pub codomain: LabeledBasis,
    pub entries: PolyMatrix,
}

impl LinMap {
    pub fn from_entries(domain: LabeledBasis, codomain: LabeledBasis, entries: PolyMatrix) -> Self {
        LinMap { domain, codomain, entries }
    }

    pub fn nrows(&self) -> usize {
        self.codomain.len()
    }

    pub fn ncols(&self) -> usize {
        self.domain.len()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(Poly::is_zero))
    }
}

/// Column `j` is the reduced image of `dom[j]`.
pub fn matrix_of_map<F>(op: F, dom: &LabeledBasis, cod: &LabeledBasis, red: &dyn Reducer) -> Result<LinMap>
where
    F: Fn(&FormedMultiVector) -> Result<FormedMultiVector>,
{
    let mut cols = Vec::with_capacity(dom.len());
    for e in &dom.elements {
        let img = op(e)?;
        let c = red.reduce(&img)?;
        if c.len() != cod.len() {
            return Err(Error::NotInSpan(cod.space_name.clone()));
        }
        if let Some(chart) = cod.chart() {
            if c.iter().any(|p| chart.vars().iter().any(|x| p.vars().contains(x))) {
                return Err(Error::NotInSpan(format!("{}: chart variable in coordinates", cod.space_name)));
            }
        }
        cols.push(c);
    }
    let entries = from_columns(&cols, cod.len());
    Ok(LinMap { domain: dom.clone(), codomain: cod.clone(), entries })
}

pub fn generic_rank(m: &LinMap) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    bareiss_rank(&m.entries)
}

pub fn kernel_basis(m: &LinMap) -> Vec<Vec<Poly>> {
    if m.nrows() == 0 {
        return (0..m.ncols())
            .map(|j| (0..m.ncols()).map(|i| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect();
    }
    kernel(&m.entries, m.ncols())
}

/// Rank of a set of column vectors of length `n`.
pub fn span_rank(vecs: &[Vec<Poly>], n: usize) -> usize {
    let mut e = Echelon::new(n);
    for v in vecs {
        if e.is_full() {
            break;
        }
        e.insert(v);
    }
    e.rank()
}

/// Whether two families of vectors span the same space.
pub fn same_span(a: &[Vec<Poly>], b: &[Vec<Poly>], n: usize) -> bool {
    let ra = span_rank(a, n);
    let rb = span_rank(b, n);
    let mut ab = a.to_vec();
    ab.extend(b.iter().cloned());
    ra == rb && span_rank(&ab, n) == ra
}

fn unit(n: usize, i: usize) -> Vec<Poly> {
    (0..n).map(|k| if k == i { Poly::one() } else { Poly::zero() }).collect()
}

/// Complement representatives of the image, chosen greedily: each preferred
/// vector first, then codomain basis vectors lowest index first.
pub fn cokernel_vectors(m: &LinMap, preferred: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.nrows();
    let mut acc = Echelon::new(n);
    for c in m.columns() {
        if acc.is_full() {
            break;
        }
        acc.insert(&c);
    }
    let mut chosen = Vec::new();
    let candidates = preferred.iter().cloned().chain((0..n).map(|i| unit(n, i)));
    for c in candidates {
        if acc.is_full() {
            break;
        }
        if acc.insert(&c) {
            chosen.push(c);
        }
    }
    chosen
}

pub fn cokernel_rep(m: &LinMap) -> Result<LabeledBasis> {
    cokernel_rep_with(m, &[])
}

pub fn cokernel_rep_with(m: &LinMap, preferred: &[Vec<Poly>]) -> Result<LabeledBasis> {
    let vecs = cokernel_vectors(m, preferred);
    let mut els = Vec::new();
    for v in &vecs {
        els.push(m.codomain.combine(v)?);
    }
    Ok(LabeledBasis::new(&format!("coker({})", m.codomain.space_name), els))
}

/// Evaluate parameters; every polynomial in `nonzero` must stay nonzero.
pub fn specialize(m: &LinMap, assignment: &HashMap<Var, Poly>, nonzero: &[Poly]) -> Result<LinMap> {
    for p in nonzero {
        let v = p
            .substitute(assignment)
            .map_err(|_| Error::ConstraintViolation(format!("{p} not invertible under assignment")))?;
        if v.is_zero() {
            return Err(Error::ConstraintViolation(format!("{p} vanishes under assignment")));
        }
    }
    let mut entries = Vec::with_capacity(m.nrows());
    for row in &m.entries {
        let mut r = Vec::with_capacity(row.len());
        for p in row {
            r.push(
                p.substitute(assignment)
                    .map_err(|e| Error::ConstraintViolation(format!("entry {p}: {e}")))?,
            );
        }
        entries.push(r);
    }
    Ok(LinMap { domain: m.domain.clone(), codomain: m.codomain.clone(), entries })
}

/// Coordinates of codomain vectors modulo the image, relative to chosen
/// complement representatives.
#[derive(Clone, Debug)]
pub struct CokerReducer {
    n: usize,
    system: PolyMatrix,
    image_rank: usize,
    pub reps: Vec<Vec<Poly>>,
}

impl CokerReducer {
    pub fn new(m: &LinMap, reps: &[Vec<Poly>]) -> Self {
        let n = m.nrows();
        let mut acc = Echelon::new(n);
        let mut cols: Vec<Vec<Poly>> = Vec::new();
        for c in m.columns() {
            if acc.insert(&c) {
                cols.push(c);
            }
        }
        let image_rank = cols.len();
        cols.extend(reps.iter().cloned());
        CokerReducer { n, system: from_columns(&cols, n), image_rank, reps: reps.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Complement coordinates over the fraction field.
    pub fn reduce_rat(&self, v: &[Poly]) -> Result<Vec<RatFunc>> {
        if self.n == 0 {
            return Ok(Vec::new());
        }
        let x = solve(&self.system, v).ok_or_else(|| Error::NotInSpan("image + complement".into()))?;
        Ok(x[self.image_rank..].to_vec())
    }

    pub fn reduce(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        self.reduce_rat(v)?
            .into_iter()
            .map(|r| r.as_poly().ok_or_else(|| Error::NotPolynomial(r.to_string())))
            .collect()
    }

    pub fn in_image(&self, v: &[Poly]) -> Result<bool> {
        Ok(self.reduce_rat(v)?.iter().all(RatFunc::is_zero))
    }
}

/// Rank over the fraction field, ignoring Bareiss (cross-check helper).
pub fn rank_rref(m: &LinMap) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    rref_rank(&m.entries)
}

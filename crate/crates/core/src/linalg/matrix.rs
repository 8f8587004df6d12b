//! Dense exact matrices over Laurent polynomials and their fraction field.

use crate::arith::{gcd, Mono, Poly, RatFunc};

pub type PolyMatrix = Vec<Vec<Poly>>;

fn dims(m: &[Vec<Poly>]) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

/// Rank by fraction-free (Bareiss) elimination; any nonzero polynomial is a
/// legal pivot.
pub fn bareiss_rank(m: &[Vec<Poly>]) -> usize {
    let (r, c) = dims(m);
    let mut a: PolyMatrix = m.to_vec();
    let mut prev = Poly::one();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let piv = (row..r).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| a[i][col].len());
        let Some(p) = piv else { continue };
        a.swap(row, p);
        for i in row + 1..r {
            if a[i][col].is_zero() {
                // still must scale the row to keep minors exact
                for j in col + 1..c {
                    let v = &a[row][col] * &a[i][j];
                    match v.div_exact(&prev) {
                        Some(q) => a[i][j] = q,
                        None => return rref_rank(m),
                    }
                }
                continue;
            }
            for j in col + 1..c {
                let v = &(&a[row][col] * &a[i][j]) - &(&a[i][col] * &a[row][j]);
                match v.div_exact(&prev) {
                    Some(q) => a[i][j] = q,
                    None => return rref_rank(m),
                }
            }
            a[i][col] = Poly::zero();
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

pub fn to_rat(m: &[Vec<Poly>]) -> Vec<Vec<RatFunc>> {
    m.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect()
}

/// Reduced row echelon form over the fraction field; returns pivot columns.
pub fn rref(m: &mut [Vec<RatFunc>]) -> Vec<usize> {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let piv = (row..r)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].num().len() + m[i][col].den().len());
        let Some(p) = piv else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for j in col..c {
            m[row][j] = m[row][j].mul(&inv);
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..c {
                    if !m[row][j].is_zero() {
                        let v = m[i][j].sub(&f.mul(&m[row][j]));
                        m[i][j] = v;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A column-space basis over the fraction field, built one vector at a time.
/// Each stored vector is 1 at its pivot and 0 at every earlier pivot, so
/// membership is a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<RatFunc>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        let mut v = v.to_vec();
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub(&c.mul(y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.reduce(&rat_vec(v)).iter().all(RatFunc::is_zero)
    }

    /// Add `v`; `true` when it was independent of the stored vectors.
    pub fn insert(&mut self, v: &[Poly]) -> bool {
        self.insert_rat(&rat_vec(v))
    }

    pub fn insert_rat(&mut self, v: &[RatFunc]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let r = self.reduce(v);
        let piv = (0..r.len()).filter(|&i| !r[i].is_zero()).min_by_key(|&i| (r[i].num().len() + r[i].den().len(), i));
        let Some(p) = piv else { return false };
        let inv = r[p].inv().expect("nonzero pivot");
        let b = r.iter().map(|x| if x.is_zero() { RatFunc::zero() } else { x.mul(&inv) }).collect();
        self.rows.push((p, b));
        true
    }
}

fn rat_vec(v: &[Poly]) -> Vec<RatFunc> {
    v.iter().map(|p| RatFunc::from_poly(p.clone())).collect()
}

pub fn rref_rank(m: &[Vec<Poly>]) -> usize {
    let mut a = to_rat(m);
    rref(&mut a).len()
}

/// Clear denominators, remove polynomial and monomial content, and scale so
/// the first nonzero entry has lex-leading coefficient 1.
pub fn primitive(v: &[RatFunc]) -> Vec<Poly> {
    let mut l = Poly::one();
    for x in v {
        if !x.is_zero() {
            let g = gcd(&l, x.den());
            l = (&l * x.den()).div_exact(&g).expect("gcd divides");
        }
    }
    let mut out: Vec<Poly> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                Poly::zero()
            } else {
                &x.num().clone() * &l.div_exact(x.den()).expect("lcm is a multiple")
            }
        })
        .collect();
    let g = crate::arith::gcd_many(out.iter());
    if !g.is_zero() {
        out = out.iter().map(|p| p.div_exact(&g).expect("content divides")).collect();
    }
    let mut mono: Option<Mono> = None;
    for p in out.iter().filter(|p| !p.is_zero()) {
        let mc = p.mono_content();
        mono = Some(match mono {
            None => mc,
            Some(m) => m.gcd_with(&mc),
        });
    }
    if let Some(m) = mono {
        out = out.iter().map(|p| p.mul_mono(&m.inv())).collect();
    }
    if let Some(first) = out.iter().find(|p| !p.is_zero()) {
        let c = first.lead_coeff().inv().expect("nonzero");
        out = out.iter().map(|p| p.scale(&c)).collect();
    }
    out
}

/// Kernel basis, one primitive vector per free column.
pub fn kernel(m: &[Vec<Poly>], ncols: usize) -> Vec<Vec<Poly>> {
    let mut a = to_rat(m);
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|j| !pivots.contains(j)) {
        let mut x = vec![RatFunc::zero(); ncols];
        x[f] = RatFunc::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = a[r][f].neg();
        }
        out.push(primitive(&x));
    }
    out
}

/// Solve `a·x = b`; `None` if inconsistent. Free variables are set to 0.
pub fn solve(a: &[Vec<Poly>], b: &[Poly]) -> Option<Vec<RatFunc>> {
    let b: Vec<RatFunc> = b.iter().map(|p| RatFunc::from_poly(p.clone())).collect();
    solve_rat(&to_rat(a), &b)
}

/// `solve` over the fraction field.
pub fn solve_rat(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![RatFunc::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

pub fn transpose(m: &[Vec<Poly>], nrows: usize, ncols: usize) -> PolyMatrix {
    (0..ncols).map(|j| (0..nrows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Matrix with the given vectors as columns (all of length `n`).
pub fn from_columns(cols: &[Vec<Poly>], n: usize) -> PolyMatrix {
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut a: PolyMatrix = m.to_vec();
    let mut prev = Poly::one();
    let mut sign = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Poly::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Poly::one();
    }
    if sign < 0 {
        -&a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Poly {
        Poly::sym(n)
    }

    fn ep1_matrix() -> PolyMatrix {
        let (a, b, c) = (s("A"), s("B"), s("C"));
        let z = Poly::zero;
        vec![
            vec![z(), -&b, a.clone(), z()],
            vec![z(), &c * &Poly::int(-2), z(), &a * &Poly::int(2)],
            vec![z(), z(), -&c, b.clone()],
        ]
    }

    #[test]
    fn ep1_matrix_rank_and_kernel() {
        let m = ep1_matrix();
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(rref_rank(&m), 2);
        let k = kernel(&m, 4);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![Poly::one(), Poly::zero(), Poly::zero(), Poly::zero()]);
        assert_eq!(k[1], vec![Poly::zero(), s("A"), s("B"), s("C")]);
    }

    #[test]
    fn determinant() {
        let m = vec![vec![s("a"), s("b")], vec![s("c"), s("d")]];
        assert_eq!(det(&m), &(&s("a") * &s("d")) - &(&s("b") * &s("c")));
    }
}

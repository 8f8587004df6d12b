use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::gauss::GaussRat;
use super::var::Var;
use crate::{Error, Result};

/// A Laurent monomial: sorted `(var, exponent)` pairs, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Mono(Vec<(Var, i32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(x: Var, e: i32) -> Mono {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(x, e)])
        }
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Mono {
        let mut m = Mono::one();
        for &(x, e) in pairs {
            m = m.mul(&Mono::var(x, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, x: Var) -> i32 {
        self.0.iter().find(|(y, _)| *y == x).map(|p| p.1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|&(x, e)| (x, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono(self.0.iter().map(|&(x, e)| (x, e * k)).collect())
    }

    /// Remove variable `x`, returning its exponent and the rest.
    pub fn split_off(&self, x: Var) -> (i32, Mono) {
        let e = self.exp(x);
        (e, Mono(self.0.iter().copied().filter(|p| p.0 != x).collect()))
    }

    pub fn has_nonneg_exponents(&self) -> bool {
        self.0.iter().all(|p| p.1 >= 0)
    }

    /// Componentwise minimum of exponents (missing exponents count as 0).
    pub fn gcd_with(&self, o: &Mono) -> Mono {
        let mut vars: BTreeSet<Var> = self.0.iter().map(|p| p.0).collect();
        vars.extend(o.0.iter().map(|p| p.0));
        Mono(
            vars.into_iter()
                .map(|x| (x, self.exp(x).min(o.exp(x))))
                .filter(|p| p.1 != 0)
                .collect(),
        )
    }

    /// Lexicographic monomial order with variables ranked by name.
    pub fn lex_cmp(&self, o: &Mono) -> Ordering {
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(x, e)), Some(&(y, f))) => {
                    if x == y {
                        if e != f {
                            return e.cmp(&f);
                        }
                        i += 1;
                        j += 1;
                    } else if x < y {
                        return e.cmp(&0);
                    } else {
                        return 0.cmp(&f);
                    }
                }
            }
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (x, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match *e {
                1 => write!(f, "{x}")?,
                e if e < 0 => write!(f, "{x}^({e})")?,
                e => write!(f, "{x}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A multivariate Laurent polynomial over ℚ(i) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, GaussRat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Poly {
        Poly::term(Mono::one(), c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Poly {
        Poly::constant(GaussRat::from_frac(n, d))
    }

    pub fn term(m: Mono, c: GaussRat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(m, GaussRat::one())
    }

    pub fn var(x: Var) -> Poly {
        Poly::mono(Mono::var(x, 1))
    }

    /// `x^e` for the named variable.
    pub fn var_pow(name: &str, e: i32) -> Poly {
        Poly::mono(Mono::var(Var::new(name), e))
    }

    pub fn sym(name: &str) -> Poly {
        Poly::var(Var::new(name))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussRat)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_value(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// A single term `c·m` with `c ≠ 0`.
    pub fn as_unit(&self) -> Option<(Mono, GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (m.clone(), c.clone()))
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect()
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative powers only for unit terms.
    pub fn powi(&self, k: i32) -> Option<Poly> {
        if k >= 0 {
            return Some(self.pow(k as u32));
        }
        let (m, c) = self.as_unit()?;
        Some(Poly::term(m.pow(k), c.pow(k)?))
    }

    pub fn partial(&self, x: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(x);
            if e != 0 {
                out.add_term(m.mul(&Mono::var(x, -1)), &(c * &GaussRat::from_int(e as i64)));
            }
        }
        out
    }

    /// Simultaneous substitution; unmapped variables pass through.
    pub fn substitute(&self, s: &HashMap<Var, Poly>) -> Result<Poly> {
        let mut cache: HashMap<(Var, i32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut keep = Mono::one();
            let mut acc = Poly::constant(c.clone());
            for &(x, e) in m.pairs() {
                match s.get(&x) {
                    None => keep = keep.mul(&Mono::var(x, e)),
                    Some(img) => {
                        let pw = match cache.get(&(x, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = img
                                    .powi(e)
                                    .ok_or_else(|| Error::NonInvertibleSubstitution(x.to_string()))?;
                                cache.insert((x, e), p.clone());
                                p
                            }
                        };
                        acc = &acc * &pw;
                    }
                }
            }
            out += &acc.mul_mono(&keep);
        }
        Ok(out)
    }

    /// Substitute with `(name, image)` pairs.
    pub fn subs(&self, pairs: &[(&str, Poly)]) -> Result<Poly> {
        let s: HashMap<Var, Poly> = pairs.iter().map(|(n, p)| (Var::new(n), p.clone())).collect();
        self.substitute(&s)
    }

    pub fn is_holomorphic(&self, vars: &[Var]) -> bool {
        self.terms.keys().all(|m| vars.iter().all(|&x| m.exp(x) >= 0))
    }

    /// Terms with a negative exponent in some variable of `vars`.
    pub fn polar_part(&self, vars: &[Var]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().any(|&x| m.exp(x) < 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self, x: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(x)).max()
    }

    pub fn min_degree(&self, x: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(x)).min()
    }

    /// Coefficient of `x^k`, as a polynomial free of `x`.
    pub fn coeff_of(&self, x: Var, k: i32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(x);
            if e == k {
                out.add_term(rest, c);
            }
        }
        out
    }

    /// Group by the exponents of `vars`: each key is an exponent vector and
    /// each value the coefficient polynomial in the remaining variables.
    pub fn collect(&self, vars: &[Var]) -> BTreeMap<Vec<i32>, Poly> {
        let mut out: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut key = Vec::with_capacity(vars.len());
            for &x in vars {
                let (e, r) = rest.split_off(x);
                key.push(e);
                rest = r;
            }
            out.entry(key).or_default().add_term(rest, c);
        }
        out
    }

    pub fn to_univariate(&self, x: Var) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(x);
            out.entry(e).or_default().add_term(rest, c);
        }
        out
    }

    pub fn from_univariate(x: Var, u: &BTreeMap<i32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in u {
            out += &c.mul_mono(&Mono::var(x, *e));
        }
        out
    }

    /// The largest monomial dividing every term (componentwise minimum).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Mono::one() };
        it.fold(first.clone(), |acc, m| acc.gcd_with(m))
    }

    /// Leading term under the lex order.
    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = d.as_unit() {
            let ci = c.inv()?;
            return Some(self.mul_mono(&m.inv()).scale(&ci));
        }
        let mp = self.mono_content();
        let md = d.mono_content();
        let mut p = self.mul_mono(&mp.inv());
        let d0 = d.mul_mono(&md.inv());
        let (lm, lc) = d0.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lci = lc.inv()?;
        let mut q = Poly::zero();
        while let Some((pm, pc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = pm.mul(&lm.inv());
            if !qm.has_nonneg_exponents() {
                return None;
            }
            let qc = &pc * &lci;
            let t = Poly::term(qm, qc);
            p -= &(&t * &d0);
            q += &t;
        }
        Some(q.mul_mono(&mp.mul(&md.inv())))
    }

    /// Leading numeric coefficient (lex order).
    pub fn lead_coeff(&self) -> GaussRat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Scale so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Terms sorted for display: descending total degree, then by monomial.
    fn display_terms(&self) -> Vec<(&Mono, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn map_coeffs<F: Fn(&GaussRat) -> GaussRat>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let mixed = c.is_mixed();
            let neg = !mixed && c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let cs = if mixed { format!("({mag})") } else { mag.to_string() };
            if m.is_one() {
                write!(f, "{cs}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{cs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<GaussRat> for Poly {
    fn from(c: GaussRat) -> Poly {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                r.add_term(m.mul(n), &(c * d));
            }
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

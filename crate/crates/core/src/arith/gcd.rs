//! Multivariate gcd over ℚ(i) by recursive primitive remainder sequences.
//! Monomials are units in the Laurent ring, so monomial content is ignored.

use std::collections::BTreeMap;

use super::poly::Poly;
use super::var::Var;

/// Gcd in the Laurent ring, normalised to lex-leading coefficient 1 and no
/// monomial content. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let a0 = a.mul_mono(&a.mono_content().inv());
    let b0 = b.mul_mono(&b.mono_content().inv());
    normalize(&gcd_poly(&a0, &b0))
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(it: I) -> Poly {
    let mut g = Poly::zero();
    for p in it {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Strip monomial content and make the lex-leading coefficient 1.
pub fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    p.mul_mono(&p.mono_content().inv()).monic()
}

fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    let x = *vars.iter().next().expect("non-constant");
    let (ua, ub) = (a.to_univariate(x), b.to_univariate(x));
    let ca = content(&ua);
    let cb = content(&ub);
    let gc = gcd_poly(&ca, &cb);
    let pa = prim(&ua, &ca);
    let pb = prim(&ub, &cb);
    let g = prs(pa, pb, x);
    let gp = Poly::from_univariate(x, &g);
    &gc * &gp
}

fn content(u: &BTreeMap<i32, Poly>) -> Poly {
    let mut g = Poly::zero();
    for c in u.values() {
        g = gcd_poly(&g, c);
        if g.is_constant() && !g.is_zero() {
            return Poly::one();
        }
    }
    g
}

fn prim(u: &BTreeMap<i32, Poly>, c: &Poly) -> BTreeMap<i32, Poly> {
    u.iter()
        .map(|(e, p)| (*e, p.div_exact(c).expect("content divides coefficients")))
        .collect()
}

/// Scale by a unit so the leading coefficient has lex-leading coefficient 1;
/// keeps rational coefficients from growing along the sequence.
fn monic_lead(u: BTreeMap<i32, Poly>) -> BTreeMap<i32, Poly> {
    let Some(l) = u.values().next_back() else { return u };
    let Some(inv) = l.lead_coeff().inv() else { return u };
    if inv.is_one() {
        return u;
    }
    u.into_iter().map(|(e, p)| (e, p.scale(&inv))).collect()
}

fn deg(u: &BTreeMap<i32, Poly>) -> i32 {
    u.keys().next_back().copied().unwrap_or(-1)
}

fn prs(mut a: BTreeMap<i32, Poly>, mut b: BTreeMap<i32, Poly>, x: Var) -> BTreeMap<i32, Poly> {
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return a;
        }
        if deg(&b) == 0 {
            let mut one = BTreeMap::new();
            one.insert(0, Poly::one());
            return one;
        }
        let r = prem(&a, &b, x);
        if r.is_empty() {
            return b;
        }
        let c = content(&r);
        let r = monic_lead(prim(&r, &c));
        a = b;
        b = r;
    }
}

fn prem(a: &BTreeMap<i32, Poly>, b: &BTreeMap<i32, Poly>, _x: Var) -> BTreeMap<i32, Poly> {
    let db = deg(b);
    let lb = b[&db].clone();
    let mut r = a.clone();
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[&dr].clone();
        let shift = dr - db;
        let mut next: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &r {
            let v = c * &lb;
            if !v.is_zero() {
                next.insert(*e, v);
            }
        }
        for (e, c) in b {
            let k = e + shift;
            let v = next.remove(&k).unwrap_or_default() - c * &lr;
            if !v.is_zero() {
                next.insert(k, v);
            }
        }
        r = next;
    }
    r
}

/// Exact quotient `a / gcd` helper used by rational functions.
pub fn cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let g = gcd(a, b);
    if g.is_zero() {
        return (g, a.clone(), b.clone());
    }
    let qa = a.div_exact(&g).expect("gcd divides a");
    let qb = b.div_exact(&g).expect("gcd divides b");
    (g, qa, qb)
}

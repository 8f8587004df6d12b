use std::fmt;

use super::gcd::{cofactors, normalize};
use super::poly::Poly;

/// A reduced fraction of Laurent polynomials; the denominator is normalised
/// (no monomial content, lex-leading coefficient 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let (_, n, d) = cofactors(&num, &den);
        // move the unit part of d into n
        let dn = normalize(&d);
        let unit = d.div_exact(&dn).expect("normalisation is a unit");
        let n = n.div_exact(&unit).expect("units divide");
        Some(RatFunc { num: n, den: dn })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        if self.den == Poly::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn inv(&self) -> Option<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        let a = Poly::sym("A");
        let b = Poly::sym("B");
        let r = RatFunc::new(&a * &b, &a * &Poly::int(2)).unwrap();
        assert_eq!(r.as_poly(), Some(b.scale(&crate::arith::GaussRat::from_frac(1, 2))));
        let s = RatFunc::new(Poly::one(), a.clone()).unwrap();
        assert_eq!(s.mul(&RatFunc::from_poly(a)).as_poly(), Some(Poly::one()));
    }
}

//! Exact scalar and Laurent-polynomial arithmetic.

mod gauss;
mod gcd;
mod poly;
mod ratfunc;
mod var;

use std::collections::HashMap;

pub use gauss::GaussRat;
pub use gcd::{gcd, gcd_many, normalize};
pub use poly::{Mono, Poly};
pub use ratfunc::RatFunc;
pub use var::{v, Var, VarRegistry};

use crate::{Error, Result};

/// Simultaneous substitution `p[x ↦ s(x)]`.
pub fn lp_substitute(p: &Poly, subst: &HashMap<Var, Poly>) -> Result<Poly> {
    p.substitute(subst)
}

/// Formal partial derivative, checked against a registry.
pub fn lp_partial(p: &Poly, x: Var, reg: &VarRegistry) -> Result<Poly> {
    if !reg.contains(x) {
        return Err(Error::UnknownVariable(x.to_string()));
    }
    Ok(p.partial(x))
}

/// True iff no term has a negative exponent in any of `vars`.
pub fn lp_is_holomorphic(p: &Poly, vars: &[Var]) -> bool {
    p.is_holomorphic(vars)
}

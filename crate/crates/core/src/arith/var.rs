use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned symbol. Ordering is by name, so monomial order never depends
/// on interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(&'static str);

fn table() -> &'static Mutex<HashSet<&'static str>> {
    static T: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        let mut t = table().lock().expect("symbol table poisoned");
        if let Some(s) = t.get(name) {
            return Var(s);
        }
        let s: &'static str = Box::leak(name.to_owned().into_boxed_str());
        t.insert(s);
        Var(s)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Shorthand for `Var::new`.
pub fn v(name: &str) -> Var {
    Var::new(name)
}

/// Classification of symbols into chart variables and formal parameters.
///
/// Polynomials do not carry a registry; it is a view used by callers that
/// need to know which symbols are coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarRegistry {
    chart_vars: Vec<Var>,
    param_vars: Vec<Var>,
}

impl VarRegistry {
    pub fn new(chart: &[&str], params: &[&str]) -> crate::Result<Self> {
        let mut r = VarRegistry::default();
        for c in chart {
            r.add_chart(v(c))?;
        }
        for p in params {
            r.add_param(v(p))?;
        }
        Ok(r)
    }

    pub fn add_chart(&mut self, x: Var) -> crate::Result<()> {
        if self.param_vars.contains(&x) {
            return Err(crate::Error::ConstraintViolation(format!("`{x}` is already a parameter")));
        }
        if !self.chart_vars.contains(&x) {
            self.chart_vars.push(x);
        }
        Ok(())
    }

    pub fn add_param(&mut self, x: Var) -> crate::Result<()> {
        if self.chart_vars.contains(&x) {
            return Err(crate::Error::ConstraintViolation(format!("`{x}` is already a chart variable")));
        }
        if !self.param_vars.contains(&x) {
            self.param_vars.push(x);
        }
        Ok(())
    }

    pub fn chart_vars(&self) -> &[Var] {
        &self.chart_vars
    }

    pub fn param_vars(&self) -> &[Var] {
        &self.param_vars
    }

    pub fn is_chart(&self, x: Var) -> bool {
        self.chart_vars.contains(&x)
    }

    pub fn contains(&self, x: Var) -> bool {
        self.chart_vars.contains(&x) || self.param_vars.contains(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning() {
        assert_eq!(v("xi"), Var::new("xi"));
        assert!(v("A") < v("B"));
        assert!(VarRegistry::new(&["z"], &["z"]).is_err());
    }
}

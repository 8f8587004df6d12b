use std::fmt;
use std::sync::Arc;

use crate::arith::Var;

/// A coordinate chart: ordered holomorphic coordinates plus the
/// antiholomorphic generators `dz̄` available on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    name: String,
    vars: Vec<Var>,
    dbar: Vec<Var>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    /// Panics on duplicated variable lists; those are programming
    /// errors, not data errors.
    pub fn new(name: &str, vars: &[&str]) -> ChartRef {
        Chart::with_dbar(name, vars, &[])
    }

    pub fn with_dbar(name: &str, vars: &[&str], dbar: &[&str]) -> ChartRef {
        assert!(vars.len() <= 16 && dbar.len() <= 16);
        let vs: Vec<Var> = vars.iter().map(|s| Var::new(s)).collect();
        let ds: Vec<Var> = dbar.iter().map(|s| Var::new(s)).collect();
        for (i, x) in vs.iter().enumerate() {
            assert!(!vs[..i].contains(x), "duplicate chart variable {x}");
        }
        for (i, x) in ds.iter().enumerate() {
            assert!(!ds[..i].contains(x), "duplicate dbar generator {x}");
        }
        Arc::new(Chart { name: name.to_string(), vars: vs, dbar: ds })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn dbar(&self) -> &[Var] {
        &self.dbar
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, x: Var) -> Option<usize> {
        self.vars.iter().position(|&y| y == x)
    }

    pub fn dbar_index_of(&self, x: Var) -> Option<usize> {
        self.dbar.iter().position(|&y| y == x)
    }

    pub fn var(&self, i: usize) -> Var {
        self.vars[i]
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name, self.vars)
    }
}

/// Sign of θ_a·θ_b → θ_{a∪b}; `None` when the index sets overlap.
pub fn merge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(if inv.is_multiple_of(2) { 1 } else { -1 })
}

/// Number of set bits strictly below bit `i`.
pub fn rank_below(mask: u32, i: u32) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

pub fn grade(mask: u32) -> u32 {
    mask.count_ones()
}

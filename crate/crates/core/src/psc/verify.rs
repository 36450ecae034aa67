//! Checking the symmetry profile of a code.

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialCode};
use crate::symmetry::{project_trivial, projection_dims, VariablePermutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    /// `dims[q]` is the dimension of the projection onto direction `q`.
    pub dims: Vec<usize>,
}

impl SymmetryReport {
    pub fn min_dim(&self) -> Option<usize> {
        self.dims.iter().copied().min()
    }

    /// Directions whose projection has the smallest dimension.
    pub fn minimal_directions(&self) -> Vec<usize> {
        let Some(min) = self.min_dim() else { return Vec::new() };
        (0..self.dims.len()).filter(|&q| self.dims[q] == min).collect()
    }

    /// The first `t` projections share one dimension.
    pub fn targets_equal(&self, t: usize) -> bool {
        t <= self.dims.len() && self.dims[..t].windows(2).all(|w| w[0] == w[1])
    }

    /// Targets equal, every other direction strictly larger.
    pub fn is_partially_symmetric(&self, t: usize) -> bool {
        if t == 0 || !self.targets_equal(t) {
            return false;
        }
        let target = self.dims[0];
        self.dims[t..].iter().all(|&d| d > target)
    }
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, d) in self.dims.iter().enumerate() {
            writeln!(f, "q={q} dim={d}")?;
        }
        let mins: Vec<String> = self.minimal_directions().iter().map(|q| q.to_string()).collect();
        write!(f, "min={} at q={}", self.min_dim().unwrap_or(0), mins.join(","))
    }
}

pub fn verify_symmetry(code: &MonomialCode) -> SymmetryReport {
    SymmetryReport { dims: projection_dims(code) }
}

/// Per-variable profile: how many generators of each degree contain it.
fn signature(code: &MonomialCode, j: usize) -> Vec<usize> {
    let mut sig = vec![0; code.m() + 1];
    for g in code.gens().iter().filter(|g| g.contains(j)) {
        sig[g.degree()] += 1;
    }
    sig
}

/// A relabelling of variables mapping the generators of `a` onto those of
/// `b`, if one exists.
pub fn find_variable_equivalence(a: &MonomialCode, b: &MonomialCode) -> Option<VariablePermutation> {
    let m = a.m();
    if b.m() != m || a.k() != b.k() {
        return None;
    }
    let mut deg_a = vec![0; m + 1];
    let mut deg_b = vec![0; m + 1];
    a.gens().iter().for_each(|g| deg_a[g.degree()] += 1);
    b.gens().iter().for_each(|g| deg_b[g.degree()] += 1);
    if deg_a != deg_b {
        return None;
    }
    let sig_a: Vec<_> = (0..m).map(|j| signature(a, j)).collect();
    let sig_b: Vec<_> = (0..m).map(|j| signature(b, j)).collect();
    // generators of `a` grouped by their highest variable; constant under 0
    let mut by_top: Vec<Vec<Monomial>> = vec![Vec::new(); m];
    for &g in a.gens() {
        let top = g.vars().last().unwrap_or(0);
        by_top[top].push(g);
    }

    type SearchContext<'a> = (&'a MonomialCode, &'a [Vec<usize>], &'a [Vec<usize>], &'a [Vec<Monomial>]);

    fn assign(
        j: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        ctx: &SearchContext,
    ) -> bool {
        let (b, sig_a, sig_b, by_top) = *ctx;
        if j == sig_a.len() {
            return true;
        }
        for img in 0..sig_a.len() {
            if used[img] || sig_a[j] != sig_b[img] {
                continue;
            }
            perm.push(img);
            let consistent = by_top[j].iter().all(|g| b.contains(Monomial::from_vars(g.vars().map(|v| perm[v]))));
            if consistent {
                used[img] = true;
                if assign(j + 1, perm, used, ctx) {
                    return true;
                }
                used[img] = false;
            }
            perm.pop();
        }
        false
    }

    let mut perm = Vec::with_capacity(m);
    let mut used = vec![false; m];
    assign(0, &mut perm, &mut used, &(b, &sig_a, &sig_b, &by_top))
        .then(|| VariablePermutation::new(perm).expect("built as a permutation"))
}

/// Outcome of comparing two target projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionPair {
    pub h1: usize,
    pub h2: usize,
    /// Relabelling of the `m - 1` remaining variables taking the first
    /// projection onto the second.
    pub witness: Option<VariablePermutation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub t: usize,
    pub pairs: Vec<ProjectionPair>,
}

impl ConjectureReport {
    /// Every pair of target projections is equivalent.
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.witness.is_some())
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ProjectionPair> {
        self.pairs.iter().filter(|p| p.witness.is_none())
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            match &p.witness {
                Some(w) => writeln!(f, "h1={} h2={} equivalent perm={:?}", p.h1, p.h2, w.as_slice())?,
                None => writeln!(f, "h1={} h2={} not equivalent", p.h1, p.h2)?,
            }
        }
        write!(f, "holds={}", self.holds())
    }
}

/// Compares the projections onto every pair of target directions `h1 < h2 < t`
/// up to a relabelling of the remaining variables.
pub fn check_conjecture(code: &MonomialCode, t: usize) -> Result<ConjectureReport> {
    let m = code.m();
    if t == 0 || t > m {
        return Err(Error::InvalidDesign(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    let mut pairs = Vec::new();
    if t >= 2 {
        let projections: Vec<MonomialCode> = (0..t).map(|h| project_trivial(code, h)).collect::<Result<_>>()?;
        for h1 in 0..t {
            for h2 in h1 + 1..t {
                let witness = find_variable_equivalence(&projections[h1], &projections[h2]);
                pairs.push(ProjectionPair { h1, h2, witness });
            }
        }
    }
    Ok(ConjectureReport { t, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::reed_muller;
    use crate::symmetry::permute_variables;

    fn code(m: usize, masks: &[u32]) -> MonomialCode {
        MonomialCode::new(m, masks.iter().map(|&x| Monomial::from_mask(x))).unwrap()
    }

    #[test]
    fn report_on_example_one() {
        let c = code(4, &[0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 1, 2, 4, 8, 0]);
        let r = verify_symmetry(&c);
        assert_eq!(r.dims, vec![4, 4, 4, 4]);
        assert!(r.targets_equal(3));
        assert!(!r.is_partially_symmetric(3));
        assert!(r.is_partially_symmetric(4));
        assert_eq!(r.minimal_directions(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn strictness_detected() {
        // x0x1, x0, x1, x2, 1: dims (2, 2, 1)
        let c = code(3, &[0b011, 1, 2, 4, 0]);
        let r = verify_symmetry(&c);
        assert_eq!(r.dims, vec![2, 2, 1]);
        assert!(!r.is_partially_symmetric(2));
        assert_eq!(r.minimal_directions(), vec![2]);
        // x2, x0x2, x1x2, x0, x1, 1: dims (2, 2, 3)
        let c = code(3, &[4, 0b101, 0b110, 1, 2, 0]);
        assert!(verify_symmetry(&c).is_partially_symmetric(2));
    }

    #[test]
    fn equivalence_finds_relabelling() {
        let a = code(4, &[0b0011, 0b0100, 0b1000, 0]);
        let p = VariablePermutation::new(vec![2, 3, 0, 1]).unwrap();
        let b = permute_variables(&a, &p).unwrap();
        let w = find_variable_equivalence(&a, &b).unwrap();
        assert_eq!(permute_variables(&a, &w).unwrap(), b);
        let c = code(4, &[0b0011, 0b0100, 0b0001, 0]);
        assert!(find_variable_equivalence(&a, &c).is_none());
    }

    #[test]
    fn conjecture_on_rm() {
        let rm = reed_muller(2, 5).unwrap();
        let rep = check_conjecture(&rm, 4).unwrap();
        assert_eq!(rep.pairs.len(), 6);
        assert!(rep.holds());
        assert!(check_conjecture(&rm, 1).unwrap().pairs.is_empty());
        assert!(check_conjecture(&rm, 6).is_err());
    }
}

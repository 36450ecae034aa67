//! Monomials in binary variables, their evaluation vectors, and the monomial
//! codes they generate.
//!
//! # Evaluation convention
//!
//! Position `u` of an evaluation vector holds the value of the polynomial at
//! the bitwise complement of `u` (with `u = sum u_i 2^i`). Under this
//! convention `evaluate(mon_of_row(i))` is exactly row `i` of the Kronecker
//! power `A^{(x)m}` with `A = [[1, 0], [1, 1]]`, where `mon_of_row(i)` is the
//! product of the variables at the zero bits of `i`. The complemented
//! ordering is a coordinate permutation (a translation by the all-ones
//! vector), so it does not change the weight distribution of any code and
//! leaves translation-invariant codes unchanged.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 24;

pub(crate) fn check_vars(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VARS {
        return Err(Error::VariableCount(m));
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// A product of distinct variables, stored as a bit mask (bit `j` set means
/// `x_j` is a factor). The empty mask is the constant monomial `1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub const fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    pub fn var(j: usize) -> Self {
        assert!(j < 32);
        Monomial(1 << j)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        Monomial(vars.into_iter().fold(0, |acc, j| acc | (1 << j)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, j: usize) -> bool {
        j < 32 && self.0 >> j & 1 == 1
    }

    /// `self | other` in the divisibility order.
    pub fn divides(self, other: Monomial) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Ascending variable indices.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let j = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(j)
        })
    }

    /// All divisors, including `1` and `self`.
    pub fn divisors(self) -> impl Iterator<Item = Monomial> {
        let full = self.0;
        let mut sub = Some(full);
        std::iter::from_fn(move || {
            let s = sub?;
            sub = if s == 0 { None } else { Some((s - 1) & full) };
            Some(Monomial(s))
        })
    }

    /// Removes variable `q` and shifts every higher variable down by one.
    pub(crate) fn drop_var(self, q: usize) -> Monomial {
        let low = self.0 & ((1u32 << q) - 1);
        let high = (self.0 >> (q + 1)) << q;
        Monomial(low | high)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for j in self.vars() {
            write!(f, "x{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The monomial whose evaluation vector is row `i` of `A^{(x)m}`: the product
/// of variables at the zero bits of `i`.
pub fn mon_of_row(i: usize, m: usize) -> Result<Monomial> {
    check_vars(m)?;
    if i >> m != 0 {
        return Err(Error::RowOutOfRange { index: i, m });
    }
    Ok(Monomial(!(i as u32) & full_mask(m)))
}

/// Inverse of [`mon_of_row`].
pub fn row_of_mon(g: Monomial, m: usize) -> usize {
    (!g.0 & full_mask(m)) as usize
}

pub type EvaluationVector = BitVector;

/// Evaluation vector of `g` over all `2^m` points, in the complemented point
/// order described in the module docs.
pub fn evaluate(g: Monomial, m: usize) -> EvaluationVector {
    assert!(g.0 & !full_mask(m) == 0, "monomial {g} has variables beyond m = {m}");
    let n = 1usize << m;
    let mask = g.0 as usize;
    let mut v = BitVector::zeros(n);
    // g(~u) = 1 iff every variable of g is zero in u.
    for u in 0..n {
        if u & mask == 0 {
            v.set(u, true);
        }
    }
    v
}

/// A monomial code: `m` variables and a duplicate-free generating set.
///
/// Generators are kept in descending mask order, which is the enumeration
/// that assigns message symbols to rows (equivalently, ascending row index of
/// `A^{(x)m}`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialCode {
    m: usize,
    gens: Vec<Monomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub dmin: usize,
}

impl MonomialCode {
    pub fn new<I: IntoIterator<Item = Monomial>>(m: usize, gens: I) -> Result<Self> {
        check_vars(m)?;
        let mut set = BTreeSet::new();
        for g in gens {
            if g.0 & !full_mask(m) != 0 {
                return Err(Error::MonomialOutOfRange { mask: g.0, m });
            }
            if !set.insert(g) {
                return Err(Error::DuplicateMonomial(g.to_string()));
            }
        }
        Ok(Self::from_set(m, set))
    }

    pub(crate) fn from_set(m: usize, set: BTreeSet<Monomial>) -> Self {
        MonomialCode { m, gens: set.into_iter().rev().collect() }
    }

    /// The full space, all `2^m` monomials.
    pub fn full(m: usize) -> Result<Self> {
        check_vars(m)?;
        Ok(MonomialCode { m, gens: (0..=full_mask(m)).rev().map(Monomial).collect() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        1 << self.m
    }

    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, g: Monomial) -> bool {
        self.gens.binary_search_by(|x| g.cmp(x)).is_ok()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    pub fn gen_set(&self) -> BTreeSet<Monomial> {
        self.gens.iter().copied().collect()
    }

    /// Row indices of `A^{(x)m}` spanned by this code (its information set in
    /// the polar description), ascending.
    pub fn row_indices(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| row_of_mon(g, self.m)).collect()
    }
}

impl fmt::Debug for MonomialCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialCode(m={}, {:?})", self.m, self.gens)
    }
}

/// `k x n` generator matrix; row `i` is the evaluation of the `i`-th generator.
pub fn generator_matrix(code: &MonomialCode) -> Result<BitMatrix> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let rows: Vec<BitVector> = code.gens.iter().map(|&g| evaluate(g, code.m)).collect();
    Ok(BitMatrix::from_rows(code.n(), &rows))
}

/// All monomials of degree at most `d` in `m` variables.
pub fn monomials_up_to_degree(d: usize, m: usize) -> impl Iterator<Item = Monomial> {
    (0..=full_mask(m)).filter(move |x| x.count_ones() as usize <= d).map(Monomial)
}

pub fn reed_muller(r: usize, m: usize) -> Result<MonomialCode> {
    check_vars(m)?;
    if r > m {
        return Err(Error::OrderOutOfRange { r, m });
    }
    Ok(MonomialCode::from_set(m, monomials_up_to_degree(r, m).collect()))
}

/// `dim RM(r, m)`; zero for negative orders is handled by the caller.
pub fn rm_dimension(r: usize, m: usize) -> usize {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

/// `(n, k, d_min)` with `d_min = 2^(m - max degree)`.
pub fn code_params(code: &MonomialCode) -> Result<CodeParams> {
    let r = code.max_degree().ok_or(Error::EmptyCode)?;
    Ok(CodeParams { n: code.n(), k: code.k(), dmin: 1 << (code.m - r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mon_of_row_examples() {
        assert_eq!(mon_of_row(0, 3).unwrap(), Monomial::from_mask(0b111));
        assert_eq!(mon_of_row(7, 3).unwrap(), Monomial::ONE);
        assert_eq!(mon_of_row(5, 3).unwrap(), Monomial::var(1));
        assert!(matches!(mon_of_row(8, 3), Err(Error::RowOutOfRange { .. })));
    }

    #[test]
    fn row_of_mon_round_trips() {
        for m in 1..=6 {
            for i in 0..1usize << m {
                let g = mon_of_row(i, m).unwrap();
                assert_eq!(row_of_mon(g, m), i);
                assert_eq!(mon_of_row(row_of_mon(g, m), m).unwrap(), g);
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let bits = |v: BitVector| v.iter().map(u8::from).collect::<Vec<_>>();
        assert_eq!(bits(evaluate(Monomial::ONE, 2)), vec![1, 1, 1, 1]);
        assert_eq!(bits(evaluate(Monomial::var(0), 2)), vec![1, 0, 1, 0]);
        assert_eq!(bits(evaluate(Monomial::from_mask(0b11), 2)), vec![1, 0, 0, 0]);
    }

    #[test]
    fn evaluation_weight() {
        for m in 1..=10 {
            for mask in 0..=full_mask(m) {
                let g = Monomial(mask);
                assert_eq!(evaluate(g, m).weight(), 1 << (m - g.degree()));
            }
        }
    }

    #[test]
    fn generator_matrix_examples() {
        let rm0 = reed_muller(0, 2).unwrap();
        let g = generator_matrix(&rm0).unwrap();
        assert_eq!((g.rows(), g.cols()), (1, 4));
        assert_eq!(g.row_weight(0), 4);

        let full = generator_matrix(&MonomialCode::full(2).unwrap()).unwrap();
        assert_eq!(full.rank(), 4);

        let empty = MonomialCode::new(3, []).unwrap();
        assert_eq!(generator_matrix(&empty), Err(Error::EmptyCode));
    }

    #[test]
    fn reed_muller_params() {
        let p = code_params(&reed_muller(1, 3).unwrap()).unwrap();
        assert_eq!(p, CodeParams { n: 8, k: 4, dmin: 4 });
        let p = code_params(&reed_muller(4, 9).unwrap()).unwrap();
        assert_eq!((p.k, p.dmin), (256, 32));
        let p = code_params(&reed_muller(5, 5).unwrap()).unwrap();
        assert_eq!((p.k, p.dmin), (32, 1));
        assert!(matches!(reed_muller(4, 3), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn repetition_code() {
        let c = MonomialCode::new(5, [Monomial::ONE]).unwrap();
        assert_eq!(code_params(&c).unwrap(), CodeParams { n: 32, k: 1, dmin: 32 });
    }

    #[test]
    fn rm_gens_match_frozen_set_view() {
        for m in 1..=8 {
            for r in 0..=m {
                let rm = reed_muller(r, m).unwrap();
                let via_rows: BTreeSet<Monomial> = (0..1usize << m)
                    .filter(|i| i.count_ones() as usize >= m - r)
                    .map(|i| mon_of_row(i, m).unwrap())
                    .collect();
                assert_eq!(rm.gen_set(), via_rows);
                assert_eq!(rm.k(), rm_dimension(r, m));
            }
        }
    }

    #[test]
    fn construction_rejects_bad_sets() {
        assert!(matches!(
            MonomialCode::new(2, [Monomial::var(0), Monomial::var(0)]),
            Err(Error::DuplicateMonomial(_))
        ));
        assert!(matches!(
            MonomialCode::new(2, [Monomial::var(2)]),
            Err(Error::MonomialOutOfRange { .. })
        ));
        assert!(matches!(MonomialCode::new(0, []), Err(Error::VariableCount(0))));
    }

    #[test]
    fn enumeration_is_descending_mask() {
        let c = MonomialCode::new(3, [Monomial::ONE, Monomial::var(2), Monomial::var(0)]).unwrap();
        assert_eq!(c.gens(), &[Monomial::var(2), Monomial::var(0), Monomial::ONE]);
        assert_eq!(c.row_indices(), vec![3, 6, 7]);
        assert!(c.contains(Monomial::var(0)));
        assert!(!c.contains(Monomial::var(1)));
    }

    #[test]
    fn divisors_and_drop_var() {
        let g = Monomial::from_mask(0b1011);
        let divs: BTreeSet<_> = g.divisors().collect();
        assert_eq!(divs.len(), 8);
        assert!(divs.iter().all(|d| d.divides(g)));
        assert_eq!(g.drop_var(1), Monomial::from_mask(0b101));
        assert_eq!(g.drop_var(0), Monomial::from_mask(0b101));
        assert_eq!(g.drop_var(3), Monomial::from_mask(0b011));
        assert_eq!(g.to_string(), "x0x1x3");
    }
}

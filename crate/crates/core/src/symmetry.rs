//! Translations, variable permutations, directional derivatives and
//! projections of monomial codes.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::monomial::{evaluate, full_mask, Monomial, MonomialCode};

/// A GF(2) polynomial in binary variables, as its set of monomial terms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for t in terms {
            p.add_term(t);
        }
        p
    }

    pub fn add_term(&mut self, g: Monomial) {
        if !self.terms.remove(&g) {
            self.terms.insert(g);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial { terms: self.terms.symmetric_difference(&other.terms).copied().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.degree()).max()
    }

    /// Evaluation vector under the same point convention as [`evaluate`].
    pub fn evaluate(&self, m: usize) -> BitVector {
        let mut v = BitVector::zeros(1 << m);
        for &t in &self.terms {
            v.xor_assign(&evaluate(t, m));
        }
        v
    }
}

impl From<Monomial> for Polynomial {
    fn from(g: Monomial) -> Self {
        Polynomial { terms: BTreeSet::from([g]) }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|t| (std::cmp::Reverse(t.degree()), std::cmp::Reverse(t.mask())));
        for (i, t) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x -> x + b`. On evaluation points this is `u -> u ^ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Translation(u32);

impl Translation {
    pub const fn new(b: u32) -> Self {
        Translation(b)
    }

    pub fn unit(q: usize) -> Self {
        Translation(1 << q)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    fn check(self, m: usize) -> Result<()> {
        if self.0 & !full_mask(m) != 0 {
            return Err(Error::DirectionOutOfRange { b: self.0, m });
        }
        Ok(())
    }

    /// Expansion of `g(x + b)`: with `S = vars(g)` and `B = supp(b)`, the
    /// terms are `(S \ B) | U` for every `U` contained in `S & B`.
    pub fn apply(self, g: Monomial) -> Polynomial {
        let fixed = g.mask() & !self.0;
        let touched = Monomial::from_mask(g.mask() & self.0);
        touched.divisors().map(|u| Monomial::from_mask(fixed | u.mask())).collect::<BTreeSet<_>>().into()
    }
}

impl From<BTreeSet<Monomial>> for Polynomial {
    fn from(terms: BTreeSet<Monomial>) -> Self {
        Polynomial { terms }
    }
}

/// Images of the generators under `t`, in generator order.
pub fn translate_set(code: &MonomialCode, t: Translation) -> Result<Vec<Polynomial>> {
    t.check(code.m())?;
    Ok(code.gens().iter().map(|&g| t.apply(g)).collect())
}

/// Whether `t` maps the code onto itself: every translated generator must be
/// a sum of generators. Monomials are linearly independent, so this is a
/// term-membership test.
pub fn is_translation_automorphism(code: &MonomialCode, t: Translation) -> Result<bool> {
    Ok(translate_set(code, t)?.iter().all(|p| p.terms().iter().all(|&term| code.contains(term))))
}

/// Divisor-closed generating set; equivalent to invariance under every
/// translation.
pub fn is_weakly_decreasing(code: &MonomialCode) -> bool {
    code.gens().iter().all(|&g| g.divisors().all(|d| code.contains(d)))
}

/// `{g(x + b) + g(x)}` over the generators, with zero polynomials dropped.
pub fn directional_derivative(code: &MonomialCode, b: Translation) -> Result<BTreeSet<Polynomial>> {
    if b.is_zero() {
        return Err(Error::ZeroDirection);
    }
    b.check(code.m())?;
    Ok(code
        .gens()
        .iter()
        .map(|&g| b.apply(g).add(&Polynomial::from(g)))
        .filter(|p| !p.is_zero())
        .collect())
}

/// A projected code `C^(b)` on the transversal `{u : bit q(b) of u = 0}`
/// (with `q(b)` the lowest set bit of `b`), in ascending point order.
#[derive(Clone, Debug)]
pub struct Projection {
    pub matrix: BitMatrix,
    pub dimension: usize,
}

pub fn project_general(code: &MonomialCode, b: Translation) -> Result<Projection> {
    let derivs = directional_derivative(code, b)?;
    let m = code.m();
    let n = code.n();
    let q = b.bits().trailing_zeros() as usize;
    let transversal: Vec<usize> = (0..n).filter(|u| u >> q & 1 == 0).collect();
    let rows: Vec<BitVector> = derivs
        .iter()
        .map(|p| {
            let full = p.evaluate(m);
            for u in 0..n {
                assert_eq!(
                    full.get(u),
                    full.get(u ^ b.bits() as usize),
                    "derivative {p} differs on the coset of {u}"
                );
            }
            BitVector::from_bits(transversal.iter().map(|&u| full.get(u)))
        })
        .collect();
    let matrix = BitMatrix::from_rows(n / 2, &rows);
    let dimension = matrix.rank();
    Ok(Projection { matrix, dimension })
}

/// Partial derivative with respect to `x_q`: `{g : x_q g in M_C}`, reindexed
/// onto `m - 1` variables.
pub fn project_trivial(code: &MonomialCode, q: usize) -> Result<MonomialCode> {
    let m = code.m();
    if q >= m {
        return Err(Error::VariableOutOfRange { q, m });
    }
    if m == 1 {
        return Err(Error::VariableCount(0));
    }
    let gens: BTreeSet<Monomial> =
        code.gens().iter().filter(|g| g.contains(q)).map(|g| g.drop_var(q)).collect();
    Ok(MonomialCode::from_set(m - 1, gens))
}

/// Number of generators divisible by `x_q`, i.e. `dim C^(2^q)`.
pub fn trivial_projection_dim(code: &MonomialCode, q: usize) -> usize {
    code.gens().iter().filter(|g| g.contains(q)).count()
}

/// A relabelling of variables: `x_j -> x_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariablePermutation {
    perm: Vec<usize>,
}

impl VariablePermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotAPermutation(m));
            }
        }
        Ok(VariablePermutation { perm })
    }

    pub fn identity(m: usize) -> Self {
        VariablePermutation { perm: (0..m).collect() }
    }

    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.perm.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, j: usize) -> usize {
        self.perm[j]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        VariablePermutation { perm: inv }
    }

    pub fn apply(&self, g: Monomial) -> Monomial {
        Monomial::from_vars(g.vars().map(|j| self.perm[j]))
    }
}

pub fn permute_variables(code: &MonomialCode, p: &VariablePermutation) -> Result<MonomialCode> {
    if p.len() != code.m() {
        return Err(Error::PermutationSize { perm: p.len(), code: code.m() });
    }
    Ok(MonomialCode::from_set(code.m(), code.gens().iter().map(|&g| p.apply(g)).collect()))
}

pub fn is_invariant(code: &MonomialCode, p: &VariablePermutation) -> Result<bool> {
    Ok(permute_variables(code, p)? == *code)
}

/// Dimension of the trivial projection in each direction `q = 0..m`.
pub fn projection_dims(code: &MonomialCode) -> Vec<usize> {
    (0..code.m()).map(|q| trivial_projection_dim(code, q)).collect()
}

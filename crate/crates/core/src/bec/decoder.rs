//! Maximum-likelihood decoding on the erasure channel.
//!
//! ML decoding of an erasure pattern succeeds iff the codeword is pinned
//! down by the surviving positions, i.e. the generator columns outside the
//! pattern still have rank `k`. Equivalently, the parity-check columns at
//! the erased positions are linearly independent; [`ErasureDecoder`] checks
//! the latter incrementally, which lets it stop at the first dependency.

use crate::error::{Error, Result};
use crate::gf2::{words_for, BitMatrix, BitVector};
use crate::monomial::{generator_matrix, MonomialCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    erased: BitVector,
}

impl ErasurePattern {
    pub fn none(n: usize) -> Self {
        ErasurePattern { erased: BitVector::zeros(n) }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(n: usize, positions: I) -> Self {
        let mut erased = BitVector::zeros(n);
        for p in positions {
            erased.set(p, true);
        }
        ErasurePattern { erased }
    }

    pub fn from_bits(erased: BitVector) -> Self {
        ErasurePattern { erased }
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn count(&self) -> usize {
        self.erased.weight()
    }

    pub fn is_erased(&self, i: usize) -> bool {
        self.erased.get(i)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.erased.iter_ones()
    }
}

/// Reference check: rank of the surviving generator columns.
pub fn ml_success(genmat: &BitMatrix, pattern: &ErasurePattern) -> Result<bool> {
    if pattern.len() != genmat.cols() {
        return Err(Error::DimensionMismatch { expected: genmat.cols(), found: pattern.len() });
    }
    let survivors: Vec<usize> = (0..pattern.len()).filter(|&i| !pattern.is_erased(i)).collect();
    Ok(genmat.select_columns(&survivors).rank() == genmat.rank())
}

/// Parity-check columns of a code, ready for incremental independence tests.
#[derive(Debug, Clone)]
pub struct ErasureDecoder {
    n: usize,
    k: usize,
    redundancy: usize,
    width: usize,
    columns: Vec<u64>,
}

/// Reusable buffers for [`ErasureDecoder`].
#[derive(Debug, Clone, Default)]
pub struct DecoderScratch {
    basis: Vec<u64>,
    filled: Vec<bool>,
    current: Vec<u64>,
}

impl ErasureDecoder {
    pub fn new(genmat: &BitMatrix) -> Self {
        let n = genmat.cols();
        let parity_t = genmat.null_space().transpose();
        let redundancy = parity_t.cols();
        let width = words_for(redundancy);
        let mut columns = Vec::with_capacity(n * width);
        for c in 0..n {
            columns.extend_from_slice(parity_t.row_words(c));
        }
        ErasureDecoder { n, k: n - redundancy, redundancy, width, columns }
    }

    pub fn for_code(code: &MonomialCode) -> Result<Self> {
        Ok(Self::new(&generator_matrix(code)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn scratch(&self) -> DecoderScratch {
        DecoderScratch {
            basis: vec![0; self.redundancy * self.width],
            filled: vec![false; self.redundancy],
            current: vec![0; self.width],
        }
    }

    /// Erases positions in the given order and returns the index (within
    /// the iteration) of the first one that makes decoding fail.
    pub fn first_failure_with<I>(&self, scratch: &mut DecoderScratch, erased: I) -> Option<usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let w = self.width;
        scratch.filled.fill(false);
        'positions: for (idx, pos) in erased.into_iter().enumerate() {
            let v = &mut scratch.current;
            v.copy_from_slice(&self.columns[pos * w..(pos + 1) * w]);
            let mut word = 0;
            loop {
                while word < w && v[word] == 0 {
                    word += 1;
                }
                if word == w {
                    return Some(idx);
                }
                let pivot = word * 64 + v[word].trailing_zeros() as usize;
                let row = &mut scratch.basis[pivot * w..(pivot + 1) * w];
                if !scratch.filled[pivot] {
                    row.copy_from_slice(v);
                    scratch.filled[pivot] = true;
                    continue 'positions;
                }
                for (a, b) in v[word..].iter_mut().zip(&row[word..]) {
                    *a ^= b;
                }
            }
        }
        None
    }

    pub fn first_failure<I: IntoIterator<Item = usize>>(&self, erased: I) -> Option<usize> {
        self.first_failure_with(&mut self.scratch(), erased)
    }

    pub fn decodable(&self, pattern: &ErasurePattern) -> Result<bool> {
        if pattern.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: pattern.len() });
        }
        Ok(self.first_failure(pattern.positions()).is_none())
    }
}

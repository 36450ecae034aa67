//! Polar codes designed for the binary erasure channel.
//!
//! Row `i` of the kernel power is the evaluation of the monomial in the
//! variables at the zero bits of `i`. Its Bhattacharyya parameter starts at
//! the design erasure rate and each bit of `i` applies one polarization
//! step: `z -> 2z - z^2` for a zero bit, `z -> z^2` for a one bit.

use crate::error::{Error, Result};
use crate::monomial::{check_vars, mon_of_row, MonomialCode};

/// Which bit of the row index is consumed first by the recursion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BitOrder {
    #[default]
    MsbFirst,
    LsbFirst,
}

fn check_epsilon(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::ErasureProbability(eps))
    }
}

/// Erasure probability of every synthetic channel, indexed by row.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarReliability {
    m: usize,
    z: Vec<f64>,
}

impl PolarReliability {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn mean(&self) -> f64 {
        self.z.iter().sum::<f64>() / self.z.len() as f64
    }
}

pub fn polar_reliabilities(m: usize, eps: f64) -> Result<PolarReliability> {
    polar_reliabilities_with(m, eps, BitOrder::MsbFirst)
}

pub fn polar_reliabilities_with(m: usize, eps: f64, order: BitOrder) -> Result<PolarReliability> {
    check_vars(m)?;
    check_epsilon(eps)?;
    let bits: Vec<usize> = match order {
        BitOrder::MsbFirst => (0..m).rev().collect(),
        BitOrder::LsbFirst => (0..m).collect(),
    };
    let z = (0..1usize << m)
        .map(|i| {
            bits.iter().fold(eps, |z, &b| if i >> b & 1 == 1 { z * z } else { 2.0 * z - z * z })
        })
        .collect();
    Ok(PolarReliability { m, z })
}

/// Keeps the `k` most reliable rows; ties go to the heavier row, then the
/// larger index.
pub fn polar_code_bec_with(m: usize, k: usize, eps: f64, order: BitOrder) -> Result<MonomialCode> {
    let rel = polar_reliabilities_with(m, eps, order)?;
    let z = rel.z();
    let n = z.len();
    if k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let mut rows: Vec<usize> = (0..n).collect();
    rows.sort_by(|&a, &b| {
        z[a].total_cmp(&z[b]).then(b.count_ones().cmp(&a.count_ones())).then(b.cmp(&a))
    });
    let gens = rows[..k].iter().map(|&i| mon_of_row(i, m)).collect::<Result<Vec<_>>>()?;
    MonomialCode::new(m, gens)
}

pub fn polar_code_bec(m: usize, k: usize, eps: f64) -> Result<MonomialCode> {
    polar_code_bec_with(m, k, eps, BitOrder::MsbFirst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{code_params, row_of_mon, Monomial};

    #[test]
    fn m1_values() {
        let rel = polar_reliabilities(1, 0.5).unwrap();
        assert_eq!(rel.z(), &[0.75, 0.25]);
    }

    #[test]
    fn m2_known_order() {
        let rel = polar_reliabilities(2, 0.5).unwrap();
        let expect = [0.9375, 0.5625, 0.4375, 0.0625];
        for (a, b) in rel.z().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let code = polar_code_bec(2, 1, 0.5).unwrap();
        assert_eq!(code.gens(), &[Monomial::ONE]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(polar_code_bec(4, 0, 0.5).is_err());
        assert!(polar_code_bec(4, 17, 0.5).is_err());
        assert!(polar_code_bec(4, 3, 1.5).is_err());
        assert!(polar_code_bec(4, 3, -0.1).is_err());
    }

    #[test]
    fn orders_agree_up_to_bit_reversal() {
        for m in 2..=8 {
            let msb = polar_reliabilities_with(m, 0.4, BitOrder::MsbFirst).unwrap().z().to_vec();
            let lsb = polar_reliabilities_with(m, 0.4, BitOrder::LsbFirst).unwrap().z().to_vec();
            for (i, z) in msb.iter().enumerate() {
                let rev = i.reverse_bits() >> (usize::BITS as usize - m);
                assert_eq!(*z, lsb[rev]);
            }
            for k in [1, 3, 1 << (m - 1)] {
                let a = code_params(&polar_code_bec_with(m, k, 0.4, BitOrder::MsbFirst).unwrap()).unwrap();
                let b = code_params(&polar_code_bec_with(m, k, 0.4, BitOrder::LsbFirst).unwrap()).unwrap();
                assert_eq!(a.dmin, b.dmin);
            }
        }
    }

    #[test]
    fn fixed_points() {
        assert!(polar_reliabilities(5, 0.0).unwrap().z().iter().all(|&z| z == 0.0));
        assert!(polar_reliabilities(5, 1.0).unwrap().z().iter().all(|&z| z == 1.0));
    }

    #[test]
    fn full_rate_code_is_everything() {
        let code = polar_code_bec(3, 8, 0.3).unwrap();
        assert_eq!(code.k(), 8);
        assert!(code.gens().iter().all(|&g| row_of_mon(g, 3) < 8));
    }
}

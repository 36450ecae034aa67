use proptest::prelude::*;
use psc_core::gf2::{gf2_rank, BitMatrix, BitVector};
use psc_core::symmetry::{
    directional_derivative, is_translation_automorphism, is_weakly_decreasing, permute_variables, project_general,
    project_trivial, translate_set, trivial_projection_dim, Translation, VariablePermutation,
};
use psc_core::{evaluate, generator_matrix, reed_muller, rm_dimension, Monomial, MonomialCode};

fn code_from_bits(m: usize, bits: u32) -> Option<MonomialCode> {
    let masks: Vec<u32> = (0u32..1 << m).filter(|x| bits >> x & 1 == 1).collect();
    (!masks.is_empty()).then(|| MonomialCode::new(m, masks.into_iter().map(Monomial::from_mask)).unwrap())
}

/// Moves every coordinate `u` to `u ^ b`.
fn shift_positions(v: &BitVector, b: u32) -> BitVector {
    BitVector::from_bits((0..v.len()).map(|u| v.get(u ^ b as usize)))
}

fn all_codes(m: usize) -> impl Iterator<Item = MonomialCode> {
    (1u32..1 << (1 << m)).filter_map(move |bits| code_from_bits(m, bits))
}

#[test]
fn translated_polynomials_evaluate_to_shifted_vectors() {
    for m in 1..=4 {
        for mask in 0u32..1 << m {
            let g = Monomial::from_mask(mask);
            for b in 0u32..1 << m {
                let p = Translation::new(b).apply(g);
                assert_eq!(p.evaluate(m), shift_positions(&evaluate(g, m), b), "g={g} b={b:b}");
            }
        }
    }
}

/// `span(rows) == span(G)` for a code's generator matrix `G`.
fn same_span(g: &BitMatrix, rows: &[BitVector]) -> bool {
    let other = BitMatrix::from_rows(g.cols(), rows);
    let r = gf2_rank(g);
    gf2_rank(&other) == r && gf2_rank(&g.stack(&other)) == r
}

#[test]
fn weakly_decreasing_iff_all_translations_preserve_span() {
    for m in 1..=3 {
        for code in all_codes(m) {
            let g = generator_matrix(&code).unwrap();
            let mut all = true;
            for b in 0u32..1 << m {
                let rows: Vec<BitVector> = code.gens().iter().map(|&x| shift_positions(&evaluate(x, m), b)).collect();
                let span_ok = same_span(&g, &rows);
                assert_eq!(is_translation_automorphism(&code, Translation::new(b)).unwrap(), span_ok);
                all &= span_ok;
            }
            assert_eq!(is_weakly_decreasing(&code), all, "{code:?}");
        }
    }
}

#[test]
fn derivative_rows_agree_on_cosets() {
    // project_general asserts the coset property internally
    for code in all_codes(3) {
        for b in 1u32..8 {
            project_general(&code, Translation::new(b)).unwrap();
        }
    }
}

#[test]
fn rm_projections_in_every_direction() {
    for m in 1..=6 {
        for r in 0..=m {
            let rm = reed_muller(r, m).unwrap();
            let expected = if r == 0 { 0 } else { rm_dimension(r - 1, m - 1) };
            for b in 1u32..1 << m {
                assert_eq!(project_general(&rm, Translation::new(b)).unwrap().dimension, expected);
            }
        }
    }
}

#[test]
fn translate_set_examples() {
    let code = MonomialCode::new(2, [Monomial::var(0)]).unwrap();
    let out = translate_set(&code, Translation::new(0b01)).unwrap();
    assert_eq!(out[0].to_string(), "x0 + 1");
    let code = MonomialCode::new(2, [Monomial::from_mask(0b11)]).unwrap();
    let out = translate_set(&code, Translation::new(0b11)).unwrap();
    assert_eq!(out[0].to_string(), "x0x1 + x1 + x0 + 1");
    let d = directional_derivative(&code, Translation::new(0b01)).unwrap();
    assert_eq!(d.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["x1"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn trivial_projection_dimension_by_rank(m in 2usize..=5, bits in any::<u32>(), q_seed in any::<usize>()) {
        let Some(code) = code_from_bits(m, bits & ((1u64 << (1 << m)) - 1) as u32) else { return Ok(()) };
        let q = q_seed % m;
        let general = project_general(&code, Translation::unit(q)).unwrap();
        let trivial = project_trivial(&code, q).unwrap();
        prop_assert_eq!(general.dimension, trivial_projection_dim(&code, q));
        prop_assert_eq!(trivial.k(), general.dimension);
    }

    #[test]
    fn projection_commutes_with_relabelling(
        bits in any::<u16>(),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        q in 0usize..4,
    ) {
        let Some(code) = code_from_bits(4, u32::from(bits)) else { return Ok(()) };
        let p = VariablePermutation::new(perm).unwrap();
        let lhs = project_trivial(&permute_variables(&code, &p).unwrap(), p.image(q)).unwrap();
        // reindex p onto the m - 1 remaining variables
        let squeeze = |j: usize, gap: usize| if j > gap { j - 1 } else { j };
        let reduced: Vec<usize> = (0..4).filter(|&j| j != q).map(|j| squeeze(p.image(j), p.image(q))).collect();
        let reduced = VariablePermutation::new(reduced).unwrap();
        let rhs = permute_variables(&project_trivial(&code, q).unwrap(), &reduced).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

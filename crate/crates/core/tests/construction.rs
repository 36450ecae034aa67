use itertools::Itertools;
use num_integer::binomial;
use psc_core::psc::{
    bound_curve, build_stage_graph, construct, grow, lower_bound, nested_chain, regular_subgraph, shrink,
    stage_count, verify_symmetry, Construction, DesignSpec, RemovalKind,
};
use psc_core::symmetry::{is_invariant, is_weakly_decreasing, project_trivial, VariablePermutation};
use psc_core::{code_params, reed_muller, rm_dimension, Monomial};

fn build(m: usize, t: usize, k: usize, d: usize) -> Construction {
    construct(&DesignSpec::new(m, t, k, d).unwrap()).unwrap()
}

fn used_flow(c: &Construction) -> bool {
    c.trace.records.iter().any(|r| matches!(r.kind, RemovalKind::Subgraph { .. }))
}

/// A spread of achievable dimensions: every point for small `m`, otherwise
/// about a dozen evenly spaced ones.
fn sample_ks(m: usize, t: usize, d: usize) -> Vec<usize> {
    let ks: Vec<usize> = bound_curve(m, t, d).unwrap().iter().map(|p| p.k).filter(|&k| k > 0).collect();
    if m <= 6 {
        return ks;
    }
    let step = (ks.len() / 12).max(1);
    ks.iter().copied().step_by(step).chain(ks.last().copied()).dedup().collect()
}

#[test]
fn stage_counts_partition_the_degree_ball() {
    for m in 1..=12 {
        for t in 1..=m {
            for d in 0..=m {
                let total: usize = (0..=t).map(|l| stage_count(m, t, l, d).unwrap()).sum();
                assert_eq!(total, rm_dimension(d, m), "m={m} t={t} d={d}");
            }
        }
    }
}

#[test]
fn rm_endpoints_reproduce_reed_muller() {
    for m in 1..=10 {
        for r in 0..=m {
            let k = rm_dimension(r, m);
            let c = build(m, m, k, m);
            assert_eq!(c.code, reed_muller(r, m).unwrap(), "m={m} r={r}");
            let expected = if r == 0 { 0 } else { rm_dimension(r - 1, m - 1) };
            assert_eq!(c.trace.k_proj, expected);
            assert_eq!(c.trace.dmin_upper_bound(), 1 << (m - r));
        }
    }
}

#[test]
fn constructed_codes_meet_the_bound() {
    for m in 1usize..=9 {
        for t in 1..=m {
            for d in [m, m.div_ceil(2)] {
                for k in sample_ks(m, t, d) {
                    let c = build(m, t, k, d);
                    assert_eq!(c.code.k(), k);
                    let dims = verify_symmetry(&c.code).dims;
                    assert!(dims[..t].iter().all(|&x| x == c.trace.k_proj), "m={m} t={t} d={d} k={k}: {dims:?}");
                    let p = code_params(&c.code).unwrap();
                    assert_eq!(p.dmin, c.trace.dmin_upper_bound(), "m={m} t={t} d={d} k={k}");
                    assert!(c.code.max_degree().unwrap() <= d);
                    if !used_flow(&c) {
                        assert!(is_weakly_decreasing(&c.code), "m={m} t={t} d={d} k={k}");
                    }
                }
            }
        }
    }
}

fn target_permutations(m: usize, t: usize) -> Vec<VariablePermutation> {
    let extend = |p: Vec<usize>| VariablePermutation::new(p.into_iter().chain(t..m).collect()).unwrap();
    if t <= 5 {
        return (0..t).permutations(t).map(extend).collect();
    }
    // transpositions generate the group; add a few long cycles for good measure
    let mut out: Vec<_> = (0..t).tuple_combinations().map(|(a, b)| VariablePermutation::transposition(m, a, b)).collect();
    for shift in 1..t {
        out.push(extend((0..t).map(|j| (j + shift) % t).collect()));
    }
    out
}

#[test]
fn codes_without_flow_are_target_symmetric() {
    for m in 2..=9 {
        for t in 2..=m {
            for k in sample_ks(m, t, m) {
                let c = build(m, t, k, m);
                if used_flow(&c) {
                    continue;
                }
                for p in target_permutations(m, t) {
                    assert!(is_invariant(&c.code, &p).unwrap(), "m={m} t={t} k={k} perm={:?}", p.as_slice());
                }
            }
        }
    }
}

#[test]
fn projections_of_codes_without_flow_are_constructions() {
    for m in 3..=9 {
        for t in 2..=m {
            for d in [m, m - 1] {
                for k in sample_ks(m, t, d) {
                    let c = build(m, t, k, d);
                    if used_flow(&c) || c.trace.stop_stage < 2 || d == 0 {
                        continue;
                    }
                    for q in 0..t {
                        let proj = project_trivial(&c.code, q).unwrap();
                        let spec = DesignSpec::new(m - 1, t - 1, proj.k(), d - 1).unwrap();
                        let trace = lower_bound(&spec);
                        assert!(trace.achievable, "m={m} t={t} d={d} k={k} q={q}");
                        let dims = verify_symmetry(&proj).dims;
                        assert!(dims[..t - 1].iter().all(|&x| x == trace.k_proj));
                        assert_eq!(construct(&spec).unwrap().code, proj);
                    }
                }
            }
        }
    }
}

#[test]
fn degree_capped_design_profile() {
    let c = build(9, 7, 256, 5);
    let dims = verify_symmetry(&c.code).dims;
    assert!(dims[..7].iter().all(|&x| x == dims[0]));
    assert!(dims[7] > dims[0] && dims[8] > dims[0]);
    assert_eq!(code_params(&c.code).unwrap().dmin, 16);
}

#[test]
fn stage_graphs_with_partitions() {
    for t in 1..=6 {
        let m = t + 2;
        for l in 1..=t {
            for partition in [Monomial::ONE, Monomial::var(t), Monomial::from_vars([t, t + 1])] {
                let g = build_stage_graph(m, t, l, partition).unwrap();
                assert_eq!(g.right_count(), binomial(t, l));
                for i in 0..g.right_count() {
                    assert!(partition.divides(g.right_vertex(i)));
                    assert_eq!(g.neighbors(i).len(), l);
                }
                let all: Vec<usize> = (0..g.right_count()).collect();
                assert_eq!(g.biregular_degrees(&all), Some((binomial(t - 1, l - 1), l)));
                for j in 0..=g.max_level() {
                    let sub = regular_subgraph(&g, j).unwrap();
                    let (x, y) = g.level_shape(j);
                    assert_eq!(sub.len(), x);
                    let mut deg = vec![0; t];
                    for (left, right) in sub.edges(&g) {
                        assert!(g.has_edge(left, right));
                        deg[left] += 1;
                    }
                    assert!(deg.iter().all(|&v| v == y));
                }
            }
        }
    }
}

#[test]
fn figure_four_chain() {
    let g = build_stage_graph(4, 4, 2, Monomial::ONE).unwrap();
    assert_eq!(g.biregular_degrees(&(0..6).collect::<Vec<_>>()), Some((3, 2)));
    assert_eq!(g.max_level(), 3);
    let chain = nested_chain(&g).unwrap();
    assert_eq!(chain.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![0, 2, 4, 6]);
    for w in chain.windows(2) {
        assert!(w[0].is_subgraph_of(&w[1]));
    }
    let first = &chain[1];
    assert_eq!(g.biregular_degrees(first.right_vertices()), Some((1, 2)));
    let again = shrink(&g, &grow(&g, first).unwrap()).unwrap();
    assert_eq!(again.level(), 1);
    assert!(grow(&g, &chain[3]).is_err());
    assert!(shrink(&g, &chain[0]).is_err());
}

#[test]
fn shrinking_from_the_top_nests() {
    for t in 1..=6 {
        for l in 1..=t {
            let g = build_stage_graph(t, t, l, Monomial::ONE).unwrap();
            let mut cur = regular_subgraph(&g, g.max_level()).unwrap();
            while cur.level() > 0 {
                let next = shrink(&g, &cur).unwrap();
                assert_eq!(next.level() + 1, cur.level());
                assert!(next.is_subgraph_of(&cur));
                cur = next;
            }
        }
    }
}

//! Building a code that meets the greedy bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{monomials_up_to_degree, Monomial, MonomialCode};

use super::bound::{lower_bound, BoundTrace, DesignSpec, RemovalKind};
use super::graph::{build_stage_graph, regular_subgraph, BipartiteStageGraph, RegularSubgraph};

/// The subgraph removed from one partition's stage graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRemoval {
    pub graph: BipartiteStageGraph,
    pub subgraph: RegularSubgraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub code: MonomialCode,
    pub trace: BoundTrace,
    pub removals: Vec<PartitionRemoval>,
}

/// Non-target parts of degree `deg` (products of variables `x_t..x_{m-1}`),
/// in descending mask order.
pub(crate) fn partitions(m: usize, t: usize, deg: usize) -> Vec<Monomial> {
    let mut masks: Vec<u32> =
        (0u32..1 << (m - t)).filter(|p| p.count_ones() as usize == deg).map(|p| p << t).collect();
    masks.sort_unstable_by(|a, b| b.cmp(a));
    masks.into_iter().map(Monomial::from_mask).collect()
}

/// Removes monomials from `RM(d, m)` following the greedy trace. Partial
/// levels are cut one partition at a time, each partition's stage graph
/// losing a whole regular subgraph before the next one is touched.
pub fn construct(spec: &DesignSpec) -> Result<Construction> {
    let trace = lower_bound(spec);
    if !trace.achievable {
        return Err(Error::Unachievable { requested: spec.k, nearest: trace.k });
    }
    let DesignSpec { m, t, d, .. } = *spec;
    let mut set: BTreeSet<Monomial> = monomials_up_to_degree(d, m).collect();
    let mut removals = Vec::new();

    for rec in &trace.records {
        match rec.kind {
            RemovalKind::WholeStage => set.retain(|&g| spec.stage_of(g) != rec.l),
            RemovalKind::DegreeLevel => set.retain(|&g| spec.stage_of(g) != rec.l || g.degree() != rec.d),
            RemovalKind::Subgraph { quanta } => {
                let mut remaining = quanta;
                for p in partitions(m, t, rec.d - rec.l) {
                    if remaining == 0 {
                        break;
                    }
                    let graph = build_stage_graph(m, t, rec.l, p)?;
                    let j = remaining.min(graph.max_level());
                    let subgraph = regular_subgraph(&graph, j)?;
                    for g in subgraph.monomials(&graph) {
                        set.remove(&g);
                    }
                    remaining -= j;
                    removals.push(PartitionRemoval { graph, subgraph });
                }
                debug_assert_eq!(remaining, 0, "a level holds at least the requested quanta");
            }
        }
    }

    let code = MonomialCode::from_set(m, set);
    debug_assert_eq!(code.k(), spec.k);
    Ok(Construction { code, trace, removals })
}

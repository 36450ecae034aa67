//! Greedy computation of the smallest common dimension of the target
//! projections at a given code dimension.
//!
//! The `t` target projections are the partial derivatives with respect to
//! `x_0, .., x_{t-1}`. A monomial with `l` variables among the targets
//! contributes one dimension to exactly `l` of them, so monomials are
//! grouped into stages by `l` and removed stage by stage, starting at
//! `l = t`. Within a stage, removal goes from the highest total degree down.

use std::fmt;

use num_integer::{binomial, Integer};

use crate::error::{Error, Result};
use crate::monomial::{check_vars, rm_dimension, Monomial};

/// Parameters of a partially symmetric design: `m` variables, `t` target
/// directions `x_0..x_{t-1}`, code dimension `k` and degree cap `d`
/// (`d = m` means no cap).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignSpec {
    pub m: usize,
    pub t: usize,
    pub k: usize,
    pub d: usize,
}

impl DesignSpec {
    pub fn new(m: usize, t: usize, k: usize, d: usize) -> Result<Self> {
        check_vars(m)?;
        if t == 0 || t > m {
            return Err(Error::InvalidDesign(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
        }
        if d > m {
            return Err(Error::InvalidDesign(format!("degree cap d = {d} exceeds m = {m}")));
        }
        let max_k = rm_dimension(d, m);
        if k > max_k {
            return Err(Error::InvalidDesign(format!(
                "k = {k} exceeds the {max_k} monomials of degree <= {d}"
            )));
        }
        Ok(DesignSpec { m, t, k, d })
    }

    pub fn target_mask(&self) -> u32 {
        (1u32 << self.t) - 1
    }

    /// Number of target variables in `g`, i.e. its stage.
    pub fn stage_of(&self, g: Monomial) -> usize {
        (g.mask() & self.target_mask()).count_ones() as usize
    }
}

impl fmt::Display for DesignSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},t={},k={},d={}", self.m, self.t, self.k, self.d)
    }
}

fn check_stage(m: usize, t: usize, l: usize, d: usize) -> Result<()> {
    if t > m || l > t || d > m {
        return Err(Error::InvalidDesign(format!(
            "need l <= t <= m and d <= m, got m={m} t={t} l={l} d={d}"
        )));
    }
    Ok(())
}

/// Number of monomials of degree at most `d` with exactly `l` target
/// variables: `C(t,l) * sum_{i <= min(m-t, d-l)} C(m-t, i)`.
pub fn stage_count(m: usize, t: usize, l: usize, d: usize) -> Result<usize> {
    check_stage(m, t, l, d)?;
    if d < l {
        return Ok(0);
    }
    let tail: usize = (0..=(m - t).min(d - l)).map(|i| binomial(m - t, i)).sum();
    Ok(binomial(t, l) * tail)
}

/// Monomials of total degree exactly `deg` with `l` target variables.
pub(crate) fn level_count(m: usize, t: usize, l: usize, deg: usize) -> usize {
    if deg < l || deg - l > m - t {
        return 0;
    }
    binomial(t, l) * binomial(m - t, deg - l)
}

/// Highest degree present in stage `l` under the cap `d`.
pub(crate) fn stage_top_degree(m: usize, t: usize, l: usize, d: usize) -> usize {
    (l + m - t).min(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Granularity {
    /// Fewest stage-`l` monomials that can be removed while keeping all
    /// target projections equal.
    pub dim_quantum: usize,
    /// Resulting drop of each target projection dimension.
    pub proj_decrement: usize,
}

/// `(lcm(t,l)/l, lcm(t,l)/t)`; stage 0 touches no target projection and
/// gives `(1, 0)`.
pub fn granularity(t: usize, l: usize) -> Result<Granularity> {
    if t == 0 || l > t {
        return Err(Error::InvalidDesign(format!("need l <= t and t >= 1, got t={t} l={l}")));
    }
    if l == 0 {
        return Ok(Granularity { dim_quantum: 1, proj_decrement: 0 });
    }
    let lcm = t.lcm(&l);
    Ok(Granularity { dim_quantum: lcm / l, proj_decrement: lcm / t })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalKind {
    /// Every monomial of the stage.
    WholeStage,
    /// Every monomial of one total degree within the stage.
    DegreeLevel,
    /// Part of one degree level, chosen through regular bipartite subgraphs.
    Subgraph { quanta: usize },
}

/// One removal step. `d` is the lowest total degree the step reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageRecord {
    pub l: usize,
    pub d: usize,
    pub removed: usize,
    pub proj_drop: usize,
    pub kind: RemovalKind,
}

impl fmt::Display for StageRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stage l={} d={} removed={} proj_drop={}",
            self.l, self.d, self.removed, self.proj_drop
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTrace {
    pub spec: DesignSpec,
    pub records: Vec<StageRecord>,
    /// Dimension reached; equals `spec.k` iff `achievable`, otherwise the
    /// nearest reachable dimension above it.
    pub k: usize,
    /// Common dimension of the target projections at `k`.
    pub k_proj: usize,
    pub achievable: bool,
    /// Stage at which removal stopped (`l-hat`).
    pub stop_stage: usize,
    /// Highest degree still present in the stopping stage.
    pub stop_degree: usize,
}

impl BoundTrace {
    /// Text log, one line per removal step.
    pub fn log(&self) -> String {
        self.records.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn removed_at_stop_stage(&self) -> usize {
        self.records.iter().filter(|r| r.l == self.stop_stage).map(|r| r.removed).sum()
    }

    pub fn subgraph_quanta(&self) -> usize {
        self.records
            .iter()
            .map(|r| match r.kind {
                RemovalKind::Subgraph { quanta } => quanta,
                _ => 0,
            })
            .sum()
    }

    /// Largest total degree left after the removals, i.e. `r+` of any code
    /// realising this trace with degree-descending removal.
    pub fn max_degree(&self) -> usize {
        let DesignSpec { m, t, d, .. } = self.spec;
        let l = self.stop_stage;
        let mut z = if l >= 1 { self.stop_degree } else { stage_top_degree(m, t, 0, d) };
        for lower in 0..l {
            if lower <= d {
                z = z.max(stage_top_degree(m, t, lower, d));
            }
        }
        z
    }

    /// `2^(m - z)`, the largest minimum distance a code realising this trace
    /// can have.
    pub fn dmin_upper_bound(&self) -> usize {
        1 << (self.spec.m - self.max_degree())
    }
}

/// Runs the greedy removal for `spec` and records every step.
pub fn lower_bound(spec: &DesignSpec) -> BoundTrace {
    let DesignSpec { m, t, k: target, d } = *spec;
    let mut k = rm_dimension(d, m);
    // monomials of degree <= d divisible by x_0
    let mut k_proj = if d >= 1 { rm_dimension(d - 1, m - 1) } else { 0 };
    let mut records = Vec::new();

    let mut l = t;
    while l >= 1 {
        let count = stage_count(m, t, l, d).expect("validated spec");
        if k < target + count {
            break;
        }
        if count > 0 {
            let proj_drop = count * l / t;
            k -= count;
            k_proj -= proj_drop;
            records.push(StageRecord { l, d: l, removed: count, proj_drop, kind: RemovalKind::WholeStage });
        }
        l -= 1;
    }

    let mut dh = stage_top_degree(m, t, l, d);
    if l >= 1 {
        while dh >= l {
            let count = level_count(m, t, l, dh);
            if k < target + count {
                break;
            }
            let proj_drop = count * l / t;
            k -= count;
            k_proj -= proj_drop;
            records.push(StageRecord { l, d: dh, removed: count, proj_drop, kind: RemovalKind::DegreeLevel });
            dh -= 1;
        }
        debug_assert!(dh >= l, "a whole stage cannot be exhausted by degree levels");

        if k > target {
            let g = granularity(t, l).expect("valid stage");
            let quanta = (k - target) / g.dim_quantum;
            if quanta > 0 {
                let removed = quanta * g.dim_quantum;
                let proj_drop = quanta * g.proj_decrement;
                k -= removed;
                k_proj -= proj_drop;
                records.push(StageRecord {
                    l,
                    d: dh,
                    removed,
                    proj_drop,
                    kind: RemovalKind::Subgraph { quanta },
                });
            }
        }
    }

    BoundTrace { spec: *spec, records, k, k_proj, achievable: k == target, stop_stage: l, stop_degree: dh }
}

/// One achievable point `(k, k_proj)` of the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundPoint {
    pub m: usize,
    pub t: usize,
    pub d: usize,
    pub k: usize,
    pub k_proj: usize,
}

impl BoundPoint {
    pub const CSV_HEADER: &'static str = "m,t,d,k,rate,k_proj,proj_rate";

    pub fn rate(&self) -> f64 {
        self.k as f64 / (1u64 << self.m) as f64
    }

    pub fn proj_rate(&self) -> f64 {
        self.k_proj as f64 / (1u64 << (self.m - 1)) as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.m,
            self.t,
            self.d,
            self.k,
            self.rate(),
            self.k_proj,
            self.proj_rate()
        )
    }
}

/// Every dimension reachable by the greedy removal, plus the trivial zero
/// code, in ascending `k`.
pub fn bound_curve(m: usize, t: usize, d: usize) -> Result<Vec<BoundPoint>> {
    // validates the parameters
    DesignSpec::new(m, t, 0, d)?;
    let mut k = rm_dimension(d, m);
    let mut k_proj = if d >= 1 { rm_dimension(d - 1, m - 1) } else { 0 };
    let point = |k, k_proj| BoundPoint { m, t, d, k, k_proj };
    let mut points = vec![point(k, k_proj)];
    for l in (1..=t).rev() {
        let g = granularity(t, l)?;
        if l > d {
            continue;
        }
        for deg in (l..=stage_top_degree(m, t, l, d)).rev() {
            let count = level_count(m, t, l, deg);
            debug_assert_eq!(count % g.dim_quantum, 0);
            for _ in 0..count / g.dim_quantum {
                k -= g.dim_quantum;
                k_proj -= g.proj_decrement;
                points.push(point(k, k_proj));
            }
        }
    }
    if k > 0 {
        points.push(point(0, 0));
    }
    points.reverse();
    Ok(points)
}

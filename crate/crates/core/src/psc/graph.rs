//! Bipartite stage graphs and their regular subgraphs.
//!
//! For a stage `l` and a fixed non-target part `P` (a product of variables
//! outside the targets), the graph has the `t` target variables on the left
//! and the `C(t, l)` monomials `S * P` (with `S` a product of `l` targets) on
//! the right, with `x_j -- g` whenever `x_j` divides `g`. Removing the right
//! vertices of a subgraph in which every left vertex has the same degree `y`
//! lowers every target projection by exactly `y`.
//!
//! A level-`j` subgraph takes `j * lcm(t,l) / l` right vertices together with
//! all their edges, so every left vertex ends up with degree
//! `j * lcm(t,l) / t`.
//!
//! The `l`-subsets of the targets split into `j*` disjoint level-1 units
//! (Baranyai's theorem). The split is built one target at a time: at step
//! `k` every unit holds partial subsets of `x_0..x_{k-1}`, and an integral
//! max-flow decides which of them receive `x_k`. The uniform fractional
//! assignment is feasible and saturates every cut, so an integral flow with
//! the same value exists. Level `j` is then the union of the first `j` units,
//! which makes the levels nested by construction.
//!
//! [`grow`] and [`shrink`] accept any regular subgraph. When it is not a
//! union of units they fall back to a depth-first search, pruned at each
//! node by the max-flow relaxation (left capacity = wanted degree, right
//! capacity `l`), that prefers units whose removal leaves a decomposable
//! remainder.

use std::collections::HashMap;

use itertools::Itertools;
use num_integer::{binomial, Integer};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::monomial::{check_vars, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteStageGraph {
    t: usize,
    l_hat: usize,
    partition: Monomial,
    right: Vec<Monomial>,
    neighbors: Vec<Vec<usize>>,
    units: Vec<Vec<usize>>,
}

/// Splits the `l`-subsets of `{0..t-1}` into classes of `lcm(t,l)/l` sets
/// covering every element `lcm(t,l)/t` times.
fn baranyai_units(t: usize, l: usize) -> Vec<Vec<u32>> {
    let lcm = t.lcm(&l);
    let per = lcm / t;
    let classes = l * binomial(t, l) / lcm;
    let mut parts = vec![vec![0u32; lcm / l]; classes];
    for k in 0..t {
        let mut keys: Vec<u32> = parts.iter().flatten().copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let source = 0;
        let sink = 1 + classes + keys.len();
        let mut net = FlowNetwork::new(sink + 1);
        let mut arcs = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            net.add_arc(source, 1 + i, per as i64);
            let mut sorted = part.clone();
            sorted.sort_unstable();
            for (s, group) in &sorted.into_iter().chunk_by(|&s| s) {
                let node = 1 + classes + keys.binary_search(&s).expect("key present");
                arcs.push((i, s, net.add_arc(1 + i, node, group.count() as i64)));
            }
        }
        for (p, &s) in keys.iter().enumerate() {
            let size = s.count_ones() as usize;
            // l-subsets meeting {0..k} in s and containing k
            let cap = if size < l && l - size - 1 < t - k { binomial(t - k - 1, l - size - 1) } else { 0 };
            net.add_arc(1 + classes + p, sink, cap as i64);
        }
        let value = net.max_flow(source, sink) as usize;
        assert_eq!(value, classes * per, "fractional solution saturates the source");
        for (i, s, arc) in arcs {
            let mut todo = net.flow(arc) as usize;
            for set in parts[i].iter_mut() {
                if todo == 0 {
                    break;
                }
                if *set == s {
                    *set |= 1 << k;
                    todo -= 1;
                }
            }
        }
    }
    parts
}

/// Builds the stage graph of stage `l_hat` for the non-target part
/// `partition`. Right vertices are listed in descending mask order.
pub fn build_stage_graph(m: usize, t: usize, l_hat: usize, partition: Monomial) -> Result<BipartiteStageGraph> {
    check_vars(m)?;
    if t == 0 || t > m || l_hat == 0 || l_hat > t {
        return Err(Error::InvalidDesign(format!("need 1 <= l <= t <= m, got m={m} t={t} l={l_hat}")));
    }
    let targets = (1u32 << t) - 1;
    if partition.mask() & targets != 0 || partition.mask() >> m != 0 {
        return Err(Error::InvalidDesign(format!(
            "partition {partition} must use only variables x{t}..x{}",
            m - 1
        )));
    }
    let mut subsets: Vec<u32> = (0..=targets).filter(|s| s.count_ones() as usize == l_hat).collect();
    subsets.sort_unstable_by(|a, b| b.cmp(a));
    let right: Vec<Monomial> = subsets.iter().map(|&s| Monomial::from_mask(s | partition.mask())).collect();
    let neighbors = subsets.iter().map(|&s| Monomial::from_mask(s).vars().collect()).collect();
    let units = baranyai_units(t, l_hat)
        .into_iter()
        .map(|unit| {
            let mut idx: Vec<usize> = unit
                .iter()
                .map(|s| subsets.binary_search_by(|x| s.cmp(x)).expect("every l-subset appears once"))
                .collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    Ok(BipartiteStageGraph { t, l_hat, partition, right, neighbors, units })
}

impl BipartiteStageGraph {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn l_hat(&self) -> usize {
        self.l_hat
    }

    pub fn partition(&self) -> Monomial {
        self.partition
    }

    pub fn right_count(&self) -> usize {
        self.right.len()
    }

    pub fn right_vertex(&self, i: usize) -> Monomial {
        self.right[i]
    }

    /// Left vertices (target indices) adjacent to right vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, j: usize, i: usize) -> bool {
        self.neighbors[i].contains(&j)
    }

    /// The disjoint level-1 subgraphs whose prefixes define the levels.
    pub fn units(&self) -> &[Vec<usize>] {
        &self.units
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.right.len()).flat_map(|i| self.neighbors[i].iter().map(move |&j| (j, i))).collect()
    }

    fn lcm(&self) -> usize {
        self.t.lcm(&self.l_hat)
    }

    /// Right vertices in a level-1 subgraph.
    pub fn unit_right(&self) -> usize {
        self.lcm() / self.l_hat
    }

    /// Left degree in a level-1 subgraph.
    pub fn unit_left_degree(&self) -> usize {
        self.lcm() / self.t
    }

    /// `j*`: the level of the whole graph.
    pub fn max_level(&self) -> usize {
        self.l_hat * binomial(self.t, self.l_hat) / self.lcm()
    }

    /// `(right vertex count, left degree)` of a level-`j` subgraph.
    pub fn level_shape(&self, j: usize) -> (usize, usize) {
        (j * self.unit_right(), j * self.unit_left_degree())
    }

    fn left_degrees(&self, selected: &[usize]) -> Vec<usize> {
        let mut deg = vec![0; self.t];
        for &i in selected {
            for &j in &self.neighbors[i] {
                deg[j] += 1;
            }
        }
        deg
    }

    /// `Some((y, l))` when every left vertex has the same degree `y` in the
    /// subgraph spanned by `selected` (right vertices are always of degree
    /// `l`).
    pub fn biregular_degrees(&self, selected: &[usize]) -> Option<(usize, usize)> {
        let deg = self.left_degrees(selected);
        deg.iter().all(|&y| y == deg[0]).then(|| (deg[0], self.l_hat))
    }

    /// Level of the subgraph spanned by `selected`, if it is one.
    pub fn level_of(&self, selected: &[usize]) -> Option<usize> {
        let mut seen = vec![false; self.right.len()];
        for &i in selected {
            if i >= self.right.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let (y, _) = self.biregular_degrees(selected)?;
        let j = selected.len() / self.unit_right();
        (self.level_shape(j) == (selected.len(), y)).then_some(j)
    }
}

/// A set of right vertices of a stage graph spanning a biregular subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubgraph {
    level: usize,
    selected: Vec<usize>,
}

impl RegularSubgraph {
    /// Wraps `selected` after checking it spans a regular subgraph of `g`.
    pub fn new(g: &BipartiteStageGraph, mut selected: Vec<usize>) -> Result<Self> {
        selected.sort_unstable();
        let level = g.level_of(&selected).ok_or(Error::NotRegular)?;
        Ok(RegularSubgraph { level, selected })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Selected right vertices, ascending.
    pub fn right_vertices(&self) -> &[usize] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn monomials(&self, g: &BipartiteStageGraph) -> Vec<Monomial> {
        self.selected.iter().map(|&i| g.right_vertex(i)).collect()
    }

    pub fn edges(&self, g: &BipartiteStageGraph) -> Vec<(usize, usize)> {
        self.selected.iter().flat_map(|&i| g.neighbors(i).iter().map(move |&j| (j, i))).collect()
    }

    pub fn is_subgraph_of(&self, other: &RegularSubgraph) -> bool {
        self.selected.iter().all(|i| other.selected.binary_search(i).is_ok())
    }
}

/// Max-flow relaxation restricted to `pool`. Returns the flow value and the
/// flow through each pool vertex.
fn relax(g: &BipartiteStageGraph, pool: &[usize], demand: &[usize]) -> (usize, Vec<usize>) {
    let t = g.t;
    let source = 0;
    let sink = t + pool.len() + 1;
    let mut net = FlowNetwork::new(sink + 1);
    for (j, &dem) in demand.iter().enumerate() {
        net.add_arc(source, 1 + j, dem as i64);
    }
    for (p, &i) in pool.iter().enumerate() {
        for &j in &g.neighbors[i] {
            net.add_arc(1 + j, 1 + t + p, 1);
        }
    }
    let outs: Vec<_> = (0..pool.len()).map(|p| net.add_arc(1 + t + p, sink, g.l_hat as i64)).collect();
    let value = net.max_flow(source, sink) as usize;
    (value, outs.into_iter().map(|a| net.flow(a) as usize).collect())
}

/// Enumerates subsets of `pool` whose left degrees equal `demand`, each
/// appended to `chosen`, until `visit` accepts one.
fn search(
    g: &BipartiteStageGraph,
    pool: &[usize],
    demand: &mut [usize],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let needed: usize = demand.iter().sum();
    if needed == 0 {
        return visit(chosen);
    }
    let (value, flows) = relax(g, pool, demand);
    if value < needed {
        return false;
    }
    if flows.iter().all(|&f| f == 0 || f == g.l_hat) {
        let before = chosen.len();
        chosen.extend(pool.iter().zip(&flows).filter(|(_, &f)| f > 0).map(|(&i, _)| i));
        if visit(chosen) {
            return true;
        }
        chosen.truncate(before);
    }

    let max = *flows.iter().max().expect("positive flow needs a pool");
    let pos = flows.iter().position(|&f| f == max).expect("max exists");
    let v = pool[pos];
    let rest: Vec<usize> = pool.iter().copied().filter(|&i| i != v).collect();

    if g.neighbors[v].iter().all(|&j| demand[j] > 0) {
        for &j in &g.neighbors[v] {
            demand[j] -= 1;
        }
        chosen.push(v);
        let found = search(g, &rest, demand, chosen, visit);
        chosen.pop();
        for &j in &g.neighbors[v] {
            demand[j] += 1;
        }
        if found {
            return true;
        }
    }
    search(g, &rest, demand, chosen, visit)
}

fn pool_key(pool: &[usize]) -> Vec<u64> {
    let mut key = vec![0u64; pool.iter().max().map_or(0, |&i| i / 64 + 1)];
    for &i in pool {
        key[i / 64] |= 1 << (i % 64);
    }
    key
}

/// Whether `pool` splits into disjoint level-1 subgraphs.
fn decomposable(g: &BipartiteStageGraph, pool: &[usize], memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    if pool.is_empty() {
        return true;
    }
    let key = pool_key(pool);
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    // every vertex lies in some unit, so the unit holding pool[0] can be fixed
    let first = pool[0];
    let mut demand = vec![g.unit_left_degree(); g.t];
    let mut ok = g.neighbors[first].iter().all(|&j| demand[j] > 0);
    if ok {
        for &j in &g.neighbors[first] {
            demand[j] -= 1;
        }
        let mut chosen = vec![first];
        ok = search(g, &pool[1..], &mut demand, &mut chosen, &mut |unit| {
            let rest: Vec<usize> = pool.iter().copied().filter(|i| !unit.contains(i)).collect();
            decomposable(g, &rest, memo)
        });
    }
    memo.insert(key, ok);
    ok
}

/// The level-`j` regular subgraph of `g`: the union of its first `j` units.
pub fn regular_subgraph(g: &BipartiteStageGraph, j: usize) -> Result<RegularSubgraph> {
    let max = g.max_level();
    if j > max {
        return Err(Error::LevelOutOfRange { j, max });
    }
    RegularSubgraph::new(g, g.units[..j].concat())
}

/// Indices of the units making up `sub`, if it is a union of units.
fn unit_cover(g: &BipartiteStageGraph, sub: &RegularSubgraph) -> Option<Vec<usize>> {
    let mut used = Vec::new();
    for (u, unit) in g.units.iter().enumerate() {
        let inside = unit.iter().filter(|i| sub.selected.binary_search(i).is_ok()).count();
        if inside == unit.len() {
            used.push(u);
        } else if inside > 0 {
            return None;
        }
    }
    Some(used)
}

/// Finds a level-1 subgraph inside `pool`, preferring one whose removal
/// leaves a set that still splits into level-1 subgraphs.
fn pick_unit(g: &BipartiteStageGraph, pool: &[usize]) -> Option<Vec<usize>> {
    let mut memo = HashMap::new();
    let mut unit = None;
    let mut demand = vec![g.unit_left_degree(); g.t];
    search(g, pool, &mut demand, &mut Vec::new(), &mut |sel| {
        let rest: Vec<usize> = pool.iter().copied().filter(|i| !sel.contains(i)).collect();
        if decomposable(g, &rest, &mut memo) {
            unit = Some(sel.to_vec());
            true
        } else {
            false
        }
    });
    unit.or_else(|| {
        let mut demand = vec![g.unit_left_degree(); g.t];
        let mut any = None;
        search(g, pool, &mut demand, &mut Vec::new(), &mut |sel| {
            any = Some(sel.to_vec());
            true
        });
        any
    })
}

fn check_member(g: &BipartiteStageGraph, sub: &RegularSubgraph) -> Result<()> {
    match g.level_of(&sub.selected) {
        Some(j) if j == sub.level => Ok(()),
        _ => Err(Error::NotRegular),
    }
}

/// A level-`j+1` subgraph containing the level-`j` subgraph `sub`.
pub fn grow(g: &BipartiteStageGraph, sub: &RegularSubgraph) -> Result<RegularSubgraph> {
    check_member(g, sub)?;
    let max = g.max_level();
    if sub.level >= max {
        return Err(Error::LevelOutOfRange { j: sub.level + 1, max });
    }
    let unit = match unit_cover(g, sub) {
        Some(used) => {
            let next = (0..g.units.len()).find(|u| !used.contains(u)).expect("below the top level");
            g.units[next].clone()
        }
        None => {
            let pool: Vec<usize> =
                (0..g.right_count()).filter(|i| sub.selected.binary_search(i).is_err()).collect();
            pick_unit(g, &pool).ok_or(Error::NoRegularSubgraph)?
        }
    };
    let mut selected = sub.selected.clone();
    selected.extend(unit);
    RegularSubgraph::new(g, selected)
}

/// A level-`j-1` subgraph contained in the level-`j` subgraph `sub`.
pub fn shrink(g: &BipartiteStageGraph, sub: &RegularSubgraph) -> Result<RegularSubgraph> {
    check_member(g, sub)?;
    if sub.level == 0 {
        return Err(Error::LevelOutOfRange { j: 0, max: g.max_level() });
    }
    let unit = match unit_cover(g, sub) {
        Some(used) => g.units[*used.last().expect("level >= 1")].clone(),
        None => pick_unit(g, &sub.selected).ok_or(Error::NoRegularSubgraph)?,
    };
    let selected = sub.selected.iter().copied().filter(|i| !unit.contains(i)).collect();
    RegularSubgraph::new(g, selected)
}

/// The full chain `G_0 < G_1 < .. < G_{j*}`, built by repeated growth from
/// the empty subgraph.
pub fn nested_chain(g: &BipartiteStageGraph) -> Result<Vec<RegularSubgraph>> {
    let mut chain = vec![RegularSubgraph { level: 0, selected: Vec::new() }];
    for _ in 0..g.max_level() {
        let next = grow(g, chain.last().expect("non-empty"))?;
        chain.push(next);
    }
    Ok(chain)
}

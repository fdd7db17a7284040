//! Decorated maps and the strictly positive transportation problem.
//!
//! Every white vertex supplies one unit, a black vertex decorated by `R_i`
//! demands `i - 1` units, and each edge is a pipe from its white end to its
//! black end. A decorated map counts towards a Kerov coefficient when the
//! demands can be met with a strictly positive amount in every pipe.
//!
//! Strict positivity is decided arc by arc: an arc can carry flow in some
//! feasible solution iff it already does in a reference flow or the residual
//! graph has a path from its black end back to its white end. The feasible
//! set is convex, so averaging one witness per arc gives a single strictly
//! positive flow, which is also returned as a certificate.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::maps::{maps_with_first, BipartiteMap, MapConfig};
use crate::poly::{Monomial, RPolynomial};

/// A map whose black vertices carry free-cumulant indices `≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedMap {
    map: BipartiteMap,
    decorations: Vec<usize>,
}

impl DecoratedMap {
    /// `decorations[j]` labels the `j`-th black vertex of [`BipartiteMap::black_vertices`].
    pub fn new(map: BipartiteMap, decorations: Vec<usize>) -> Result<Self> {
        if decorations.len() != map.num_black() {
            return Err(Error::MalformedMap(format!(
                "{} decorations for {} black vertices",
                decorations.len(),
                map.num_black()
            )));
        }
        if let Some(&bad) = decorations.iter().find(|&&i| i < 2) {
            return Err(Error::MalformedMap(format!(
                "decoration R{bad} is not allowed"
            )));
        }
        Ok(DecoratedMap { map, decorations })
    }

    pub fn map(&self) -> &BipartiteMap {
        &self.map
    }

    pub fn decorations(&self) -> &[usize] {
        &self.decorations
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.decorations.clone())
    }

    pub fn network(&self) -> FlowNetwork {
        FlowNetwork {
            supplies: vec![1; self.map.num_white()],
            demands: self.decorations.iter().map(|&i| i as i64 - 1).collect(),
            arcs: self.map.edge_endpoints(),
        }
    }
}

/// Bipartite supply/demand network; one arc per map edge, uncapacitated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub supplies: Vec<i64>,
    pub demands: Vec<i64>,
    /// `(white, black)` per arc; parallel arcs are kept.
    pub arcs: Vec<(usize, usize)>,
}

impl FlowNetwork {
    pub fn is_balanced(&self) -> bool {
        self.supplies.iter().sum::<i64>() == self.demands.iter().sum::<i64>()
    }

    /// An integral flow meeting every supply and demand exactly, if one exists.
    pub fn feasible_flow(&self) -> Option<Vec<i64>> {
        if !self.is_balanced() {
            return None;
        }
        let whites = self.supplies.len();
        let blacks = self.demands.len();
        let total: i64 = self.supplies.iter().sum();
        // node layout: source, whites, blacks, sink
        let source = 0;
        let sink = whites + blacks + 1;
        let mut graph = ResidualGraph::new(sink + 1);
        for (w, &s) in self.supplies.iter().enumerate() {
            graph.add_edge(source, 1 + w, s);
        }
        for (b, &d) in self.demands.iter().enumerate() {
            graph.add_edge(1 + whites + b, sink, d);
        }
        let arc_ids: Vec<usize> = self
            .arcs
            .iter()
            .map(|&(w, b)| graph.add_edge(1 + w, 1 + whites + b, total))
            .collect();
        if graph.max_flow(source, sink) != total {
            return None;
        }
        Some(arc_ids.iter().map(|&id| graph.flow(id)).collect())
    }

    /// For each arc, whether some feasible flow is positive on it.
    /// `None` when no feasible flow exists at all.
    pub fn positive_support(&self) -> Option<Vec<bool>> {
        let flow = self.feasible_flow()?;
        Some(
            (0..self.arcs.len())
                .map(|e| flow[e] > 0 || self.residual_path(&flow, e).is_some())
                .collect(),
        )
    }

    /// Residual path from the black end of arc `e` back to its white end, as
    /// a list of `(arc, forward)` steps.
    fn residual_path(&self, flow: &[i64], e: usize) -> Option<Vec<(usize, bool)>> {
        let whites = self.supplies.len();
        let (w_target, b_start) = self.arcs[e];
        let node_count = whites + self.demands.len();
        let mut parent: Vec<Option<(usize, bool, usize)>> = vec![None; node_count];
        let mut seen = vec![false; node_count];
        let start = whites + b_start;
        let target = w_target;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == target {
                break;
            }
            for (a, &(w, b)) in self.arcs.iter().enumerate() {
                let (from, to, forward) = if v < whites {
                    (w, whites + b, true)
                } else {
                    (whites + b, w, false)
                };
                if from != v || seen[to] {
                    continue;
                }
                if !forward && flow[a] == 0 {
                    continue;
                }
                seen[to] = true;
                parent[to] = Some((a, forward, v));
                queue.push_back(to);
            }
        }
        if !seen[target] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = target;
        while v != start {
            let (a, forward, prev) = parent[v].expect("reached nodes have parents");
            path.push((a, forward));
            v = prev;
        }
        path.reverse();
        Some(path)
    }

    /// A flow that is strictly positive on every arc and meets all supplies
    /// and demands exactly, if one exists.
    pub fn strictly_positive_flow(&self) -> Option<Vec<BigRational>> {
        let flow = self.feasible_flow()?;
        let mut sum = vec![BigInt::zero(); self.arcs.len()];
        for e in 0..self.arcs.len() {
            let mut witness = flow.clone();
            if witness[e] == 0 {
                let path = self.residual_path(&flow, e)?;
                let delta = path
                    .iter()
                    .filter(|(_, forward)| !forward)
                    .map(|&(a, _)| flow[a])
                    .min()
                    .expect("a path from black to white starts with a backward arc");
                witness[e] += delta;
                for (a, forward) in path {
                    if forward {
                        witness[a] += delta;
                    } else {
                        witness[a] -= delta;
                    }
                }
            }
            for (s, x) in sum.iter_mut().zip(&witness) {
                *s += *x;
            }
        }
        let count = BigInt::from(self.arcs.len());
        Some(
            sum.into_iter()
                .map(|s| BigRational::new(s, count.clone()))
                .collect(),
        )
    }

    /// Checks nonnegativity, positivity if requested, and exact conservation.
    pub fn verify_flow(&self, flow: &[BigRational], strict: bool) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        if flow
            .iter()
            .any(|f| f.is_negative() || (strict && f.is_zero()))
        {
            return false;
        }
        let mut out_w = vec![BigRational::zero(); self.supplies.len()];
        let mut in_b = vec![BigRational::zero(); self.demands.len()];
        for (f, &(w, b)) in flow.iter().zip(&self.arcs) {
            out_w[w] += f;
            in_b[b] += f;
        }
        let int = |v: i64| BigRational::from_integer(v.into());
        out_w.iter().zip(&self.supplies).all(|(x, &s)| *x == int(s))
            && in_b.iter().zip(&self.demands).all(|(x, &d)| *x == int(d))
    }
}

/// Edge-list residual graph for Edmonds–Karp.
struct ResidualGraph {
    adjacency: Vec<Vec<usize>>,
    // (to, capacity); edge 2i is forward, 2i+1 its reverse
    edges: Vec<(usize, i64)>,
    original: Vec<i64>,
}

impl ResidualGraph {
    fn new(nodes: usize) -> Self {
        ResidualGraph {
            adjacency: vec![Vec::new(); nodes],
            edges: Vec::new(),
            original: Vec::new(),
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.adjacency[from].push(id);
        self.edges.push((to, cap));
        self.adjacency[to].push(id + 1);
        self.edges.push((from, 0));
        self.original.push(cap);
        id
    }

    fn flow(&self, id: usize) -> i64 {
        self.original[id / 2] - self.edges[id].1
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut parent: Vec<Option<usize>> = vec![None; self.adjacency.len()];
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    reached = true;
                    break;
                }
                for &id in &self.adjacency[v] {
                    let (to, cap) = self.edges[id];
                    if cap > 0 && to != source && parent[to].is_none() {
                        parent[to] = Some(id);
                        queue.push_back(to);
                    }
                }
            }
            if !reached {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while let Some(id) = parent[v] {
                bottleneck = bottleneck.min(self.edges[id].1);
                v = self.edges[id ^ 1].0;
            }
            let mut v = sink;
            while let Some(id) = parent[v] {
                self.edges[id].1 -= bottleneck;
                self.edges[id ^ 1].1 += bottleneck;
                v = self.edges[id ^ 1].0;
            }
            total += bottleneck;
        }
    }
}

/// Whether the decorated map admits a transportation plan with every pipe
/// carrying a strictly positive amount.
pub fn strictly_positive_feasible(d: &DecoratedMap) -> bool {
    let network = d.network();
    if !network.is_balanced() {
        return false;
    }
    match network.positive_support() {
        Some(support) => support.into_iter().all(|s| s),
        None => false,
    }
}

/// Whether the map has a bridge other than the pendant edge of a white leaf.
pub fn has_disallowed_disconnecting_edge(map: &BipartiteMap) -> bool {
    let whites = map.num_white();
    let nodes = whites + map.num_black();
    let arcs = map.edge_endpoints();
    let white_degree: Vec<usize> = map.white_vertices().iter().map(Vec::len).collect();
    let components = |skip: usize| -> usize {
        let mut adjacency = vec![Vec::new(); nodes];
        for (e, &(w, b)) in arcs.iter().enumerate() {
            if e != skip {
                adjacency[w].push(whites + b);
                adjacency[whites + b].push(w);
            }
        }
        let mut seen = vec![false; nodes];
        let mut count = 0;
        for s in 0..nodes {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    };
    let base = components(usize::MAX);
    arcs.iter()
        .enumerate()
        .any(|(e, &(w, _))| white_degree[w] != 1 && components(e) > base)
}

/// Distinct orderings of a multiset, in lexicographic order.
fn distinct_arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    let mut a = items.to_vec();
    a.sort_unstable();
    let mut out = vec![a.clone()];
    while let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
        let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        out.push(a.clone());
    }
    out
}

/// Number of pairs (map with `k` edges, assignment of the multiset to its
/// black vertices) that admit a strictly positive transportation plan.
pub fn count_decorated_maps(k: usize, decorations: &[usize], config: &MapConfig) -> Result<u64> {
    config.check(k)?;
    if let Some(&bad) = decorations.iter().find(|&&i| i < 2) {
        return Err(Error::MalformedMap(format!(
            "decoration R{bad} is not allowed"
        )));
    }
    let arrangements = distinct_arrangements(decorations);
    let count = (1..=k)
        .into_par_iter()
        .map(|first| {
            maps_with_first(k, first)
                .filter(|m| m.num_black() == decorations.len())
                .map(|m| {
                    arrangements
                        .iter()
                        .filter(|dec| {
                            let d = DecoratedMap::new(m.clone(), dec.to_vec())
                                .expect("arrangement length matches black vertices");
                            strictly_positive_feasible(&d)
                        })
                        .count() as u64
                })
                .sum::<u64>()
        })
        .sum();
    Ok(count)
}

/// Compositions of `total` into `parts` positive summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=total.saturating_sub(parts - 1) {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Kerov polynomial of `Ch_k` assembled from decorated-map counts: every
/// balanced decoration of every `k`-edge map that passes the strict
/// positivity test adds one to the coefficient of its monomial.
pub fn kerov_polynomial_from_maps(k: usize, config: &MapConfig) -> Result<RPolynomial> {
    config.check(k)?;
    let counts: BTreeMap<Monomial, u64> = (1..=k)
        .into_par_iter()
        .map(|first| {
            let mut local: BTreeMap<Monomial, u64> = BTreeMap::new();
            for m in maps_with_first(k, first) {
                // balance: Σ (i_j - 1) = #white, each i_j - 1 ≥ 1
                for excess in compositions(m.num_white(), m.num_black()) {
                    let dec: Vec<usize> = excess.iter().map(|e| e + 1).collect();
                    let d = DecoratedMap::new(m.clone(), dec).expect("one decoration per black");
                    if strictly_positive_feasible(&d) {
                        *local.entry(d.monomial()).or_insert(0) += 1;
                    }
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (m, c) in b {
                *a.entry(m).or_insert(0) += c;
            }
            a
        });
    Ok(RPolynomial::from_terms(counts.into_iter().map(|(m, c)| {
        (m, BigRational::from_integer(BigInt::from(c)))
    })))
}

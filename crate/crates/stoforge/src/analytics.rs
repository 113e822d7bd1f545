//! Network metrics over simple undirected projections of the knowledge
//! graph: density, transitivity, clustering, degree centralization, and
//! per-node centralities.
//!
//! All operations are pure over immutable graphs. With the `parallel`
//! feature (default) the per-source loops of closeness and betweenness run
//! on the rayon pool; results are reduced into a sorted map, so the output
//! is identical to the sequential fallback.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::rdf::{Graph, Iri};

/// An undirected simple graph over IRIs: no self-loops, deduplicated edges,
/// both endpoints tracked as nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    nodes: BTreeSet<Iri>,
    edges: BTreeSet<(Iri, Iri)>,
    adjacency: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        SimpleGraph::default()
    }

    pub fn add_node(&mut self, node: Iri) {
        self.adjacency.entry(node.clone()).or_default();
        self.nodes.insert(node);
    }

    /// Adds an undirected edge; self-loops are dropped, duplicates collapse.
    pub fn add_edge(&mut self, a: Iri, b: Iri) {
        if a == b {
            return;
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.add_node(lo.clone());
        self.add_node(hi.clone());
        if self.edges.insert((lo.clone(), hi.clone())) {
            self.adjacency.get_mut(&lo).unwrap().insert(hi.clone());
            self.adjacency.get_mut(&hi).unwrap().insert(lo);
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Iri> {
        self.nodes.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(Iri, Iri)> {
        self.edges.iter()
    }

    pub fn neighbors(&self, node: &Iri) -> impl Iterator<Item = &Iri> {
        self.adjacency.get(node).into_iter().flatten()
    }

    pub fn degree(&self, node: &Iri) -> usize {
        self.adjacency.get(node).map_or(0, |n| n.len())
    }

    pub fn has_edge(&self, a: &Iri, b: &Iri) -> bool {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.edges.contains(&(lo.clone(), hi.clone()))
    }

    /// Index view used by the traversal loops.
    fn indexed(&self) -> (Vec<&Iri>, Vec<Vec<usize>>) {
        let nodes: Vec<&Iri> = self.nodes.iter().collect();
        let index: BTreeMap<&Iri, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let adj: Vec<Vec<usize>> = nodes
            .iter()
            .map(|n| self.neighbors(n).map(|m| index[m]).collect())
            .collect();
        (nodes, adj)
    }
}

/// Per-node centrality triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Centrality {
    pub degree: f64,
    pub closeness: f64,
    pub betweenness: f64,
}

/// The metric bundle reported for one projected graph.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub density: f64,
    pub transitivity: f64,
    pub avg_clustering: f64,
    pub degree_centralization: f64,
    pub centrality: BTreeMap<Iri, Centrality>,
}

impl MetricsReport {
    pub fn compute(graph: &SimpleGraph) -> Self {
        MetricsReport {
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
            density: density(graph),
            transitivity: transitivity(graph),
            avg_clustering: avg_clustering(graph),
            degree_centralization: degree_centralization(graph),
            centrality: centralities(graph),
        }
    }
}

/// Projects the KG onto a simple graph: nodes are subjects/objects typed
/// `node_type` that touch an in-scope triple; one undirected edge per
/// connected pair regardless of predicate multiplicity or direction.
pub fn project_relation_graph(
    kg: &Graph,
    predicates: &BTreeSet<Iri>,
    node_type: &Iri,
) -> SimpleGraph {
    let typed = kg.instances_of(node_type);
    let mut out = SimpleGraph::new();
    for predicate in predicates {
        for t in kg.predicate_triples(predicate) {
            let (Some(s), Some(o)) = (t.subject.iri(), t.object.iri()) else {
                continue;
            };
            let s_res = crate::rdf::Resource::Iri(s.clone());
            let o_res = crate::rdf::Resource::Iri(o.clone());
            if typed.contains(&s_res) && typed.contains(&o_res) {
                out.add_edge(s.clone(), o.clone());
            }
        }
    }
    out
}

/// Fraction of potential connections that are actual connections:
/// `2E / (n (n-1))`, 0 by convention below two nodes.
pub fn density(g: &SimpleGraph) -> f64 {
    let n = g.node_count();
    if n < 2 {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64)
}

/// Global clustering: `3 * triangles / connected triples`, 0 when there are
/// no connected triples.
pub fn transitivity(g: &SimpleGraph) -> f64 {
    let (_, adj) = g.indexed();
    let mut triples = 0usize;
    let mut closed = 0usize;
    for (v, nbrs) in adj.iter().enumerate() {
        let d = nbrs.len();
        triples += d * d.saturating_sub(1) / 2;
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let (a, b) = (nbrs[i], nbrs[j]);
                if adj[a].contains(&b) {
                    closed += 1;
                }
            }
        }
        let _ = v;
    }
    if triples == 0 {
        return 0.0;
    }
    // Each triangle is counted once per corner, i.e. 3 times in `closed`,
    // so closed/triples already equals 3*triangles/triples.
    closed as f64 / triples as f64
}

/// Mean local clustering coefficient; nodes with degree < 2 contribute 0.
pub fn avg_clustering(g: &SimpleGraph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let (_, adj) = g.indexed();
    let total: f64 = adj
        .iter()
        .map(|nbrs| {
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for i in 0..nbrs.len() {
                for j in (i + 1)..nbrs.len() {
                    if adj[nbrs[i]].contains(&nbrs[j]) {
                        links += 1;
                    }
                }
            }
            links as f64 / (d * (d - 1) / 2) as f64
        })
        .sum();
    total / n as f64
}

/// Freeman degree centralization: `Σ (deg_max - deg(v)) / ((n-1)(n-2))`,
/// 0 by convention below three nodes.
pub fn degree_centralization(g: &SimpleGraph) -> f64 {
    let n = g.node_count();
    if n < 3 {
        return 0.0;
    }
    let degrees: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    let max = *degrees.iter().max().unwrap();
    let sum: usize = degrees.iter().map(|d| max - d).sum();
    sum as f64 / ((n - 1) * (n - 2)) as f64
}

/// Degree, closeness, and betweenness centrality for every node, keyed and
/// therefore ordered by node IRI.
///
/// Closeness uses the within-component convention scaled by the component
/// fraction: `((nc-1)/(n-1)) * ((nc-1)/Σd)`. Betweenness is Brandes'
/// algorithm normalized by `(n-1)(n-2)/2`.
pub fn centralities(g: &SimpleGraph) -> BTreeMap<Iri, Centrality> {
    let n = g.node_count();
    let (nodes, adj) = g.indexed();
    if n == 0 {
        return BTreeMap::new();
    }

    let closeness = closeness_values(&adj, n);
    let betweenness = betweenness_values(&adj, n);

    nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let degree = if n > 1 {
                adj[i].len() as f64 / (n - 1) as f64
            } else {
                0.0
            };
            (
                (*node).clone(),
                Centrality {
                    degree,
                    closeness: closeness[i],
                    betweenness: betweenness[i],
                },
            )
        })
        .collect()
}

fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn closeness_of(adj: &[Vec<usize>], n: usize, v: usize) -> f64 {
    let dist = bfs_distances(adj, v);
    let reachable: Vec<usize> = dist.iter().flatten().copied().collect();
    let nc = reachable.len(); // component size including v
    if nc < 2 || n < 2 {
        return 0.0;
    }
    let total: usize = reachable.iter().sum();
    ((nc - 1) as f64 / (n - 1) as f64) * ((nc - 1) as f64 / total as f64)
}

#[cfg(feature = "parallel")]
fn closeness_values(adj: &[Vec<usize>], n: usize) -> Vec<f64> {
    (0..n).into_par_iter().map(|v| closeness_of(adj, n, v)).collect()
}

#[cfg(not(feature = "parallel"))]
fn closeness_values(adj: &[Vec<usize>], n: usize) -> Vec<f64> {
    (0..n).map(|v| closeness_of(adj, n, v)).collect()
}

/// One Brandes accumulation pass from a single source.
fn brandes_pass(adj: &[Vec<usize>], source: usize) -> Vec<f64> {
    let n = adj.len();
    let mut stack = Vec::new();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0f64; n];
    let mut dist = vec![-1i64; n];
    sigma[source] = 1.0;
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in &adj[v] {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0f64; n];
    let mut scores = vec![0f64; n];
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if w != source {
            scores[w] += delta[w];
        }
    }
    scores
}

fn betweenness_normalize(mut scores: Vec<f64>, n: usize) -> Vec<f64> {
    // Each undirected pair was accumulated from both endpoints.
    for s in &mut scores {
        *s /= 2.0;
    }
    if n > 2 {
        let norm = ((n - 1) * (n - 2)) as f64 / 2.0;
        for s in &mut scores {
            *s /= norm;
        }
    }
    scores
}

#[cfg(feature = "parallel")]
fn betweenness_values(adj: &[Vec<usize>], n: usize) -> Vec<f64> {
    let raw = (0..n)
        .into_par_iter()
        .map(|s| brandes_pass(adj, s))
        .reduce(
            || vec![0f64; n],
            |mut acc, pass| {
                for (a, p) in acc.iter_mut().zip(pass) {
                    *a += p;
                }
                acc
            },
        );
    betweenness_normalize(raw, n)
}

#[cfg(not(feature = "parallel"))]
fn betweenness_values(adj: &[Vec<usize>], n: usize) -> Vec<f64> {
    let mut raw = vec![0f64; n];
    for s in 0..n {
        for (a, p) in raw.iter_mut().zip(brandes_pass(adj, s)) {
            *a += p;
        }
    }
    betweenness_normalize(raw, n)
}

/// Per-metric delta between two reports: absolute change plus the relative
/// change against both the before and after base.
#[derive(Debug, Clone, Serialize)]
pub struct MetricDelta {
    pub metric: String,
    pub before: f64,
    pub after: f64,
    pub absolute: f64,
    /// (after - before) / before, None when before is 0.
    pub relative_to_before: Option<f64>,
    /// (after - before) / after, None when after is 0.
    pub relative_to_after: Option<f64>,
}

/// Compares two metric reports metric by metric.
pub fn compare_reports(before: &MetricsReport, after: &MetricsReport) -> Vec<MetricDelta> {
    let rows = [
        ("node_count", before.node_count as f64, after.node_count as f64),
        ("edge_count", before.edge_count as f64, after.edge_count as f64),
        ("density", before.density, after.density),
        ("transitivity", before.transitivity, after.transitivity),
        ("avg_clustering", before.avg_clustering, after.avg_clustering),
        (
            "degree_centralization",
            before.degree_centralization,
            after.degree_centralization,
        ),
    ];
    rows.iter()
        .map(|(name, b, a)| {
            let abs = a - b;
            MetricDelta {
                metric: name.to_string(),
                before: *b,
                after: *a,
                absolute: abs,
                relative_to_before: (*b != 0.0).then(|| abs / b),
                relative_to_after: (*a != 0.0).then(|| abs / a),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn graph_from(edges: &[(&str, &str)]) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for (a, b) in edges {
            g.add_edge(iri(&format!("urn:{a}")), iri(&format!("urn:{b}")));
        }
        g
    }

    #[test]
    fn triangle_is_fully_dense() {
        let k3 = graph_from(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(density(&k3), 1.0);
        assert_eq!(transitivity(&k3), 1.0);
        assert_eq!(avg_clustering(&k3), 1.0);
    }

    #[test]
    fn path_has_no_triangles() {
        let p3 = graph_from(&[("a", "b"), ("b", "c")]);
        assert_eq!(transitivity(&p3), 0.0);
        assert_eq!(avg_clustering(&p3), 0.0);
    }

    #[test]
    fn star_extremes() {
        let star = graph_from(&[("c", "l1"), ("c", "l2"), ("c", "l3")]);
        assert_eq!(degree_centralization(&star), 1.0);
        assert_eq!(avg_clustering(&star), 0.0);
        let star5 = graph_from(&[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")]);
        let cent = centralities(&star5);
        assert_eq!(cent[&iri("urn:c")].degree, 1.0);
    }

    #[test]
    fn cycle_has_zero_centralization() {
        let cycle = graph_from(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        assert_eq!(degree_centralization(&cycle), 0.0);
    }

    #[test]
    fn k2_centralities() {
        let k2 = graph_from(&[("a", "b")]);
        let cent = centralities(&k2);
        for v in ["urn:a", "urn:b"] {
            assert_eq!(cent[&iri(v)].degree, 1.0);
            assert_eq!(cent[&iri(v)].betweenness, 0.0);
        }
    }

    #[test]
    fn small_graph_conventions() {
        let empty = SimpleGraph::new();
        assert_eq!(density(&empty), 0.0);
        assert_eq!(transitivity(&empty), 0.0);
        let mut single = SimpleGraph::new();
        single.add_node(iri("urn:a"));
        assert_eq!(density(&single), 0.0);
        assert_eq!(degree_centralization(&single), 0.0);
    }

    #[test]
    fn self_loops_and_duplicates_collapse() {
        let mut g = SimpleGraph::new();
        g.add_edge(iri("urn:a"), iri("urn:a"));
        g.add_edge(iri("urn:a"), iri("urn:b"));
        g.add_edge(iri("urn:b"), iri("urn:a"));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn compare_reports_identity_and_bases() {
        let g = graph_from(&[("a", "b"), ("b", "c")]);
        let r = MetricsReport::compute(&g);
        for delta in compare_reports(&r, &r) {
            assert_eq!(delta.absolute, 0.0);
        }
        let mut before = MetricsReport::compute(&g);
        let mut after = MetricsReport::compute(&g);
        before.avg_clustering = 0.072;
        after.avg_clustering = 0.108;
        let deltas = compare_reports(&before, &after);
        let cl = deltas.iter().find(|d| d.metric == "avg_clustering").unwrap();
        assert!((cl.relative_to_before.unwrap() - 0.5).abs() < 1e-12);
        assert!((cl.relative_to_after.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn projection_collapses_directions() {
        use crate::rdf::{parse_turtle};
        let kg = parse_turtle(
            "@prefix sto: <https://w3id.org/i40/sto#> .\n\
             sto:A a sto:Standard . sto:B a sto:Standard . sto:Org a sto:StandardOrganization .\n\
             sto:A sto:relatedTo sto:B . sto:B sto:relatedTo sto:A .\n\
             sto:A sto:relatedTo sto:Org .\n",
            None,
        )
        .unwrap();
        let g = project_relation_graph(
            &kg,
            &BTreeSet::from([iri(crate::vocab::STO_RELATED_TO)]),
            &iri(crate::vocab::STO_STANDARD),
        );
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn closeness_disconnected_scaling() {
        // Two K2 components over 4 nodes: closeness = (1/3)*(1/1) per node.
        let g = graph_from(&[("a", "b"), ("c", "d")]);
        let cent = centralities(&g);
        for v in ["urn:a", "urn:b", "urn:c", "urn:d"] {
            assert!((cent[&iri(v)].closeness - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn path_betweenness_middle_node() {
        // P3: middle node lies on the single a-c shortest path; norm (n-1)(n-2)/2 = 1.
        let g = graph_from(&[("a", "b"), ("b", "c")]);
        let cent = centralities(&g);
        assert!((cent[&iri("urn:b")].betweenness - 1.0).abs() < 1e-12);
        assert_eq!(cent[&iri("urn:a")].betweenness, 0.0);
    }
}

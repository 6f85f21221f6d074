//! Small undirected-graph helpers shared by the Hurwitz and building modules:
//! adjacency from "differ in exactly one position", exact all-pairs BFS
//! metrics, and DOT export.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use serde::Serialize;

use crate::{par, Error, Result};

/// Adjacency-list graph on `0..n`.
#[derive(Debug, Clone)]
pub struct AdjGraph {
    adj: Vec<Vec<u32>>,
}

/// Exact eccentricities with their extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub eccentricities: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
}

impl AdjGraph {
    pub fn new(adj: Vec<Vec<u32>>) -> Self {
        AdjGraph { adj }
    }

    /// Edges join vertices whose key sequences differ in exactly one
    /// position. Each vertex is a fixed-length sequence; dropping one
    /// position at a time buckets the candidates.
    pub fn from_one_position_difference<T: Hash + Eq + Clone>(vertices: &[Vec<T>]) -> Self {
        let mut adj = vec![Vec::new(); vertices.len()];
        if vertices.is_empty() {
            return AdjGraph { adj };
        }
        let positions = vertices[0].len();
        for drop in 0..positions {
            let mut buckets: HashMap<Vec<&T>, Vec<u32>> = HashMap::new();
            for (i, v) in vertices.iter().enumerate() {
                let key: Vec<&T> = v
                    .iter()
                    .enumerate()
                    .filter_map(|(p, t)| (p != drop).then_some(t))
                    .collect();
                buckets.entry(key).or_default().push(i as u32);
            }
            for group in buckets.values() {
                for (a, &x) in group.iter().enumerate() {
                    for &y in &group[a + 1..] {
                        adj[x as usize].push(y);
                        adj[y as usize].push(x);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        AdjGraph { adj }
    }

    /// Edges join vertices (as sets, given by strictly sorted element lists)
    /// whose symmetric difference has size two, i.e. that differ in exactly
    /// one element. One bucket per "set minus one element".
    pub fn from_one_element_difference<T: Hash + Eq + Clone + Ord>(vertices: &[Vec<T>]) -> Self {
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut buckets: HashMap<Vec<&T>, Vec<u32>> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            debug_assert!(v.windows(2).all(|w| w[0] < w[1]), "vertex sets must be sorted");
            for drop in 0..v.len() {
                let key: Vec<&T> = v
                    .iter()
                    .enumerate()
                    .filter_map(|(p, t)| (p != drop).then_some(t))
                    .collect();
                buckets.entry(key).or_default().push(i as u32);
            }
        }
        for group in buckets.values() {
            for (a, &x) in group.iter().enumerate() {
                for &y in &group[a + 1..] {
                    adj[x as usize].push(y);
                    adj[y as usize].push(x);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        AdjGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// BFS distances from one source; `u32::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut frontier = vec![src];
        dist[src as usize] = 0;
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in &self.adj[v as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    pub fn distance(&self, a: u32, b: u32) -> u32 {
        self.bfs_distances(a)[b as usize]
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || !self.bfs_distances(0).contains(&u32::MAX)
    }

    /// Exact BFS from every vertex. Errors on disconnected input, which for
    /// the graphs built here signals a construction bug.
    pub fn metrics(&self) -> Result<GraphMetrics> {
        if self.adj.is_empty() {
            return Err(Error::Usage("metrics of an empty graph".into()));
        }
        let eccentricities: Vec<u32> = par::map_range(self.adj.len(), |v| {
            self.bfs_distances(v as u32).into_iter().max().unwrap()
        });
        if eccentricities.contains(&u32::MAX) {
            return Err(Error::Integrity("graph is disconnected".into()));
        }
        let radius = *eccentricities.iter().min().unwrap();
        let diameter = *eccentricities.iter().max().unwrap();
        Ok(GraphMetrics { eccentricities, radius, diameter })
    }

    /// Sequential variant of [`AdjGraph::metrics`], kept for the benches that
    /// compare both execution modes.
    pub fn metrics_seq(&self) -> Result<GraphMetrics> {
        if self.adj.is_empty() {
            return Err(Error::Usage("metrics of an empty graph".into()));
        }
        let eccentricities: Vec<u32> = par::map_range_seq(self.adj.len(), |v| {
            self.bfs_distances(v as u32).into_iter().max().unwrap()
        });
        if eccentricities.contains(&u32::MAX) {
            return Err(Error::Integrity("graph is disconnected".into()));
        }
        let radius = *eccentricities.iter().min().unwrap();
        let diameter = *eccentricities.iter().max().unwrap();
        Ok(GraphMetrics { eccentricities, radius, diameter })
    }

    /// Deterministic list of up to `cap` vertex pairs realizing the diameter.
    pub fn diameter_pairs(&self, diameter: u32, cap: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        'outer: for v in 0..self.adj.len() as u32 {
            let dist = self.bfs_distances(v);
            for w in v + 1..self.adj.len() as u32 {
                if dist[w as usize] == diameter {
                    out.push((v, w));
                    if out.len() == cap {
                        break 'outer;
                    }
                }
            }
        }
        out
    }

    /// DOT rendering with caller-supplied vertex labels. Vertex ids are the
    /// stable canonical indices, so diffs across runs are meaningful.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = String::new();
        writeln!(s, "graph {name} {{").unwrap();
        for (i, label) in labels.iter().enumerate() {
            writeln!(s, "  v{i} [label=\"{label}\"];").unwrap();
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if (i as u32) < j {
                    writeln!(s, "  v{i} -- v{j};").unwrap();
                }
            }
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

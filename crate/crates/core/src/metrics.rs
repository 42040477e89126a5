//! Small-world diagnostics: edge density, mean shortest path, clustering and
//! the log-log fit of the degree distribution.
//!
//! Self-loops are ignored throughout this module.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{LexicalGraph, VertexId};

/// Source sampling for [`mean_shortest_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSample {
    pub size: usize,
    pub seed: u64,
}

/// Sum of BFS distances from `source` to every vertex it reaches.
fn distance_sum(graph: &LexicalGraph, source: VertexId, dist: &mut [u32]) -> u64 {
    dist.fill(u32::MAX);
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    let mut total = 0u64;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &w in graph.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = du + 1;
                total += u64::from(du + 1);
                queue.push_back(w);
            }
        }
    }
    total
}

/// Mean distance over ordered pairs of distinct vertices of the largest
/// component.
///
/// With `sample`, only `size` sources drawn uniformly without replacement
/// (seeded) are traversed; a sample covering the whole component gives the
/// exact value.
pub fn mean_shortest_path(graph: &LexicalGraph, sample: Option<PathSample>) -> Result<f64> {
    let cm = graph.components();
    let (largest, size) = cm.largest();
    if size < 2 {
        return Err(Error::NoPairs);
    }
    let members = cm.members(largest);
    let sources: Vec<VertexId> = match sample {
        Some(PathSample { size: 0, .. }) => {
            return Err(Error::InvalidParameter(
                "sample size must be at least 1".into(),
            ))
        }
        Some(s) if s.size < members.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let mut picked: Vec<VertexId> = index::sample(&mut rng, members.len(), s.size)
                .into_iter()
                .map(|i| members[i])
                .collect();
            picked.sort_unstable();
            picked
        }
        _ => members.clone(),
    };

    let n = graph.vertex_count();
    // integer accumulation keeps the result independent of scheduling
    let total: u64 = sources
        .par_iter()
        .map_init(|| vec![0u32; n], |dist, &s| distance_sum(graph, s, dist))
        .sum();
    let pairs = sources.len() as u64 * (size as u64 - 1);
    Ok(total as f64 / pairs as f64)
}

fn local_clustering(graph: &LexicalGraph, v: VertexId) -> Option<f64> {
    let nbrs: Vec<VertexId> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| w != v)
        .collect();
    let d = nbrs.len();
    if d < 2 {
        return None;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if graph.has_edge(a, b) {
                links += 1;
            }
        }
    }
    Some(links as f64 / (d * (d - 1) / 2) as f64)
}

/// Mean local clustering over vertices with at least two neighbours.
pub fn clustering_coefficient(graph: &LexicalGraph) -> Result<f64> {
    let local: Vec<Option<f64>> = (0..graph.vertex_count())
        .into_par_iter()
        .map(|v| local_clustering(graph, v))
        .collect();
    let (sum, count) = local
        .into_iter()
        .flatten()
        .fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        return Err(Error::ClusteringUndefined);
    }
    Ok(sum / count as f64)
}

/// `degree -> vertex count` for proper degrees of at least 1.
pub fn degree_histogram(graph: &LexicalGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..graph.vertex_count() {
        let d = graph.proper_degree(v);
        if d > 0 {
            *hist.entry(d).or_insert(0) += 1;
        }
    }
    hist
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// Slope of `ln count` against `ln k`; negative for a decaying tail.
    pub alpha: f64,
    pub intercept: f64,
    /// Absolute Pearson correlation of the fitted points.
    pub correlation: f64,
}

/// Least-squares line through `(ln k, ln count(k))`.
pub fn fit_power_law(histogram: &BTreeMap<usize, usize>) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = histogram
        .iter()
        .filter(|&(&k, &c)| k > 0 && c > 0)
        .map(|(&k, &c)| ((k as f64).ln(), (c as f64).ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::DegenerateDistribution {
            distinct: points.len(),
        });
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in &points {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    let alpha = sxy / sxx;
    let correlation = if syy > 0.0 {
        (sxy / (sxx * syy).sqrt()).abs().min(1.0)
    } else {
        0.0
    };
    Ok(PowerLawFit {
        alpha,
        intercept: my - alpha * mx,
        correlation,
    })
}

pub fn degree_powerlaw_fit(graph: &LexicalGraph) -> Result<PowerLawFit> {
    fit_power_law(&degree_histogram(graph))
}

/// All diagnostics for one graph. Quantities undefined on the graph are
/// `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallWorldReport {
    pub n: usize,
    pub m: usize,
    pub largest_component: usize,
    pub mean_path: Option<f64>,
    pub clustering: Option<f64>,
    pub alpha: Option<f64>,
    pub correlation: Option<f64>,
    pub sample: Option<PathSample>,
}

impl SmallWorldReport {
    pub fn compute(graph: &LexicalGraph, sample: Option<PathSample>) -> Result<Self> {
        let mean_path = match mean_shortest_path(graph, sample) {
            Ok(l) => Some(l),
            Err(Error::NoPairs) => None,
            Err(e) => return Err(e),
        };
        let fit = degree_powerlaw_fit(graph).ok();
        Ok(SmallWorldReport {
            n: graph.vertex_count(),
            m: graph.edge_count(),
            largest_component: graph.components().largest().1,
            mean_path,
            clustering: clustering_coefficient(graph).ok(),
            alpha: fit.map(|f| f.alpha),
            correlation: fit.map(|f| f.correlation),
            sample,
        })
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(crate::format::significant)
        .unwrap_or_else(|| "NA".into())
}

impl fmt::Display for SmallWorldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\t{}", self.n)?;
        writeln!(f, "m\t{}", self.m)?;
        writeln!(f, "largest_component\t{}", self.largest_component)?;
        writeln!(f, "L\t{}", opt(self.mean_path))?;
        writeln!(f, "C\t{}", opt(self.clustering))?;
        writeln!(f, "alpha\t{}", opt(self.alpha))?;
        writeln!(f, "correlation\t{}", opt(self.correlation))?;
        match self.sample {
            Some(s) => {
                writeln!(f, "sampled\ttrue")?;
                writeln!(f, "sample_size\t{}", s.size)?;
                writeln!(f, "seed\t{}", s.seed)
            }
            None => {
                writeln!(f, "sampled\tfalse")?;
                writeln!(f, "sample_size\tNA")?;
                writeln!(f, "seed\tNA")
            }
        }
    }
}

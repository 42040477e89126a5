//! Random-walk confluence between lexemes.
//!
//! A particle starts on a vertex `r` and at each step moves to one of the
//! neighbours of its current vertex (self included) with equal probability,
//! i.e. it follows the transition matrix `m_ij = a_ij / d(i)`. The
//! distribution after `steps` moves ranks every vertex of `r`'s component by
//! decreasing probability; the first `radius` entries form the paradigmatic
//! neighbourhood of `r`.

use crate::error::{Error, Result};
use crate::graph::{LexicalGraph, VertexId};
use crate::lexeme::Lexeme;

pub const DEFAULT_STEPS: usize = 3;

/// Relative gap under which two probabilities are treated as equal when
/// ranking. Exactly equal confluences can come out a few ulps apart
/// depending on summation order.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Walk distribution over the vertices of a graph.
///
/// `prob` is dense over the whole graph; vertices outside the start vertex's
/// component hold exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkDistribution {
    start: VertexId,
    steps: usize,
    prob: Vec<f64>,
}

impl WalkDistribution {
    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn prob(&self) -> &[f64] {
        &self.prob
    }

    pub fn get(&self, v: VertexId) -> f64 {
        self.prob[v]
    }

    pub fn total(&self) -> f64 {
        self.prob.iter().sum()
    }
}

/// Distribution after `steps` moves from `start`.
pub fn walk(graph: &LexicalGraph, start: &Lexeme, steps: usize) -> Result<WalkDistribution> {
    let r = graph.require(start)?;
    Ok(walk_from(graph, r, steps))
}

/// Same as [`walk`] for a known vertex id. `steps == 0` yields the indicator
/// of `start`.
pub fn walk_from(graph: &LexicalGraph, start: VertexId, steps: usize) -> WalkDistribution {
    let n = graph.vertex_count();
    let mut prob = vec![0.0; n];
    prob[start] = 1.0;
    if steps == 0 {
        return WalkDistribution { start, steps, prob };
    }

    // Vertices carrying mass. Loops make this set grow monotonically, so it
    // only ever needs appending.
    let mut active = vec![start];
    let mut reached = vec![false; n];
    reached[start] = true;

    for _ in 0..steps {
        let mut next = vec![0.0; n];
        let frontier = active.len();
        for idx in 0..frontier {
            let u = active[idx];
            let share = prob[u] / graph.degree(u) as f64;
            for &w in graph.neighbors(u) {
                if !reached[w] {
                    reached[w] = true;
                    active.push(w);
                }
                next[w] += share;
            }
        }
        prob = next;
    }
    WalkDistribution { start, steps, prob }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub lexeme: Lexeme,
    pub vertex: VertexId,
    /// 1-based proxemic rank.
    pub rank: usize,
    pub probability: f64,
}

/// The `radius` best-ranked vertices of a walk.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedNeighborhood {
    pub start: Lexeme,
    pub steps: usize,
    pub radius: usize,
    pub entries: Vec<RankedEntry>,
}

impl RankedNeighborhood {
    pub fn rank_of(&self, lexeme: &Lexeme) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| &e.lexeme == lexeme)
            .map(|e| e.rank)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Top-`radius` vertices of `start`'s component by decreasing walk
/// probability after `steps` moves. Equal probabilities are ordered by label.
/// `start` itself is eligible.
pub fn diam(
    graph: &LexicalGraph,
    start: &Lexeme,
    steps: usize,
    radius: usize,
) -> Result<RankedNeighborhood> {
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let r = graph.require(start)?;
    let dist = walk_from(graph, r, steps);
    let order = rank_vertices(dist.prob(), graph.component_of(r), radius);
    let entries = order
        .into_iter()
        .enumerate()
        .map(|(i, v)| RankedEntry {
            lexeme: graph.lexeme(v).clone(),
            vertex: v,
            rank: i + 1,
            probability: dist.get(v),
        })
        .collect();
    Ok(RankedNeighborhood {
        start: start.clone(),
        steps,
        radius,
        entries,
    })
}

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.max(b)
}

/// Orders `candidates` by decreasing `prob` (ties by ascending id, which is
/// label order) and keeps the first `radius`.
pub(crate) fn rank_vertices(
    prob: &[f64],
    mut candidates: Vec<VertexId>,
    radius: usize,
) -> Vec<VertexId> {
    let desc = |a: &VertexId, b: &VertexId| prob[*b].total_cmp(&prob[*a]).then(a.cmp(b));

    let mut pool = if radius < candidates.len() {
        candidates.select_nth_unstable_by(radius - 1, desc);
        let mut rest = candidates.split_off(radius);
        let mut pool = candidates;
        // A tie group may straddle the cut; pull its remaining members in.
        let mut floor = prob[pool[radius - 1]];
        loop {
            let (near, far): (Vec<_>, Vec<_>) = rest
                .into_iter()
                .partition(|&v| prob[v] >= floor || tied(prob[v], floor));
            rest = far;
            match near.iter().map(|&v| prob[v]).min_by(f64::total_cmp) {
                Some(low) => {
                    floor = low;
                    pool.extend(near);
                }
                None => break,
            }
        }
        pool
    } else {
        candidates
    };

    pool.sort_unstable_by(desc);
    let mut i = 0;
    while i < pool.len() {
        let mut j = i + 1;
        while j < pool.len() && tied(prob[pool[j - 1]], prob[pool[j]]) {
            j += 1;
        }
        pool[i..j].sort_unstable();
        i = j;
    }
    pool.truncate(radius);
    pool
}

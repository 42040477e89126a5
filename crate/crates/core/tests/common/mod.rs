//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use slam_core::oracle::walk_exact;
use slam_core::resolver::Solution;
use slam_core::triples::Triple;
use slam_core::{GoldData, Lexeme, LexicalGraph, MetaphorQuery, SlamParams, TripleStore, VertexId};

pub fn lx(s: &str) -> Lexeme {
    Lexeme::new(s).unwrap()
}

pub fn vlabel(i: usize) -> String {
    format!("V.v{i:03}")
}

/// Graph on vertices `V.v000..` with the given edges; every vertex exists
/// even when isolated.
pub fn graph_from_pairs(n: usize, pairs: &[(usize, usize)]) -> LexicalGraph {
    let mut edges: Vec<(Lexeme, Lexeme)> =
        (0..n).map(|i| (lx(&vlabel(i)), lx(&vlabel(i)))).collect();
    edges.extend(pairs.iter().map(|&(a, b)| (lx(&vlabel(a)), lx(&vlabel(b)))));
    LexicalGraph::from_edges(edges).unwrap()
}

/// Random tree plus each other pair with probability `p`.
pub fn random_connected_pairs<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i, rng.gen_range(0..i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> LexicalGraph {
    let pairs = random_connected_pairs(rng, n, p);
    graph_from_pairs(n, &pairs)
}

/// Possibly disconnected random graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> LexicalGraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    graph_from_pairs(n, &pairs)
}

/// Watts-Strogatz style ring lattice with rewiring; connected with high
/// probability, clustered, and short-pathed.
pub fn small_world<R: Rng>(rng: &mut R, n: usize, k: usize, rewire: f64) -> LexicalGraph {
    let mut pairs = Vec::with_capacity(n * k);
    for i in 0..n {
        for step in 1..=k {
            let j = if rng.gen_bool(rewire) {
                rng.gen_range(0..n)
            } else {
                (i + step) % n
            };
            pairs.push((i, j));
        }
    }
    let mut edges: Vec<(Lexeme, Lexeme)> = Vec::with_capacity(pairs.len());
    let labels: Vec<Lexeme> = (0..n).map(|i| lx(&format!("V.w{i:06}"))).collect();
    for (a, b) in pairs {
        edges.push((labels[a].clone(), labels[b].clone()));
    }
    LexicalGraph::from_edges(edges).unwrap()
}

/// Exact proxemic ordering of `start`'s component: decreasing exact
/// probability, ties by label.
pub fn exact_ranking(
    g: &LexicalGraph,
    start: &Lexeme,
    steps: usize,
) -> Vec<(VertexId, BigRational)> {
    let probs = walk_exact(g, start, steps).unwrap();
    let r = g.vertex_id(start).unwrap();
    let mut ranked: Vec<(VertexId, BigRational)> = g
        .component_of(r)
        .into_iter()
        .map(|v| (v, probs[v].clone()))
        .collect();
    ranked.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| g.lexeme(a.0).label().cmp(g.lexeme(b.0).label()))
    });
    ranked
}

/// Enumerate every graph lexeme, keep those meeting the three conditions
/// directly, and sort by (count desc, rank asc, label asc).
pub fn brute_force_resolve(
    g: &LexicalGraph,
    triples: &[Triple],
    freqs: &BTreeMap<Lexeme, u64>,
    q: &MetaphorQuery,
) -> Vec<Solution> {
    if !g.contains(&q.focus) {
        return Vec::new();
    }
    let ranking = exact_ranking(g, &q.focus, q.params.steps);
    let mut out = Vec::new();
    for u in g.lexemes() {
        if u.category() != q.focus.category() {
            continue;
        }
        let count: u64 = triples
            .iter()
            .filter(|t| &t.governor == u && t.relation == q.relation && t.dependent == q.dependent)
            .map(|t| t.count)
            .sum();
        if count < q.params.min_count {
            continue;
        }
        let freq = freqs.get(u).copied().unwrap_or_else(|| {
            triples
                .iter()
                .filter(|t| &t.governor == u)
                .map(|t| t.count)
                .sum()
        });
        if freq > q.params.max_freq {
            continue;
        }
        let rank = ranking
            .iter()
            .position(|(v, _)| g.lexeme(*v) == u)
            .map(|i| i + 1);
        match rank {
            Some(rank) if rank <= q.params.radius => out.push(Solution {
                lexeme: u.clone(),
                triple_count: count,
                proxemic_rank: rank,
            }),
            _ => {}
        }
    }
    out.sort_by(|a, b| {
        b.triple_count
            .cmp(&a.triple_count)
            .then(a.proxemic_rank.cmp(&b.proxemic_rank))
            .then_with(|| a.lexeme.label().cmp(b.lexeme.label()))
    });
    out
}

/// Random resolver instance with at most `max_lexemes` distinct lexemes
/// overall.
pub struct Instance {
    pub graph: LexicalGraph,
    pub triples: Vec<Triple>,
    pub freqs: BTreeMap<Lexeme, u64>,
    pub store: TripleStore,
    pub focus: Lexeme,
    pub dependent: Lexeme,
}

pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    // up to 30 verbs in the graph, up to 10 governors outside it, a few nouns
    let n = rng.gen_range(2..=30);
    let p = rng.gen_range(0.02..0.4);
    let graph = random_graph(rng, n, p);
    let nouns: Vec<Lexeme> = (0..rng.gen_range(1..=4))
        .map(|i| lx(&format!("N.n{i}")))
        .collect();
    let mut governors: Vec<Lexeme> = graph.lexemes().to_vec();
    governors.extend((0..rng.gen_range(0..=6)).map(|i| lx(&format!("V.out{i}"))));
    governors.extend((0..rng.gen_range(0..=3)).map(|i| lx(&format!("N.g{i}"))));

    let relations = ["obj", "suj", "de"];
    let mut triples = Vec::new();
    for _ in 0..rng.gen_range(0..60) {
        triples.push(Triple {
            governor: governors[rng.gen_range(0..governors.len())].clone(),
            relation: relations[rng.gen_range(0..relations.len())].to_string(),
            dependent: nouns[rng.gen_range(0..nouns.len())].clone(),
            count: rng.gen_range(1..8),
        });
    }
    let mut freqs = BTreeMap::new();
    for g in &governors {
        // some lexemes deliberately missing to exercise the fallback
        if rng.gen_bool(0.8) {
            freqs.insert(g.clone(), rng.gen_range(1..40));
        }
    }
    let store = TripleStore::from_triples(triples.clone(), freqs.clone(), "random");
    let focus = if rng.gen_bool(0.9) {
        graph.lexeme(rng.gen_range(0..graph.vertex_count())).clone()
    } else {
        lx("V.absent")
    };
    let dependent = nouns[rng.gen_range(0..nouns.len())].clone();
    Instance {
        graph,
        triples,
        freqs,
        store,
        focus,
        dependent,
    }
}

/// All-pairs distances by Floyd-Warshall; `None` when unreachable.
pub fn floyd_warshall(g: &LexicalGraph) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
        for &j in g.neighbors(i) {
            if j != i {
                row[j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Mean distance over ordered pairs of the largest component, brute force.
pub fn brute_mean_path(g: &LexicalGraph) -> f64 {
    let d = floyd_warshall(g);
    let (largest, _) = g.components().largest();
    let members = g.components().members(largest);
    let mut sum = 0u64;
    let mut pairs = 0u64;
    for &i in &members {
        for &j in &members {
            if i != j {
                sum += d[i][j].unwrap();
                pairs += 1;
            }
        }
    }
    sum as f64 / pairs as f64
}

pub fn random_query<R: Rng>(rng: &mut R, inst: &Instance) -> MetaphorQuery {
    let params = SlamParams {
        steps: rng.gen_range(1..=4),
        radius: rng.gen_range(1..=35),
        min_count: rng.gen_range(1..=5),
        max_freq: rng.gen_range(1..=60),
    };
    let rel = ["obj", "suj", "de"][rng.gen_range(0..3)];
    MetaphorQuery::new(inst.focus.clone(), rel, inst.dependent.clone(), params).unwrap()
}

/// Simple graph realizing `degrees` (Havel-Hakimi); panics if not graphic.
pub fn havel_hakimi(degrees: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining: Vec<(usize, usize)> = degrees.iter().copied().zip(0..).collect();
    let mut pairs = Vec::new();
    loop {
        remaining.sort_unstable_by(|a, b| b.cmp(a));
        let (d, v) = remaining[0];
        if d == 0 {
            return pairs;
        }
        remaining[0].0 = 0;
        for slot in remaining.iter_mut().skip(1).take(d) {
            assert!(slot.0 > 0, "degree sequence is not graphic");
            slot.0 -= 1;
            pairs.push((v, slot.1));
        }
    }
}

/// Degree histogram count(k) = round(1000 k^-2) for k = 1..=20.
pub fn inverse_square_histogram() -> BTreeMap<usize, usize> {
    (1..=20usize)
        .map(|k| (k, (1000.0 / (k * k) as f64).round() as usize))
        .collect()
}

pub const FOUR_QUERY_GOLD: &str = "\
FILM\tF1\tV.b
FILM\tF2\tV.peler
QUERY\tF1\tV.a*|obj|N.z
QUERY\tF2\tV.p*|obj|N.y
QUERY\tF1\tV.déniaiser*|obj|N.z\ttroponymic
QUERY\tF1\tV.a*|obj|N.légo
";

/// Four queries: two answered, one hit at rank 1, one tagged troponymic.
pub fn four_query_fixture() -> (LexicalGraph, TripleStore, GoldData) {
    let g = LexicalGraph::load("V.a\tV.b\nV.b\tV.c\nV.p\tV.q\n".as_bytes()).unwrap();
    let s = TripleStore::build(
        "V.b\tobj\tN.z\t5\nV.c\tobj\tN.z\t4\nV.q\tobj\tN.y\t6\n".as_bytes(),
        None::<&[u8]>,
        "fixture",
    )
    .unwrap();
    let gold = GoldData::load(FOUR_QUERY_GOLD.as_bytes()).unwrap();
    (g, s, gold)
}

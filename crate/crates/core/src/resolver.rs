//! Metaphor resolution: the governors attested with the query's relation and
//! dependent that also fall within the focus's random-walk neighbourhood,
//! ordered by how often they govern that dependent.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::LexicalGraph;
use crate::lexeme::Lexeme;
use crate::prox::{self, DEFAULT_STEPS};
use crate::triples::{TripleStore, DEFAULT_MAX_LEMMA_FREQ, DEFAULT_MIN_TRIPLE_COUNT};

pub const DEFAULT_RADIUS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlamParams {
    /// Walk length.
    pub steps: usize,
    /// Neighbourhood size.
    pub radius: usize,
    /// Minimal triple count.
    pub min_count: u64,
    /// Maximal lemma frequency.
    pub max_freq: u64,
}

impl Default for SlamParams {
    fn default() -> Self {
        SlamParams {
            steps: DEFAULT_STEPS,
            radius: DEFAULT_RADIUS,
            min_count: DEFAULT_MIN_TRIPLE_COUNT,
            max_freq: DEFAULT_MAX_LEMMA_FREQ,
        }
    }
}

impl SlamParams {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("lambda", self.steps as u64),
            ("gamma", self.radius as u64),
            ("alpha", self.min_count),
            ("beta", self.max_freq),
        ];
        for (name, value) in checks {
            if value == 0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be at least 1"
                )));
            }
        }
        Ok(())
    }
}

/// A triple `<focus*, relation, dependent>` whose governor carries the
/// metaphorical focus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaphorQuery {
    pub focus: Lexeme,
    pub relation: String,
    pub dependent: Lexeme,
    pub params: SlamParams,
}

impl MetaphorQuery {
    pub fn new(
        focus: Lexeme,
        relation: impl Into<String>,
        dependent: Lexeme,
        params: SlamParams,
    ) -> Result<Self> {
        params.validate()?;
        let relation = relation.into();
        if relation.is_empty() {
            return Err(Error::InvalidParameter("empty relation".into()));
        }
        Ok(MetaphorQuery {
            focus,
            relation,
            dependent,
            params,
        })
    }

    /// Parses `<focus>*|<relation>|<dependent>`.
    pub fn parse(text: &str, params: SlamParams) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedQuery {
            query: text.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = text.trim().split('|').collect();
        let [gov, rel, dep] = parts[..] else {
            return Err(malformed("expected <focus>*|<relation>|<dependent>"));
        };
        let gov_star = gov.ends_with('*');
        let dep_star = dep.ends_with('*');
        let focus = match (gov_star, dep_star) {
            (true, false) => &gov[..gov.len() - 1],
            (false, true) => return Err(Error::UnsupportedFocus(text.to_string())),
            (true, true) => return Err(malformed("more than one lexeme is marked with '*'")),
            (false, false) => return Err(malformed("no lexeme is marked with '*'")),
        };
        if rel.is_empty() || rel.contains('*') {
            return Err(malformed("invalid relation"));
        }
        let focus = Lexeme::new(focus).map_err(|e| malformed(&e.to_string()))?;
        let dependent = Lexeme::new(dep).map_err(|e| malformed(&e.to_string()))?;
        Self::new(focus, rel, dependent, params)
    }
}

impl fmt::Display for MetaphorQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*|{}|{}", self.focus, self.relation, self.dependent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    Ok,
    FocusNotInGraph,
    NoSyntagmaticCandidates,
    EmptyIntersection,
}

impl Diagnostic {
    pub fn as_str(&self) -> &'static str {
        match self {
            Diagnostic::Ok => "ok",
            Diagnostic::FocusNotInGraph => "focus_not_in_graph",
            Diagnostic::NoSyntagmaticCandidates => "no_syntagmatic_candidates",
            Diagnostic::EmptyIntersection => "empty_intersection",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub lexeme: Lexeme,
    pub triple_count: u64,
    pub proxemic_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionList {
    pub query: MetaphorQuery,
    pub solutions: Vec<Solution>,
    pub diagnostic: Diagnostic,
}

impl SolutionList {
    /// The first `n` solutions.
    pub fn top_n(&self, n: usize) -> SolutionList {
        SolutionList {
            query: self.query.clone(),
            solutions: self.solutions.iter().take(n).cloned().collect(),
            diagnostic: self.diagnostic,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.solutions.iter().map(|s| s.lexeme.label()).collect()
    }
}

/// Resolves a query. Failure modes come back as an empty list with a
/// diagnostic.
///
/// Solutions are sorted by decreasing triple count, then by proxemic rank,
/// then by label.
pub fn resolve(graph: &LexicalGraph, store: &TripleStore, query: &MetaphorQuery) -> SolutionList {
    let empty = |diagnostic| SolutionList {
        query: query.clone(),
        solutions: Vec::new(),
        diagnostic,
    };
    if !graph.contains(&query.focus) {
        return empty(Diagnostic::FocusNotInGraph);
    }
    let p = &query.params;
    let candidates = store.candidates(
        &query.focus,
        &query.relation,
        &query.dependent,
        p.min_count,
        p.max_freq,
    );
    if candidates.is_empty() {
        return empty(Diagnostic::NoSyntagmaticCandidates);
    }
    let neighborhood = prox::diam(graph, &query.focus, p.steps, p.radius)
        .expect("focus is in the graph and params were validated");

    let mut solutions: Vec<Solution> = neighborhood
        .entries
        .iter()
        .filter_map(|e| {
            candidates.get(&e.lexeme).map(|count| Solution {
                lexeme: e.lexeme.clone(),
                triple_count: count,
                proxemic_rank: e.rank,
            })
        })
        .collect();
    if solutions.is_empty() {
        return empty(Diagnostic::EmptyIntersection);
    }
    solutions.sort_by(|a, b| {
        b.triple_count
            .cmp(&a.triple_count)
            .then(a.proxemic_rank.cmp(&b.proxemic_rank))
            .then_with(|| a.lexeme.cmp(&b.lexeme))
    });
    SolutionList {
        query: query.clone(),
        solutions,
        diagnostic: Diagnostic::Ok,
    }
}

//! Top-n precision, recall and f-measure of resolutions against gold sets of
//! conventional lexemes, one set per film.
//!
//! A query scores a hit at `n` when at least one of its first `n` solutions
//! is conventional for its film. Precision divides the hits by the number of
//! queries that got any solution; recall divides them by all queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::three_decimals;
use crate::graph::LexicalGraph;
use crate::lexeme::Lexeme;
use crate::resolver::{resolve, Diagnostic, MetaphorQuery, SlamParams};
use crate::triples::TripleStore;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldQuery {
    /// Line of the record in the gold file.
    pub line: usize,
    pub film: String,
    pub query: MetaphorQuery,
    pub tags: BTreeSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldData {
    pub films: BTreeMap<String, BTreeSet<Lexeme>>,
    pub queries: Vec<GoldQuery>,
}

fn split_list(field: &str) -> impl Iterator<Item = &str> {
    field.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl GoldData {
    /// Reads `FILM\t<id>\t<label>[,<label>...]` and
    /// `QUERY\t<id>\t<query>[\t<tag>[,<tag>...]]` records. Queries are parsed
    /// with default parameters; [`evaluate`] substitutes its own.
    pub fn load<R: BufRead>(reader: R) -> Result<Self> {
        let mut gold = GoldData::default();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields[0] {
                "FILM" => {
                    let [_, film, labels] = fields[..] else {
                        return Err(Error::parse(lineno, "FILM record needs 3 fields"));
                    };
                    let mut set = BTreeSet::new();
                    for label in split_list(labels) {
                        set.insert(
                            Lexeme::new(label).map_err(|e| Error::parse(lineno, e.to_string()))?,
                        );
                    }
                    if set.is_empty() {
                        return Err(Error::parse(
                            lineno,
                            format!("film {film:?} has no gold lexeme"),
                        ));
                    }
                    gold.films.entry(film.to_string()).or_default().extend(set);
                }
                "QUERY" => {
                    if !(3..=4).contains(&fields.len()) {
                        return Err(Error::parse(lineno, "QUERY record needs 3 or 4 fields"));
                    }
                    let query = MetaphorQuery::parse(fields[2], SlamParams::default())
                        .map_err(|e| Error::parse(lineno, e.to_string()))?;
                    let tags = fields
                        .get(3)
                        .map(|t| split_list(t).map(String::from).collect())
                        .unwrap_or_default();
                    gold.queries.push(GoldQuery {
                        line: lineno,
                        film: fields[1].to_string(),
                        query,
                        tags,
                    });
                }
                other => {
                    return Err(Error::parse(
                        lineno,
                        format!("unknown record kind {other:?}"),
                    ));
                }
            }
        }
        for q in &gold.queries {
            if !gold.films.contains_key(&q.film) {
                return Err(Error::UnknownFilm {
                    line: q.line,
                    film: q.film.clone(),
                });
            }
        }
        Ok(gold)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::load(BufReader::new(File::open(path)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub n: usize,
    pub hits: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryOutcome {
    pub query: String,
    pub film: String,
    pub diagnostic: Diagnostic,
    pub solutions: Vec<Lexeme>,
    /// Hit flag for n = 1..=n_max.
    pub hits: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<ScoreRow>,
    pub total_queries: usize,
    pub queries_with_any_solution: usize,
    pub excluded_queries: usize,
    /// No query had a solution, so precision is reported as 0.
    pub degenerate_precision: bool,
    pub details: Vec<QueryOutcome>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Resolves every gold query not tagged with one of `exclude_tags` and
/// scores the results for n = 1..=n_max. Excluded queries leave both
/// denominators.
pub fn evaluate(
    graph: &LexicalGraph,
    store: &TripleStore,
    gold: &GoldData,
    params: SlamParams,
    n_max: usize,
    exclude_tags: &BTreeSet<String>,
) -> Result<EvalReport> {
    if gold.queries.is_empty() {
        return Err(Error::EmptyGold);
    }
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    params.validate()?;

    let kept: Vec<&GoldQuery> = gold
        .queries
        .iter()
        .filter(|q| q.tags.is_disjoint(exclude_tags))
        .collect();

    let details: Vec<QueryOutcome> = kept
        .par_iter()
        .map(|gq| {
            let query = MetaphorQuery {
                params,
                ..gq.query.clone()
            };
            let out = resolve(graph, store, &query);
            let conventional = &gold.films[&gq.film];
            let hits = (1..=n_max)
                .map(|n| {
                    out.solutions
                        .iter()
                        .take(n)
                        .any(|s| conventional.contains(&s.lexeme))
                })
                .collect();
            QueryOutcome {
                query: query.to_string(),
                film: gq.film.clone(),
                diagnostic: out.diagnostic,
                solutions: out.solutions.into_iter().map(|s| s.lexeme).collect(),
                hits,
            }
        })
        .collect();

    let total = details.len();
    let answered = details.iter().filter(|d| !d.solutions.is_empty()).count();
    let rows = (1..=n_max)
        .map(|n| {
            let hits = details.iter().filter(|d| d.hits[n - 1]).count();
            let precision = ratio(hits, answered);
            let recall = ratio(hits, total);
            ScoreRow {
                n,
                hits,
                precision,
                recall,
                f_measure: f_measure(precision, recall),
            }
        })
        .collect();

    Ok(EvalReport {
        rows,
        total_queries: total,
        queries_with_any_solution: answered,
        excluded_queries: gold.queries.len() - total,
        degenerate_precision: answered == 0,
        details,
    })
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\tprecision\trecall\tf_measure")?;
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}\t{}\t{}",
                r.n,
                three_decimals(r.precision),
                three_decimals(r.recall),
                three_decimals(r.f_measure)
            )?;
        }
        writeln!(f)?;
        writeln!(f, "total_queries\t{}", self.total_queries)?;
        writeln!(
            f,
            "queries_with_any_solution\t{}",
            self.queries_with_any_solution
        )?;
        let hits: Vec<String> = self.rows.iter().map(|r| r.hits.to_string()).collect();
        writeln!(f, "queries_with_conventional_in_top_n\t{}", hits.join(","))?;
        writeln!(f, "excluded_queries\t{}", self.excluded_queries)?;
        writeln!(f, "degenerate_precision\t{}", self.degenerate_precision)?;
        writeln!(f)?;
        writeln!(f, "query\tfilm\tdiagnostic\tsolutions\thits")?;
        for d in &self.details {
            let solutions: Vec<&str> = d.solutions.iter().map(Lexeme::label).collect();
            let hits: Vec<&str> = d.hits.iter().map(|&h| if h { "1" } else { "0" }).collect();
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}",
                d.query,
                d.film,
                d.diagnostic,
                solutions.join(","),
                hits.join(",")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_gold_file() {
        let gold = GoldData::load("FILM\tF\tV.peler\nQUERY\tF\tV.x*|obj|N.z\n".as_bytes()).unwrap();
        assert_eq!(gold.films.len(), 1);
        assert_eq!(gold.queries.len(), 1);
        assert!(gold.queries[0].tags.is_empty());
    }

    #[test]
    fn tags_and_dedup() {
        let text = "# films\nFILM\tF\tV.a,V.b,V.a\nFILM\tF\tV.c\n\nQUERY\tF\tV.x*|obj|N.z\ttroponymic, other\n";
        let gold = GoldData::load(text.as_bytes()).unwrap();
        assert_eq!(gold.films["F"].len(), 3);
        let tags: Vec<_> = gold.queries[0].tags.iter().map(String::as_str).collect();
        assert_eq!(tags, ["other", "troponymic"]);
        assert_eq!(gold.queries[0].line, 5);
    }

    #[test]
    fn unknown_film_reports_query_line() {
        let err =
            GoldData::load("FILM\tF\tV.a\n\nQUERY\tG\tV.x*|obj|N.z\n".as_bytes()).unwrap_err();
        assert!(
            matches!(err, Error::UnknownFilm { line: 3, ref film } if film == "G"),
            "{err}"
        );
    }

    #[test]
    fn malformed_records() {
        for (text, line) in [
            ("FILM\tF\tV.a\nQUERY\tF\tV.x|obj|N.z\n", 2),
            ("FILM\tF\n", 1),
            ("FILM\tF\t,\n", 1),
            ("FILM\tF\tV.a\nQUERY\tF\n", 2),
            ("FILMS\tF\tV.a\n", 1),
        ] {
            let err = GoldData::load(text.as_bytes()).unwrap_err();
            assert!(
                matches!(err, Error::Parse { line: l, .. } if l == line),
                "{text:?}: {err}"
            );
        }
    }

    #[test]
    fn f_measure_is_harmonic_mean() {
        assert!((f_measure(0.5, 0.25) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(f_measure(0.0, 0.0), 0.0);
    }
}

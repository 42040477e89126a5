//! Dependency-triple counts and lemma frequencies from a corpus, indexed by
//! `(relation, dependent)` so that every governor attested with a given
//! dependent can be listed at once.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::lexeme::Lexeme;

/// Minimal triple count for a candidate governor.
pub const DEFAULT_MIN_TRIPLE_COUNT: u64 = 3;
/// Maximal corpus frequency for a candidate governor; keeps out light verbs
/// such as `V.faire`.
pub const DEFAULT_MAX_LEMMA_FREQ: u64 = 15_000;

const MAGIC: &[u8; 8] = b"SLAMTRPL";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub governor: Lexeme,
    pub relation: String,
    pub dependent: Lexeme,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct LemmaFreq {
    count: u64,
    // true when absent from the frequency file; `count` is then the sum of
    // the lexeme's triple counts as governor
    fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleStore {
    corpus_id: String,
    index: BTreeMap<(String, Lexeme), BTreeMap<Lexeme, u64>>,
    lemma_freq: BTreeMap<Lexeme, LemmaFreq>,
}

fn parse_count(field: &str, line: usize) -> Result<i64> {
    field
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(line, format!("invalid count {field:?}")))
}

fn parse_lexeme(field: &str, line: usize) -> Result<Lexeme> {
    Lexeme::new(field).map_err(|e| Error::parse(line, e.to_string()))
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Err(e) => Some(Err(e.into())),
            Ok(mut l) => {
                if l.ends_with('\r') {
                    l.pop();
                }
                (!l.trim().is_empty() && !l.starts_with('#')).then_some(Ok((idx + 1, l)))
            }
        })
}

/// Reads `<governor>\t<relation>\t<dependent>\t<count>` lines.
pub fn read_triples<R: BufRead>(reader: R) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        }
        if fields[1].is_empty() {
            return Err(Error::parse(line, "empty relation"));
        }
        let count = parse_count(fields[3], line)?;
        if count <= 0 {
            return Err(Error::parse(line, format!("non-positive count {count}")));
        }
        out.push(Triple {
            governor: parse_lexeme(fields[0], line)?,
            relation: fields[1].to_string(),
            dependent: parse_lexeme(fields[2], line)?,
            count: count as u64,
        });
    }
    Ok(out)
}

/// Reads `<label>\t<count>` lines; repeated labels are summed.
pub fn read_lemma_freq<R: BufRead>(reader: R) -> Result<BTreeMap<Lexeme, u64>> {
    let mut out = BTreeMap::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected 2 tab-separated fields, found {}", fields.len()),
            ));
        }
        let count = parse_count(fields[1], line)?;
        if count < 0 {
            return Err(Error::parse(line, format!("negative count {count}")));
        }
        *out.entry(parse_lexeme(fields[0], line)?).or_insert(0) += count as u64;
    }
    Ok(out)
}

impl TripleStore {
    /// Merges duplicate triples by summing their counts and attaches lemma
    /// frequencies. Lexemes seen in triples but missing from `lemma_freq`
    /// are flagged and get the sum of their governor counts instead.
    pub fn from_triples<I>(triples: I, lemma_freq: BTreeMap<Lexeme, u64>, corpus_id: &str) -> Self
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut index: BTreeMap<(String, Lexeme), BTreeMap<Lexeme, u64>> = BTreeMap::new();
        let mut as_governor: BTreeMap<Lexeme, u64> = BTreeMap::new();
        let mut seen: BTreeSet<Lexeme> = BTreeSet::new();
        for t in triples {
            *as_governor.entry(t.governor.clone()).or_insert(0) += t.count;
            seen.insert(t.governor.clone());
            seen.insert(t.dependent.clone());
            *index
                .entry((t.relation, t.dependent))
                .or_default()
                .entry(t.governor)
                .or_insert(0) += t.count;
        }

        let mut freqs: BTreeMap<Lexeme, LemmaFreq> = lemma_freq
            .into_iter()
            .map(|(lx, count)| {
                (
                    lx,
                    LemmaFreq {
                        count,
                        fallback: false,
                    },
                )
            })
            .collect();
        for lx in seen {
            freqs.entry(lx).or_insert_with_key(|lx| LemmaFreq {
                count: as_governor.get(lx).copied().unwrap_or(0),
                fallback: true,
            });
        }
        TripleStore {
            corpus_id: corpus_id.to_string(),
            index,
            lemma_freq: freqs,
        }
    }

    pub fn build<T: BufRead, F: BufRead>(
        triples: T,
        lemma_freq: Option<F>,
        corpus_id: &str,
    ) -> Result<Self> {
        let triples = read_triples(triples)?;
        let freqs = match lemma_freq {
            Some(r) => read_lemma_freq(r)?,
            None => BTreeMap::new(),
        };
        Ok(Self::from_triples(triples, freqs, corpus_id))
    }

    pub fn build_from_paths(
        triples: impl AsRef<Path>,
        lemma_freq: Option<&Path>,
        corpus_id: &str,
    ) -> Result<Self> {
        let t = BufReader::new(File::open(triples)?);
        let f = match lemma_freq {
            Some(p) => Some(BufReader::new(File::open(p)?)),
            None => None,
        };
        Self::build(t, f, corpus_id)
    }

    pub fn corpus_id(&self) -> &str {
        &self.corpus_id
    }

    /// Number of distinct `(governor, relation, dependent)` keys.
    pub fn triple_count(&self) -> usize {
        self.index.values().map(BTreeMap::len).sum()
    }

    /// Number of distinct lexemes appearing in triples.
    pub fn lexeme_count(&self) -> usize {
        let mut seen: BTreeSet<&Lexeme> = BTreeSet::new();
        for ((_, dep), govs) in &self.index {
            seen.insert(dep);
            seen.extend(govs.keys());
        }
        seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.index.iter().flat_map(|((rel, dep), govs)| {
            govs.iter().map(move |(gov, &count)| Triple {
                governor: gov.clone(),
                relation: rel.clone(),
                dependent: dep.clone(),
                count,
            })
        })
    }

    pub fn count(&self, governor: &Lexeme, relation: &str, dependent: &Lexeme) -> u64 {
        self.governors(relation, dependent)
            .and_then(|g| g.get(governor).copied())
            .unwrap_or(0)
    }

    /// Corpus frequency of a lexeme; `None` if it is neither in the
    /// frequency file nor in any triple.
    pub fn lemma_freq(&self, lexeme: &Lexeme) -> Option<u64> {
        self.lemma_freq.get(lexeme).map(|f| f.count)
    }

    /// Whether the frequency of `lexeme` is the governor-count fallback.
    pub fn is_flagged(&self, lexeme: &Lexeme) -> bool {
        self.lemma_freq.get(lexeme).is_some_and(|f| f.fallback)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &Lexeme> {
        self.lemma_freq
            .iter()
            .filter(|(_, f)| f.fallback)
            .map(|(lx, _)| lx)
    }

    fn governors(&self, relation: &str, dependent: &Lexeme) -> Option<&BTreeMap<Lexeme, u64>> {
        // the key owns its String; probing needs an owned tuple
        self.index.get(&(relation.to_string(), dependent.clone()))
    }

    /// Governors `u` of `focus`'s category with `count(u, relation,
    /// dependent) >= min_count` and `lemma_freq(u) <= max_freq`. The focus
    /// itself is not excluded.
    pub fn candidates(
        &self,
        focus: &Lexeme,
        relation: &str,
        dependent: &Lexeme,
        min_count: u64,
        max_freq: u64,
    ) -> CandidateSet {
        let members = self
            .governors(relation, dependent)
            .into_iter()
            .flatten()
            .filter(|&(gov, &count)| {
                gov.same_category(focus)
                    && count >= min_count
                    && self.lemma_freq(gov).is_some_and(|f| f <= max_freq)
            })
            .map(|(gov, &count)| Candidate {
                governor: gov.clone(),
                triple_count: count,
            })
            .collect();
        CandidateSet {
            focus: focus.clone(),
            relation: relation.to_string(),
            dependent: dependent.clone(),
            min_count,
            max_freq,
            members,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub governor: Lexeme,
    pub triple_count: u64,
}

/// Syntagmatic candidates for a focus, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub focus: Lexeme,
    pub relation: String,
    pub dependent: Lexeme,
    pub min_count: u64,
    pub max_freq: u64,
    pub members: Vec<Candidate>,
}

impl CandidateSet {
    pub fn get(&self, governor: &Lexeme) -> Option<u64> {
        self.members
            .binary_search_by(|c| c.governor.cmp(governor))
            .ok()
            .map(|i| self.members[i].triple_count)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

// Snapshot layout, all integers little-endian:
//   magic "SLAMTRPL" | u32 version | str corpus_id
//   u64 lemma count | (str label, u64 freq, u8 fallback)*
//   u64 group count | (str relation, str dependent, u64 n, (str governor, u64 count)^n)*
// where str is a u32 byte length followed by UTF-8 bytes. Maps are written in
// key order, so identical stores serialize identically.

fn put_u32(buf: &mut Vec<u8>, x: u32) {
    buf.extend_from_slice(&x.to_le_bytes());
}

fn put_u64(buf: &mut Vec<u8>, x: u64) {
    buf.extend_from_slice(&x.to_le_bytes());
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    put_u32(buf, s.len() as u32);
    buf.extend_from_slice(s.as_bytes());
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Snapshot("truncated".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn str(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        String::from_utf8(self.take(len)?.to_vec())
            .map_err(|_| Error::Snapshot("invalid UTF-8".into()))
    }

    fn lexeme(&mut self) -> Result<Lexeme> {
        Lexeme::new(self.str()?).map_err(|e| Error::Snapshot(e.to_string()))
    }
}

impl TripleStore {
    pub fn to_snapshot(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        put_u32(&mut buf, SNAPSHOT_VERSION);
        put_str(&mut buf, &self.corpus_id);
        put_u64(&mut buf, self.lemma_freq.len() as u64);
        for (lx, f) in &self.lemma_freq {
            put_str(&mut buf, lx.label());
            put_u64(&mut buf, f.count);
            buf.push(u8::from(f.fallback));
        }
        put_u64(&mut buf, self.index.len() as u64);
        for ((rel, dep), govs) in &self.index {
            put_str(&mut buf, rel);
            put_str(&mut buf, dep.label());
            put_u64(&mut buf, govs.len() as u64);
            for (gov, &count) in govs {
                put_str(&mut buf, gov.label());
                put_u64(&mut buf, count);
            }
        }
        buf
    }

    pub fn from_snapshot(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor { bytes, pos: 0 };
        if cur.take(MAGIC.len()).ok() != Some(MAGIC.as_slice()) {
            return Err(Error::Snapshot("not a triple-store snapshot".into()));
        }
        let version = cur.u32()?;
        if version != SNAPSHOT_VERSION {
            return Err(Error::Snapshot(format!(
                "unsupported version {version} (expected {SNAPSHOT_VERSION})"
            )));
        }
        let corpus_id = cur.str()?;
        let mut lemma_freq = BTreeMap::new();
        for _ in 0..cur.u64()? {
            let lx = cur.lexeme()?;
            let count = cur.u64()?;
            let fallback = match cur.u8()? {
                0 => false,
                1 => true,
                b => return Err(Error::Snapshot(format!("invalid flag byte {b}"))),
            };
            lemma_freq.insert(lx, LemmaFreq { count, fallback });
        }
        let mut index = BTreeMap::new();
        for _ in 0..cur.u64()? {
            let rel = cur.str()?;
            let dep = cur.lexeme()?;
            let mut govs = BTreeMap::new();
            for _ in 0..cur.u64()? {
                let gov = cur.lexeme()?;
                let count = cur.u64()?;
                if count == 0 {
                    return Err(Error::Snapshot("zero triple count".into()));
                }
                govs.insert(gov, count);
            }
            index.insert((rel, dep), govs);
        }
        if cur.pos != bytes.len() {
            return Err(Error::Snapshot("trailing bytes".into()));
        }
        Ok(TripleStore {
            corpus_id,
            index,
            lemma_freq,
        })
    }

    pub fn write_snapshot(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_snapshot())?;
        Ok(())
    }

    pub fn read_snapshot(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_snapshot(&fs::read(path)?)
    }
}

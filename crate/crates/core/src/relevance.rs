//! Evidence relevance scoring and top-ε selection.
//!
//! The default scorer is lexical: stemmed content-token overlap between the
//! question and the verbalized evidence. Precomputed neural scores can be
//! injected instead through [`ScorerSpec::External`], keyed by evidence id.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::Evidence;
use crate::graph::EvidenceId;

/// Fixed stopword list; these words are never question tokens and never
/// count as content overlap.
pub const STOPWORDS: &[&str] = &[
    "a", "an", "the", "of", "in", "on", "at", "by", "with", "from", "for", "to", "as", "is",
    "are", "was", "were", "be", "been", "being", "do", "does", "did", "and", "or", "but", "not",
    "no", "what", "which", "who", "whom", "whose", "where", "when", "why", "how", "that", "this",
    "these", "those", "it", "its", "he", "she", "his", "her", "hers", "him", "they", "them",
    "their", "we", "us", "our", "you", "your", "i", "me", "my", "about", "into", "over", "under",
    "after", "before", "between", "during", "than", "then", "there", "here", "also", "very",
    "can", "could", "will", "would", "shall", "should", "may", "might", "must", "have", "has",
    "had",
];

pub fn is_stopword(word: &str) -> bool {
    let w = word.to_lowercase();
    STOPWORDS.contains(&w.as_str())
}

/// Deterministic suffix-stripping stemmer: possessive, plural, one
/// derivational suffix, consonant undoubling, terminal `e`.
pub fn stem(word: &str) -> String {
    let mut w = word.to_lowercase();
    for suf in ["'s", "\u{2019}s"] {
        if let Some(p) = w.strip_suffix(suf) {
            w = p.to_owned();
        }
    }
    if w.len() > 4 && w.ends_with("sses") {
        w.truncate(w.len() - 2);
    } else if w.len() > 4 && w.ends_with("ies") {
        w.truncate(w.len() - 3);
        w.push('i');
    } else if w.len() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") {
        w.pop();
    }
    for (suf, min_len) in [("ing", 6), ("ed", 5), ("ly", 5), ("or", 5), ("er", 5)] {
        if w.len() >= min_len && w.ends_with(suf) {
            w.truncate(w.len() - suf.len());
            break;
        }
    }
    let b = w.as_bytes();
    if b.len() >= 4
        && b[b.len() - 1] == b[b.len() - 2]
        && !matches!(b[b.len() - 1], b'a' | b'e' | b'i' | b'o' | b'u' | b'l' | b's')
    {
        w.pop();
    }
    if w.len() > 4 && w.ends_with('e') {
        w.pop();
    }
    w
}

/// Lowercases, strips surrounding punctuation, and stems every
/// whitespace-separated word of `text`.
pub fn stem_words(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|w| !w.is_empty())
        .map(stem)
        .collect()
}

/// One question token: a content word or a NERD entity-mention phrase kept
/// as a single multi-word token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionToken {
    pub surface: String,
    /// Stemmed content words of the token (one entry for plain words).
    pub words: Vec<String>,
    /// KG entity this mention was disambiguated to, when NERD-provided.
    pub kg_entity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub raw: String,
    pub tokens: Vec<QuestionToken>,
    pub nerd_entities: Vec<String>,
}

impl Question {
    /// Union of stemmed content words over all question tokens.
    pub fn stem_set(&self) -> BTreeSet<&str> {
        self.tokens
            .iter()
            .flat_map(|t| t.words.iter().map(String::as_str))
            .collect()
    }
}

/// Scoring backend: the lexical default, or an injected score table
/// standing in for an externally fine-tuned classifier.
#[derive(Debug, Clone)]
pub enum ScorerSpec {
    Lexical,
    External(HashMap<EvidenceId, f64>),
}

impl ScorerSpec {
    /// Parses a JSON-lines score file `{evidence_id, score}`.
    pub fn load_external(reader: impl BufRead) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            evidence_id: u32,
            score: f64,
        }
        let mut map = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            if !(0.0..=1.0).contains(&row.score) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("score {} outside [0,1]", row.score),
                });
            }
            map.insert(EvidenceId(row.evidence_id), row.score);
        }
        Ok(ScorerSpec::External(map))
    }

    /// Scores one evidence in `[0,1]`.
    pub fn score(&self, question: &Question, evidence: &Evidence) -> Result<f64> {
        match self {
            ScorerSpec::Lexical => Ok(lexical_score(question, &evidence.verbalized)),
            ScorerSpec::External(map) => map
                .get(&evidence.id)
                .copied()
                .ok_or(Error::MissingScore(evidence.id.0)),
        }
    }
}

/// Fraction of question content-token stems present in the verbalized
/// evidence text.
pub fn lexical_score(question: &Question, verbalized: &str) -> f64 {
    let qs = question.stem_set();
    if qs.is_empty() {
        return 0.0;
    }
    let es: BTreeSet<String> = stem_words(verbalized).into_iter().collect();
    let shared = qs.iter().filter(|s| es.contains(**s)).count();
    shared as f64 / qs.len() as f64
}

/// Keeps the ε highest-scoring evidences per source (KG and Text selected
/// independently), ordered by nonincreasing score with ties by evidence id.
pub fn select_top_evidences(evidences: &[Evidence], epsilon: usize) -> Vec<Evidence> {
    assert!(epsilon >= 1, "epsilon must be at least 1");
    let mut picked: Vec<&Evidence> = Vec::new();
    for source in [crate::graph::SourceTag::Kg, crate::graph::SourceTag::Text] {
        let mut of_source: Vec<&Evidence> =
            evidences.iter().filter(|e| e.source == source).collect();
        of_source.sort_by(|x, y| {
            y.score
                .partial_cmp(&x.score)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(x.id.cmp(&y.id))
        });
        picked.extend(of_source.into_iter().take(epsilon));
    }
    picked.sort_by(|x, y| {
        y.score
            .partial_cmp(&x.score)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.id.cmp(&y.id))
    });
    picked.into_iter().cloned().collect()
}

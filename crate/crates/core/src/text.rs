//! Text-side ingestion: annotated documents, snippet windowing, pronoun
//! substitution, POS-pattern triple extraction, and hypernym patterns.
//!
//! Documents arrive as JSON lines `{doc_id, sentences:[[{tok, pos, ner}]]}`
//! with coarse POS tags. A degraded fallback tagger ships for untagged
//! input.

use std::collections::BTreeSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relevance::{stem, Question};
use crate::store::{PRED_COOCCURS, PRED_TYPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adp,
    Num,
    Pron,
    Det,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    #[serde(rename = "tok")]
    pub surface: String,
    pub pos: PosTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ner: Option<String>,
}

impl Token {
    pub fn new(surface: &str, pos: PosTag) -> Self {
        Token {
            surface: surface.to_owned(),
            pos,
            ner: None,
        }
    }

    pub fn with_ner(surface: &str, pos: PosTag, ner: &str) -> Self {
        Token {
            surface: surface.to_owned(),
            pos,
            ner: Some(ner.to_owned()),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub tokens: Vec<Token>,
    /// Index of the first token of each sentence.
    pub sentence_starts: Vec<usize>,
}

impl AnnotatedDocument {
    pub fn from_sentences(doc_id: &str, sentences: Vec<Vec<Token>>) -> Self {
        let mut tokens = Vec::new();
        let mut sentence_starts = Vec::new();
        for sent in sentences {
            sentence_starts.push(tokens.len());
            tokens.extend(sent);
        }
        AnnotatedDocument {
            doc_id: doc_id.to_owned(),
            tokens,
            sentence_starts,
        }
    }

    /// Sentence token ranges as `[start, end)` pairs.
    pub fn sentence_ranges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &start) in self.sentence_starts.iter().enumerate() {
            let end = self
                .sentence_starts
                .get(i + 1)
                .copied()
                .unwrap_or(self.tokens.len());
            out.push((start, end));
        }
        out
    }
}

/// Parses JSON-lines documents `{doc_id, sentences:[[{tok,pos,ner}]]}`.
pub fn load_documents(reader: impl BufRead) -> Result<Vec<AnnotatedDocument>> {
    #[derive(Deserialize)]
    struct Raw {
        doc_id: String,
        sentences: Vec<Vec<Token>>,
    }
    let mut docs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: Raw = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        docs.push(AnnotatedDocument::from_sentences(&raw.doc_id, raw.sentences));
    }
    Ok(docs)
}

/// A question-relevant span of a document, in token coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snippet {
    pub doc_id: String,
    pub start: usize,
    pub end: usize,
    pub matched_tokens: BTreeSet<String>,
}

impl Snippet {
    pub fn id(&self) -> String {
        format!("{}:{}-{}", self.doc_id, self.start, self.end)
    }
}

/// Windows of `±window` tokens around every question-token match, with
/// overlapping windows merged. Spans clip at document bounds. Snippets with
/// fewer than `min_matches` distinct matched question tokens are dropped.
pub fn extract_snippets(
    doc: &AnnotatedDocument,
    question: &Question,
    window: usize,
    min_matches: usize,
) -> Vec<Snippet> {
    assert!(window >= 1, "window must be at least 1");
    let n = doc.tokens.len();
    let doc_stems: Vec<String> = doc.tokens.iter().map(|t| stem(&t.surface)).collect();

    // (span, surface of the matched question token)
    let mut hits: Vec<(usize, usize, &str)> = Vec::new();
    for qt in &question.tokens {
        if qt.words.is_empty() {
            continue;
        }
        let m = qt.words.len();
        for i in 0..n.saturating_sub(m - 1) {
            if doc_stems[i..i + m] == qt.words[..] {
                hits.push((i, i + m, qt.surface.as_str()));
            }
        }
    }
    if hits.is_empty() {
        return Vec::new();
    }
    hits.sort_by_key(|&(s, e, _)| (s, e));

    let mut merged: Vec<(usize, usize, BTreeSet<String>)> = Vec::new();
    for (s, e, surface) in hits {
        let lo = s.saturating_sub(window);
        let hi = (e + window).min(n);
        match merged.last_mut() {
            Some((_, prev_hi, matched)) if lo < *prev_hi => {
                *prev_hi = (*prev_hi).max(hi);
                matched.insert(surface.to_owned());
            }
            _ => merged.push((lo, hi, BTreeSet::from([surface.to_owned()]))),
        }
    }
    merged
        .into_iter()
        .filter(|(_, _, matched)| matched.len() >= min_matches)
        .map(|(start, end, matched_tokens)| Snippet {
            doc_id: doc.doc_id.clone(),
            start,
            end,
            matched_tokens,
        })
        .collect()
}

const RESOLVED_PRONOUNS: &[&str] = &["he", "him", "his", "she", "her", "hers"];

/// Replaces third-person personal and possessive pronouns by the surface
/// form of the nearest preceding PERSON mention. Pronouns with no preceding
/// mention are left unchanged.
pub fn resolve_pronouns(doc: &AnnotatedDocument) -> AnnotatedDocument {
    let mut out = doc.clone();
    let mentions = ner_mentions(&doc.tokens);
    for i in 0..out.tokens.len() {
        let lower = out.tokens[i].surface.to_lowercase();
        if !RESOLVED_PRONOUNS.contains(&lower.as_str()) {
            continue;
        }
        let nearest = mentions
            .iter()
            .filter(|m| m.tag == "PERSON" && m.end <= i)
            .last();
        if let Some(m) = nearest {
            let surface = doc.tokens[m.start..m.end]
                .iter()
                .map(|t| t.surface.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            out.tokens[i] = Token {
                surface,
                pos: PosTag::Noun,
                ner: Some("PERSON".to_owned()),
            };
        }
    }
    out
}

struct Mention {
    start: usize,
    end: usize,
    tag: String,
}

/// Maximal runs of tokens carrying the same NER tag.
fn ner_mentions(tokens: &[Token]) -> Vec<Mention> {
    let mut out: Vec<Mention> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        match &tok.ner {
            Some(tag) => match out.last_mut() {
                Some(m) if m.end == i && &m.tag == tag => m.end = i + 1,
                _ => out.push(Mention {
                    start: i,
                    end: i + 1,
                    tag: tag.clone(),
                }),
            },
            None => {}
        }
    }
    out
}

/// One SPO triple mined from a snippet. The predicate slot distinguishes
/// predicate occurrences within the snippet: pattern predicates share a
/// slot when one textual occurrence relates several entity pairs, while
/// every cooccurs or type triple gets its own slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenTriple {
    pub subject: String,
    pub predicate: String,
    pub object: String,
    pub origin: String,
    pub predicate_slot: u32,
}

pub const COOCCURS_SLOT_BASE: u32 = 1_000_000;
pub const TYPE_SLOT_BASE: u32 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SpanRole {
    Entity,
    Predicate,
}

#[derive(Debug, Clone, Copy)]
struct MarkupSpan {
    start: usize,
    end: usize,
    role: SpanRole,
}

/// Words that trigger hypernym patterns; they never join entity phrases.
fn is_pattern_word(surface: &str) -> bool {
    matches!(surface.to_lowercase().as_str(), "such" | "other")
}

fn entity_pos(t: &Token) -> bool {
    matches!(t.pos, PosTag::Noun | PosTag::Adj | PosTag::Num)
}

/// Marks up a token sequence into entity and predicate spans.
///
/// Entity phrases are maximal runs of nouns, adjectives, and cardinal
/// numbers, or NER mentions (which take precedence over POS patterns).
/// Predicate phrases are verb runs, verb runs plus a preposition, or a
/// noun plus a preposition; a trailing noun of an entity run is split off
/// when it starts a noun+preposition predicate.
fn markup(tokens: &[Token]) -> Vec<MarkupSpan> {
    let n = tokens.len();
    let ner = |i: usize| tokens[i].ner.is_some();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < n {
        let t = &tokens[i];
        if ner(i) || (entity_pos(t) && !is_pattern_word(&t.surface)) {
            // noun+preposition predicate, unless the noun is NER-covered
            if t.pos == PosTag::Noun
                && !ner(i)
                && i + 1 < n
                && tokens[i + 1].pos == PosTag::Adp
                && !ner(i + 1)
            {
                spans.push(MarkupSpan {
                    start: i,
                    end: i + 2,
                    role: SpanRole::Predicate,
                });
                i += 2;
                continue;
            }
            let start = i;
            while i < n {
                let cur = &tokens[i];
                if !(ner(i) || (entity_pos(cur) && !is_pattern_word(&cur.surface))) {
                    break;
                }
                // split before a noun that starts a noun+preposition predicate
                if i > start
                    && cur.pos == PosTag::Noun
                    && !ner(i)
                    && i + 1 < n
                    && tokens[i + 1].pos == PosTag::Adp
                    && !ner(i + 1)
                {
                    break;
                }
                i += 1;
            }
            spans.push(MarkupSpan {
                start,
                end: i,
                role: SpanRole::Entity,
            });
        } else if t.pos == PosTag::Verb && !ner(i) {
            let start = i;
            while i < n && tokens[i].pos == PosTag::Verb && !ner(i) {
                i += 1;
            }
            if i < n && tokens[i].pos == PosTag::Adp && !ner(i) {
                i += 1;
            }
            spans.push(MarkupSpan {
                start,
                end: i,
                role: SpanRole::Predicate,
            });
        } else {
            i += 1;
        }
    }
    spans
}

fn span_surface(tokens: &[Token], span: &MarkupSpan) -> String {
    tokens[span.start..span.end]
        .iter()
        .map(|t| t.surface.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Extracts SPO triples from a tagged snippet: for every entity pair with
/// exactly one predicate phrase strictly between them, a triple is emitted;
/// a snippet with two or more entities and no predicate at all contributes
/// pairwise `cooccurs` triples instead.
pub fn extract_open_triples(tokens: &[Token], origin: &str) -> Vec<OpenTriple> {
    let spans = markup(tokens);
    let entities: Vec<&MarkupSpan> = spans
        .iter()
        .filter(|s| s.role == SpanRole::Entity)
        .collect();
    let predicates: Vec<&MarkupSpan> = spans
        .iter()
        .filter(|s| s.role == SpanRole::Predicate)
        .collect();

    let mut out = Vec::new();
    if predicates.is_empty() {
        if entities.len() >= 2 {
            let mut slot = COOCCURS_SLOT_BASE;
            for i in 0..entities.len() {
                for j in i + 1..entities.len() {
                    out.push(OpenTriple {
                        subject: span_surface(tokens, entities[i]),
                        predicate: PRED_COOCCURS.to_owned(),
                        object: span_surface(tokens, entities[j]),
                        origin: origin.to_owned(),
                        predicate_slot: slot,
                    });
                    slot += 1;
                }
            }
        }
        return out;
    }

    for i in 0..entities.len() {
        for j in i + 1..entities.len() {
            let lo = entities[i].end;
            let hi = entities[j].start;
            let between: Vec<(usize, &&MarkupSpan)> = predicates
                .iter()
                .enumerate()
                .filter(|(_, p)| p.start >= lo && p.end <= hi)
                .collect();
            if let [(slot, pred)] = between.as_slice() {
                out.push(OpenTriple {
                    subject: span_surface(tokens, entities[i]),
                    predicate: span_surface(tokens, pred),
                    object: span_surface(tokens, entities[j]),
                    origin: origin.to_owned(),
                    predicate_slot: *slot as u32,
                });
            }
        }
    }
    out
}

/// Hypernym patterns over one sentence: `NP2 such as NP1`, `NP1 is a(n)
/// NP2`, and `NP1 and other NP2`, each yielding `<NP1, type, NP2>`.
/// Noun phrases are the entity spans of the POS markup.
pub fn extract_type_triples(tokens: &[Token], origin: &str) -> Vec<OpenTriple> {
    let spans = markup(tokens);
    let entities: Vec<&MarkupSpan> = spans
        .iter()
        .filter(|s| s.role == SpanRole::Entity)
        .collect();
    let mut out = Vec::new();
    let mut slot = TYPE_SLOT_BASE;
    for pair in entities.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let gap: Vec<String> = tokens[a.end..b.start]
            .iter()
            .map(|t| t.surface.to_lowercase())
            .collect();
        let gap: Vec<&str> = gap.iter().map(String::as_str).collect();
        let (np1, np2) = match gap.as_slice() {
            ["such", "as"] => (b, a),
            ["is", "a"] | ["is", "an"] => (a, b),
            ["and", "other"] => (a, b),
            _ => continue,
        };
        out.push(OpenTriple {
            subject: span_surface(tokens, np1),
            predicate: PRED_TYPE.to_owned(),
            object: span_surface(tokens, np2),
            origin: origin.to_owned(),
            predicate_slot: slot,
        });
        slot += 1;
    }
    out
}

const FALLBACK_ADP: &[&str] = &[
    "of", "in", "on", "at", "by", "with", "from", "to", "for", "as", "into", "over", "after",
    "before", "between", "during", "under", "about", "through",
];
const FALLBACK_DET: &[&str] = &["a", "an", "the", "this", "that", "these", "those"];
const FALLBACK_PRON: &[&str] = &[
    "he", "she", "him", "her", "his", "hers", "it", "its", "they", "them", "their", "we", "us",
    "you", "i", "who", "whom", "which",
];
const FALLBACK_VERBS: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "being", "has", "have", "had", "does", "did", "won",
    "made", "wrote", "saw", "met", "held", "gave", "took", "sang", "ran",
];

/// Degraded tagger for untagged input: closed-class word lists, digit and
/// verb-suffix heuristics, and capitalized runs as entity mentions.
pub fn fallback_tag(words: &[&str]) -> Vec<Token> {
    words
        .iter()
        .map(|w| {
            let lower = w.to_lowercase();
            let first_upper = w.chars().next().is_some_and(|c| c.is_uppercase());
            if FALLBACK_ADP.contains(&lower.as_str()) {
                Token::new(w, PosTag::Adp)
            } else if FALLBACK_DET.contains(&lower.as_str()) {
                Token::new(w, PosTag::Det)
            } else if FALLBACK_PRON.contains(&lower.as_str()) {
                Token::new(w, PosTag::Pron)
            } else if w.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                Token::new(w, PosTag::Num)
            } else if FALLBACK_VERBS.contains(&lower.as_str())
                || (lower.len() > 4 && (lower.ends_with("ed") || lower.ends_with("ing")))
            {
                Token::new(w, PosTag::Verb)
            } else if first_upper {
                Token::with_ner(w, PosTag::Noun, "ENT")
            } else if w.chars().all(|c| !c.is_alphanumeric()) {
                Token::new(w, PosTag::Other)
            } else {
                Token::new(w, PosTag::Noun)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relevance::QuestionToken;

    fn q(words: &[&str]) -> Question {
        Question {
            raw: words.join(" "),
            tokens: words
                .iter()
                .map(|w| QuestionToken {
                    surface: (*w).to_owned(),
                    words: vec![stem(w)],
                    kg_entity: None,
                })
                .collect(),
            nerd_entities: Vec::new(),
        }
    }

    fn filler_doc(len: usize) -> AnnotatedDocument {
        let tokens: Vec<Token> = (0..len)
            .map(|i| Token::new(&format!("w{i}"), PosTag::Other))
            .collect();
        AnnotatedDocument {
            doc_id: "d".into(),
            tokens,
            sentence_starts: vec![0],
        }
    }

    #[test]
    fn no_matches_no_snippets() {
        let doc = filler_doc(30);
        assert!(extract_snippets(&doc, &q(&["absent"]), 50, 1).is_empty());
    }

    #[test]
    fn overlapping_windows_merge() {
        let mut doc = filler_doc(80);
        doc.tokens[10] = Token::new("alpha", PosTag::Noun);
        doc.tokens[40] = Token::new("beta", PosTag::Noun);
        let got = extract_snippets(&doc, &q(&["alpha", "beta"]), 50, 1);
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].start, got[0].end), (0, 80));
        assert_eq!(got[0].matched_tokens.len(), 2);
    }

    #[test]
    fn single_mid_document_match_spans_101_tokens() {
        let mut doc = filler_doc(200);
        doc.tokens[100] = Token::new("alpha", PosTag::Noun);
        let got = extract_snippets(&doc, &q(&["alpha"]), 50, 1);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].end - got[0].start, 101);
    }

    #[test]
    fn min_match_threshold_filters_single_hit_spans() {
        let mut doc = filler_doc(200);
        doc.tokens[10] = Token::new("alpha", PosTag::Noun);
        doc.tokens[150] = Token::new("beta", PosTag::Noun);
        let loose = extract_snippets(&doc, &q(&["alpha", "beta"]), 20, 1);
        assert_eq!(loose.len(), 2);
        let strict = extract_snippets(&doc, &q(&["alpha", "beta"]), 20, 2);
        assert!(strict.is_empty());
    }

    /// Interval-union oracle: merged spans are disjoint and cover exactly
    /// the union of the raw windows.
    #[test]
    fn merged_spans_equal_interval_union() {
        let mut doc = filler_doc(120);
        for &p in &[3usize, 9, 40, 41, 90, 118] {
            doc.tokens[p] = Token::new("alpha", PosTag::Noun);
        }
        let window = 7;
        let got = extract_snippets(&doc, &q(&["alpha"]), window, 1);
        let mut covered = vec![false; 120];
        for &p in &[3usize, 9, 40, 41, 90, 118] {
            for i in p.saturating_sub(window)..(p + 1 + window).min(120) {
                covered[i] = true;
            }
        }
        let mut from_snippets = vec![false; 120];
        for s in &got {
            for i in s.start..s.end {
                assert!(!from_snippets[i], "spans overlap at {i}");
                from_snippets[i] = true;
            }
        }
        assert_eq!(covered, from_snippets);
    }

    fn person(name: &str) -> Token {
        Token::with_ner(name, PosTag::Noun, "PERSON")
    }

    #[test]
    fn pronoun_replaced_by_nearest_preceding_person() {
        let doc = AnnotatedDocument {
            doc_id: "d".into(),
            tokens: vec![
                person("Leonardo"),
                Token::new("acted", PosTag::Verb),
                Token::new("he", PosTag::Pron),
                Token::new("won", PosTag::Verb),
            ],
            sentence_starts: vec![0],
        };
        let got = resolve_pronouns(&doc);
        assert_eq!(got.tokens[2].surface, "Leonardo");
    }

    #[test]
    fn pronoun_without_preceding_person_unchanged() {
        let doc = AnnotatedDocument {
            doc_id: "d".into(),
            tokens: vec![Token::new("he", PosTag::Pron), person("Leonardo")],
            sentence_starts: vec![0],
        };
        let got = resolve_pronouns(&doc);
        assert_eq!(got.tokens[0].surface, "he");
    }

    #[test]
    fn two_persons_nearest_wins_and_multiword_mentions_join() {
        let doc = AnnotatedDocument {
            doc_id: "d".into(),
            tokens: vec![
                person("Kate"),
                Token::new("met", PosTag::Verb),
                person("Leonardo"),
                person("DiCaprio"),
                Token::new("before", PosTag::Adp),
                Token::new("she", PosTag::Pron),
                Token::new("left", PosTag::Verb),
            ],
            sentence_starts: vec![0],
        };
        let got = resolve_pronouns(&doc);
        assert_eq!(got.tokens[5].surface, "Leonardo DiCaprio");
    }

    fn ent(label: &str) -> Token {
        Token::with_ner(label, PosTag::Noun, "ENT")
    }

    fn gap() -> Token {
        Token::new(",", PosTag::Other)
    }

    #[test]
    fn markup_example_yields_exactly_three_triples() {
        // E1 .. E2 .. P1 .. E3 .. P2 .. E4
        let tokens = vec![
            ent("E1"),
            gap(),
            ent("E2"),
            gap(),
            Token::new("featured", PosTag::Verb),
            gap(),
            ent("E3"),
            gap(),
            Token::new("produced", PosTag::Verb),
            gap(),
            ent("E4"),
        ];
        let got = extract_open_triples(&tokens, "s");
        let as_tuples: BTreeSet<(String, String, String)> = got
            .iter()
            .map(|t| (t.subject.clone(), t.predicate.clone(), t.object.clone()))
            .collect();
        let expect: BTreeSet<(String, String, String)> = [
            ("E1", "featured", "E3"),
            ("E2", "featured", "E3"),
            ("E3", "produced", "E4"),
        ]
        .iter()
        .map(|(a, b, c)| ((*a).to_owned(), (*b).to_owned(), (*c).to_owned()))
        .collect();
        assert_eq!(as_tuples, expect);
        // the two E1/E2 triples share the P1 occurrence slot
        let slots: Vec<u32> = got
            .iter()
            .filter(|t| t.predicate == "featured")
            .map(|t| t.predicate_slot)
            .collect();
        assert_eq!(slots[0], slots[1]);
    }

    #[test]
    fn cooccurs_rule_for_predicate_free_snippets() {
        let tokens = vec![ent("E1"), gap(), ent("E2"), gap(), ent("E3")];
        let got = extract_open_triples(&tokens, "s");
        assert_eq!(got.len(), 3);
        assert!(got.iter().all(|t| t.predicate == PRED_COOCCURS));
        let slots: BTreeSet<u32> = got.iter().map(|t| t.predicate_slot).collect();
        assert_eq!(slots.len(), 3, "each cooccurs triple gets its own slot");
    }

    #[test]
    fn single_entity_no_predicate_yields_nothing() {
        let tokens = vec![ent("E1")];
        assert!(extract_open_triples(&tokens, "s").is_empty());
    }

    #[test]
    fn verb_preposition_and_noun_preposition_predicates() {
        let tokens = vec![
            ent("Alejandro"),
            Token::new("collaborated", PosTag::Verb),
            Token::new("with", PosTag::Adp),
            ent("Leonardo"),
        ];
        let got = extract_open_triples(&tokens, "s");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].predicate, "collaborated with");

        let tokens = vec![
            Token::new("director", PosTag::Noun),
            Token::new("of", PosTag::Adp),
            ent("Titanic"),
        ];
        let spans = markup(&tokens);
        assert_eq!(spans.len(), 2);
        assert_eq!(spans[0].role, SpanRole::Predicate);
    }

    #[test]
    fn verb_runs_form_one_predicate() {
        let tokens = vec![
            ent("Revenant"),
            Token::new("was", PosTag::Verb),
            Token::new("directed", PosTag::Verb),
            Token::new("by", PosTag::Adp),
            ent("Alejandro"),
        ];
        let got = extract_open_triples(&tokens, "s");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].predicate, "was directed by");
    }

    #[test]
    fn triple_phrases_occur_verbatim_in_snippet() {
        let tokens = vec![
            ent("E1"),
            Token::new("met", PosTag::Verb),
            ent("E2"),
            gap(),
            ent("E3"),
        ];
        let text: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
        let joined = text.join(" ");
        for t in extract_open_triples(&tokens, "s") {
            assert!(joined.contains(&t.subject));
            assert!(joined.contains(&t.object));
            if t.predicate != PRED_COOCCURS && t.predicate != PRED_TYPE {
                assert!(joined.contains(&t.predicate));
            }
        }
    }

    #[test]
    fn hearst_such_as() {
        // "western films such as The Revenant"
        let tokens = vec![
            Token::new("western", PosTag::Adj),
            Token::new("films", PosTag::Noun),
            Token::new("such", PosTag::Adj),
            Token::new("as", PosTag::Adp),
            Token::with_ner("The", PosTag::Det, "WORK"),
            Token::with_ner("Revenant", PosTag::Noun, "WORK"),
        ];
        let got = extract_type_triples(&tokens, "s");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].subject, "The Revenant");
        assert_eq!(got[0].predicate, PRED_TYPE);
        assert_eq!(got[0].object, "western films");
    }

    #[test]
    fn hearst_is_a() {
        // "The Revenant is a 2015 American western film"
        let tokens = vec![
            Token::with_ner("The", PosTag::Det, "WORK"),
            Token::with_ner("Revenant", PosTag::Noun, "WORK"),
            Token::new("is", PosTag::Verb),
            Token::new("a", PosTag::Det),
            Token::new("2015", PosTag::Num),
            Token::new("American", PosTag::Adj),
            Token::new("western", PosTag::Adj),
            Token::new("film", PosTag::Noun),
        ];
        let got = extract_type_triples(&tokens, "s");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].subject, "The Revenant");
        assert_eq!(got[0].object, "2015 American western film");
    }

    #[test]
    fn hearst_and_other() {
        let tokens = vec![
            Token::with_ner("Alejandro", PosTag::Noun, "PERSON"),
            Token::new("and", PosTag::Other),
            Token::new("other", PosTag::Adj),
            Token::new("Mexican", PosTag::Adj),
            Token::new("film", PosTag::Noun),
            Token::new("directors", PosTag::Noun),
        ];
        let got = extract_type_triples(&tokens, "s");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].subject, "Alejandro");
        assert_eq!(got[0].object, "Mexican film directors");
    }

    #[test]
    fn sentence_without_pattern_yields_no_type_triples() {
        let tokens = vec![ent("E1"), Token::new("met", PosTag::Verb), ent("E2")];
        assert!(extract_type_triples(&tokens, "s").is_empty());
    }

    #[test]
    fn fallback_tagger_basics() {
        let toks = fallback_tag(&["Leonardo", "DiCaprio", "starred", "in", "the", "film"]);
        assert_eq!(toks[0].ner.as_deref(), Some("ENT"));
        assert_eq!(toks[1].ner.as_deref(), Some("ENT"));
        assert_eq!(toks[2].pos, PosTag::Verb);
        assert_eq!(toks[3].pos, PosTag::Adp);
        assert_eq!(toks[4].pos, PosTag::Det);
        assert_eq!(toks[5].pos, PosTag::Noun);
    }

    #[test]
    fn document_json_round_trip() {
        let line = r#"{"doc_id":"d1","sentences":[[{"tok":"Leo","pos":"NOUN","ner":"PERSON"},{"tok":"won","pos":"VERB"}],[{"tok":"end","pos":"OTHER"}]]}"#;
        let docs = load_documents(std::io::Cursor::new(line)).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].tokens.len(), 3);
        assert_eq!(docs[0].sentence_starts, vec![0, 2]);
        assert_eq!(docs[0].tokens[0].ner.as_deref(), Some("PERSON"));
    }
}

//! KG fact records and the in-memory triple store used for 1-hop, type,
//! and shortest-path lookups.
//!
//! Facts arrive as JSON lines `{s, p, o, o_kind, quals:[{qp, qo, qo_kind}]}`.
//! A handful of predicate strings are reserved: `instanceOf` and
//! `occupation` mark type facts, and `alias` lines feed the entity alias
//! table instead of the fact set.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeKind;

pub const PRED_INSTANCE_OF: &str = "instanceOf";
pub const PRED_OCCUPATION: &str = "occupation";
pub const PRED_COOCCURS: &str = "cooccurs";
pub const PRED_TYPE: &str = "type";
pub const PRED_ALIAS: &str = "alias";

/// Object of `instanceOf` that enables `occupation` type lookups.
pub const TYPE_HUMAN: &str = "human";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Qualifier {
    #[serde(rename = "qp")]
    pub predicate: String,
    #[serde(rename = "qo")]
    pub object: String,
    #[serde(rename = "qo_kind")]
    pub object_kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KGFact {
    #[serde(rename = "s")]
    pub subject: String,
    #[serde(rename = "p")]
    pub predicate: String,
    #[serde(rename = "o")]
    pub object: String,
    #[serde(rename = "o_kind")]
    pub object_kind: NodeKind,
    #[serde(rename = "quals", default, skip_serializing_if = "Vec::is_empty")]
    pub qualifiers: Vec<Qualifier>,
}

impl KGFact {
    fn validate(&self) -> Result<()> {
        if self.subject.is_empty() || self.predicate.is_empty() || self.object.is_empty() {
            return Err(Error::Validation(
                "fact with empty subject, predicate, or object".into(),
            ));
        }
        if self.object_kind == NodeKind::Predicate
            || self
                .qualifiers
                .iter()
                .any(|q| q.object_kind == NodeKind::Predicate)
        {
            return Err(Error::Validation(
                "fact object cannot be of predicate kind".into(),
            ));
        }
        Ok(())
    }

    /// Terms through which this fact can be reached: subject, object, and
    /// qualifier objects. Predicates are not lookup targets.
    pub fn match_terms(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.subject.as_str())
            .chain(std::iter::once(self.object.as_str()))
            .chain(self.qualifiers.iter().map(|q| q.object.as_str()))
    }
}

/// Flattens a fact into a sentence-like string for relevance scoring:
/// subject, predicate and object joined by spaces, each qualifier appended
/// with `and`, and a terminal period.
pub fn verbalize_fact(fact: &KGFact) -> String {
    let mut out = format!("{} {} {}", fact.subject, fact.predicate, fact.object);
    for q in &fact.qualifiers {
        out.push_str(" and ");
        out.push_str(&q.predicate);
        out.push(' ');
        out.push_str(&q.object);
    }
    out.push('.');
    out
}

/// Fact set indexed by subject, object, and qualifier-object strings.
/// Immutable after load.
#[derive(Debug, Default, Clone)]
pub struct TripleStore {
    facts: Vec<KGFact>,
    by_term: HashMap<String, Vec<usize>>,
    aliases: HashMap<String, BTreeSet<String>>,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_facts(facts: impl IntoIterator<Item = KGFact>) -> Result<Self> {
        let mut store = Self::new();
        for fact in facts {
            store.add_fact(fact)?;
        }
        Ok(store)
    }

    /// Parses JSON-lines fact records. `alias` facts populate the alias
    /// table; everything else lands in the fact set.
    pub fn load(reader: impl BufRead) -> Result<Self> {
        let mut store = Self::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fact: KGFact = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            store.add_fact(fact).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(store)
    }

    fn add_fact(&mut self, fact: KGFact) -> Result<()> {
        fact.validate()?;
        if fact.predicate == PRED_ALIAS {
            self.aliases
                .entry(fact.subject.clone())
                .or_default()
                .insert(fact.object.clone());
            return Ok(());
        }
        let idx = self.facts.len();
        let terms: BTreeSet<&str> = fact.match_terms().collect();
        for term in terms {
            self.by_term.entry(term.to_owned()).or_default().push(idx);
        }
        self.facts.push(fact);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> &[KGFact] {
        &self.facts
    }

    pub fn aliases_of(&self, entity: &str) -> Option<&BTreeSet<String>> {
        self.aliases.get(entity)
    }

    /// All facts where `entity` appears as subject, object, or qualifier
    /// object, in insertion order.
    pub fn one_hop(&self, entity: &str) -> Vec<&KGFact> {
        self.by_term
            .get(entity)
            .map(|idxs| idxs.iter().map(|&i| &self.facts[i]).collect())
            .unwrap_or_default()
    }

    /// Type facts for an entity: its `instanceOf` facts, plus `occupation`
    /// facts when the entity is an instance of `human`.
    pub fn type_facts(&self, entity: &str) -> Vec<&KGFact> {
        let Some(idxs) = self.by_term.get(entity) else {
            return Vec::new();
        };
        let is_human = idxs.iter().any(|&i| {
            let f = &self.facts[i];
            f.subject == entity && f.predicate == PRED_INSTANCE_OF && f.object == TYPE_HUMAN
        });
        idxs.iter()
            .map(|&i| &self.facts[i])
            .filter(|f| {
                f.subject == entity
                    && (f.predicate == PRED_INSTANCE_OF
                        || (is_human && f.predicate == PRED_OCCUPATION))
            })
            .collect()
    }

    /// Minimum-hop fact path between two entities, where one hop traverses
    /// one fact. Ties break toward earlier-inserted facts. Returns an empty
    /// path when `a == b` or the entities are disconnected.
    pub fn shortest_path(&self, a: &str, b: &str) -> Vec<&KGFact> {
        if a == b {
            return Vec::new();
        }
        // parent: term -> (fact index used to reach it, previous term)
        let mut parent: HashMap<&str, (usize, &str)> = HashMap::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        seen.insert(a);
        let mut queue: VecDeque<&str> = VecDeque::from([a]);
        while let Some(term) = queue.pop_front() {
            let Some(idxs) = self.by_term.get(term) else {
                continue;
            };
            for &i in idxs {
                for next in self.facts[i].match_terms() {
                    if seen.contains(next) {
                        continue;
                    }
                    seen.insert(next);
                    parent.insert(next, (i, term));
                    if next == b {
                        let mut path = Vec::new();
                        let mut cur = next;
                        while cur != a {
                            let (fi, prev) = parent[cur];
                            path.push(&self.facts[fi]);
                            cur = prev;
                        }
                        path.reverse();
                        return path;
                    }
                    queue.push_back(next);
                }
            }
        }
        Vec::new()
    }
}

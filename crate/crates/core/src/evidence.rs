//! The unit of relevance scoring: one KG fact or one text snippet.

use serde::{Deserialize, Serialize};

use crate::graph::{EvidenceId, SourceTag};
use crate::store::{verbalize_fact, KGFact};
use crate::text::{Snippet, Token};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum EvidencePayload {
    Fact(KGFact),
    Snippet {
        snippet: Snippet,
        /// Tokens of the span, after pronoun resolution.
        tokens: Vec<Token>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Evidence {
    pub id: EvidenceId,
    pub source: SourceTag,
    pub payload: EvidencePayload,
    pub verbalized: String,
    /// Question-relevance score in [0,1]; set by the relevance stage.
    pub score: f64,
}

impl Evidence {
    pub fn from_fact(id: EvidenceId, fact: KGFact) -> Self {
        let verbalized = verbalize_fact(&fact);
        Evidence {
            id,
            source: SourceTag::Kg,
            payload: EvidencePayload::Fact(fact),
            verbalized,
            score: 0.0,
        }
    }

    pub fn from_snippet(id: EvidenceId, snippet: Snippet, tokens: Vec<Token>) -> Self {
        let verbalized = tokens
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        Evidence {
            id,
            source: SourceTag::Text,
            payload: EvidencePayload::Snippet { snippet, tokens },
            verbalized,
            score: 0.0,
        }
    }

    pub fn fact(&self) -> Option<&KGFact> {
        match &self.payload {
            EvidencePayload::Fact(f) => Some(f),
            _ => None,
        }
    }

    pub fn snippet_tokens(&self) -> Option<&[Token]> {
        match &self.payload {
            EvidencePayload::Snippet { tokens, .. } => Some(tokens),
            _ => None,
        }
    }
}

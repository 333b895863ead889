//! Weighted undirected multigraph of typed nodes and edges, with evidence
//! provenance. This is the context graph that every downstream stage
//! (anchor detection, tree search, ranking) operates on.
//!
//! Node and edge weights are arithmetic means over the scores of the
//! distinct evidences that contributed them. Edge costs are `1 - weight`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stable node identifier, assigned in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub u32);

/// Identifier of one evidence (a KG fact or a text snippet).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EvidenceId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Entity,
    Predicate,
    Type,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Triple,
    #[serde(rename = "type")]
    TypeEdge,
    Alignment,
}

/// Which source a node or edge was materialized from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceTag {
    Kg,
    Text,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub label: String,
    pub kind: NodeKind,
    pub weight: f64,
    pub aliases: BTreeSet<String>,
    /// Per-evidence relevance scores; the node weight is their mean.
    pub contributions: BTreeMap<EvidenceId, f64>,
    /// Distinguishes repeated predicate occurrences with the same label.
    pub occurrence_index: u32,
    pub src: SourceTag,
}

impl Node {
    pub fn provenance(&self) -> impl Iterator<Item = EvidenceId> + '_ {
        self.contributions.keys().copied()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Edge {
    /// Endpoints stored with `a < b`; the graph is undirected.
    pub a: NodeId,
    pub b: NodeId,
    pub kind: EdgeKind,
    pub weight: f64,
    pub contributions: BTreeMap<EvidenceId, f64>,
    /// Original fact direction, kept only as export metadata.
    pub direction: Option<(NodeId, NodeId)>,
    pub src: SourceTag,
}

impl Edge {
    pub fn other(&self, n: NodeId) -> NodeId {
        if n == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn provenance(&self) -> impl Iterator<Item = EvidenceId> + '_ {
        self.contributions.keys().copied()
    }
}

/// Cost of traversing an edge in a Steiner tree: `1 - weight`.
pub fn edge_cost(edge: &Edge) -> f64 {
    1.0 - edge.weight
}

/// Per-kind node and edge counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub entity_nodes: usize,
    pub predicate_nodes: usize,
    pub type_nodes: usize,
    pub literal_nodes: usize,
    pub triple_edges: usize,
    pub type_edges: usize,
    pub alignment_edges: usize,
}

impl GraphStats {
    pub fn total_nodes(&self) -> usize {
        self.entity_nodes + self.predicate_nodes + self.type_nodes + self.literal_nodes
    }

    pub fn total_edges(&self) -> usize {
        self.triple_edges + self.type_edges + self.alignment_edges
    }
}

/// Key under which predicate nodes are deduplicated: re-ingesting the same
/// occurrence of the same evidence is idempotent, while every other
/// (evidence, occurrence) pair gets a fresh node.
type PredicateKey = (String, u32, Vec<EvidenceId>);

#[derive(Debug, Clone, Default)]
pub struct ContextGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    shared_lookup: HashMap<(String, NodeKind), NodeId>,
    predicate_lookup: HashMap<PredicateKey, NodeId>,
    predicate_label_counts: HashMap<String, u32>,
    edge_lookup: HashMap<(NodeId, NodeId, EdgeKind), usize>,
    frozen: bool,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for v in values {
        sum += v;
        n += 1;
    }
    if n == 0 {
        None
    } else {
        Some(sum / n as f64)
    }
}

fn check_weight(weight: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&weight) || weight.is_nan() {
        return Err(Error::Validation(format!(
            "weight {weight} outside [0,1]"
        )));
    }
    Ok(())
}

impl ContextGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// Neighbors of `n` as `(neighbor, edge index)` pairs in insertion order.
    pub fn neighbors(&self, n: NodeId) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.adjacency[n.0 as usize]
            .iter()
            .map(move |&e| (self.edges[e].other(n), e))
    }

    pub fn find_node(&self, label: &str, kind: NodeKind) -> Option<NodeId> {
        self.shared_lookup.get(&(label.to_owned(), kind)).copied()
    }

    pub fn find_edge(&self, a: NodeId, b: NodeId, kind: EdgeKind) -> Option<usize> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.edge_lookup.get(&(lo, hi, kind)).copied()
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Marks the graph immutable; all later mutations fail.
    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    fn check_mutable(&self) -> Result<()> {
        if self.frozen {
            Err(Error::Frozen)
        } else {
            Ok(())
        }
    }

    /// Inserts or reuses a node. Entity, Type and Literal nodes merge on
    /// equal `(label, kind)` with the weight re-averaged over the union of
    /// provenance evidences. Predicate labels get a fresh node per
    /// (evidence set, occurrence) so that predicates from distinct
    /// triples never merge.
    pub fn upsert_node(
        &mut self,
        label: &str,
        kind: NodeKind,
        weight: f64,
        provenance: &[EvidenceId],
    ) -> Result<NodeId> {
        self.upsert_node_occ(label, kind, weight, provenance, 0)
    }

    /// Like [`upsert_node`](Self::upsert_node) with an explicit occurrence
    /// discriminator, used when one evidence contains the same predicate
    /// label more than once (e.g. as main and qualifier predicate).
    pub fn upsert_node_occ(
        &mut self,
        label: &str,
        kind: NodeKind,
        weight: f64,
        provenance: &[EvidenceId],
        occurrence: u32,
    ) -> Result<NodeId> {
        self.check_mutable()?;
        check_weight(weight)?;
        if label.is_empty() {
            return Err(Error::Validation("empty node label".into()));
        }

        if kind == NodeKind::Predicate {
            let mut prov: Vec<EvidenceId> = provenance.to_vec();
            prov.sort_unstable();
            prov.dedup();
            let key = (label.to_owned(), occurrence, prov);
            if let Some(&id) = self.predicate_lookup.get(&key) {
                return Ok(id); // idempotent re-ingestion of the same occurrence
            }
            let occ_index = self
                .predicate_label_counts
                .entry(label.to_owned())
                .or_insert(0);
            let index = *occ_index;
            *occ_index += 1;
            let id = self.push_node(label, kind, weight, provenance, index);
            self.predicate_lookup.insert(key, id);
            return Ok(id);
        }

        if let Some(&id) = self.shared_lookup.get(&(label.to_owned(), kind)) {
            let node = &mut self.nodes[id.0 as usize];
            for &ev in provenance {
                node.contributions.entry(ev).or_insert(weight);
            }
            if let Some(m) = mean(node.contributions.values().copied()) {
                node.weight = m;
            } else {
                node.weight = weight;
            }
            return Ok(id);
        }
        let id = self.push_node(label, kind, weight, provenance, 0);
        self.shared_lookup.insert((label.to_owned(), kind), id);
        Ok(id)
    }

    fn push_node(
        &mut self,
        label: &str,
        kind: NodeKind,
        weight: f64,
        provenance: &[EvidenceId],
        occurrence_index: u32,
    ) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        let contributions: BTreeMap<EvidenceId, f64> =
            provenance.iter().map(|&ev| (ev, weight)).collect();
        let weight = mean(contributions.values().copied()).unwrap_or(weight);
        self.nodes.push(Node {
            id,
            label: label.to_owned(),
            kind,
            weight,
            aliases: BTreeSet::new(),
            contributions,
            occurrence_index,
            src: SourceTag::Kg,
        });
        self.adjacency.push(Vec::new());
        id
    }

    pub fn set_source(&mut self, id: NodeId, src: SourceTag) {
        self.nodes[id.0 as usize].src = src;
    }

    pub fn add_aliases<I, S>(&mut self, id: NodeId, aliases: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let node = &mut self.nodes[id.0 as usize];
        for a in aliases {
            node.aliases.insert(a.into());
        }
    }

    /// Inserts or merges an edge. Duplicate `(endpoint pair, kind)`
    /// insertions average the weight over distinct contributing evidences.
    /// Alignment edges must connect nodes of the same kind.
    pub fn upsert_edge(
        &mut self,
        a: NodeId,
        b: NodeId,
        kind: EdgeKind,
        weight: f64,
        provenance: &[EvidenceId],
    ) -> Result<usize> {
        self.check_mutable()?;
        check_weight(weight)?;
        if a == b {
            return Err(Error::Validation(format!("self-loop on node {}", a.0)));
        }
        let n = self.nodes.len() as u32;
        if a.0 >= n || b.0 >= n {
            return Err(Error::Validation(format!(
                "unknown node id {}",
                a.0.max(b.0)
            )));
        }
        if kind == EdgeKind::Alignment {
            let (ka, kb) = (self.node(a).kind, self.node(b).kind);
            if ka != kb {
                return Err(Error::Validation(format!(
                    "alignment edge across kinds {ka:?} and {kb:?}"
                )));
            }
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if let Some(&idx) = self.edge_lookup.get(&(lo, hi, kind)) {
            let edge = &mut self.edges[idx];
            for &ev in provenance {
                edge.contributions.entry(ev).or_insert(weight);
            }
            if let Some(m) = mean(edge.contributions.values().copied()) {
                edge.weight = m;
            }
            return Ok(idx);
        }
        let idx = self.edges.len();
        let contributions: BTreeMap<EvidenceId, f64> =
            provenance.iter().map(|&ev| (ev, weight)).collect();
        let weight = mean(contributions.values().copied()).unwrap_or(weight);
        self.edges.push(Edge {
            a: lo,
            b: hi,
            kind,
            weight,
            contributions,
            direction: Some((a, b)),
            src: SourceTag::Kg,
        });
        self.adjacency[lo.0 as usize].push(idx);
        self.adjacency[hi.0 as usize].push(idx);
        self.edge_lookup.insert((lo, hi, kind), idx);
        Ok(idx)
    }

    pub fn set_edge_source(&mut self, idx: usize, src: SourceTag) {
        self.edges[idx].src = src;
    }

    /// Connected components as sorted node-id lists, via BFS over all
    /// edge kinds (alignment edges count as connections).
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([NodeId(start as u32)]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for (u, _) in self.neighbors(v) {
                    if !seen[u.0 as usize] {
                        seen[u.0 as usize] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the largest connected component. Ties go to the
    /// component containing the lexicographically smallest node label.
    /// Node ids are re-assigned compactly, preserving insertion order.
    pub fn largest_connected_component(&self) -> ContextGraph {
        let comps = self.components();
        if comps.is_empty() {
            return ContextGraph::new();
        }
        let best = comps
            .iter()
            .min_by_key(|c| {
                let min_label = c.iter().map(|&v| self.node(v).label.as_str()).min();
                (std::cmp::Reverse(c.len()), min_label)
            })
            .expect("nonempty component list");
        self.induced_subgraph(best)
    }

    /// Induced subgraph on a sorted node-id set, id-remapped compactly.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> ContextGraph {
        let mut remap: HashMap<NodeId, NodeId> = HashMap::new();
        let mut out = ContextGraph::new();
        for (new_idx, &old) in keep.iter().enumerate() {
            let new_id = NodeId(new_idx as u32);
            remap.insert(old, new_id);
            let node = self.node(old);
            out.nodes.push(Node {
                id: new_id,
                ..node.clone()
            });
            out.adjacency.push(Vec::new());
            match node.kind {
                NodeKind::Predicate => {
                    let prov: Vec<EvidenceId> = node.contributions.keys().copied().collect();
                    out.predicate_lookup
                        .insert((node.label.clone(), node.occurrence_index, prov), new_id);
                    let c = out
                        .predicate_label_counts
                        .entry(node.label.clone())
                        .or_insert(0);
                    *c = (*c).max(node.occurrence_index + 1);
                }
                _ => {
                    out.shared_lookup
                        .insert((node.label.clone(), node.kind), new_id);
                }
            }
        }
        for edge in &self.edges {
            let (Some(&a), Some(&b)) = (remap.get(&edge.a), remap.get(&edge.b)) else {
                continue;
            };
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let idx = out.edges.len();
            out.edges.push(Edge {
                a: lo,
                b: hi,
                direction: edge
                    .direction
                    .map(|(f, t)| (remap[&f], remap[&t])),
                ..edge.clone()
            });
            out.adjacency[lo.0 as usize].push(idx);
            out.adjacency[hi.0 as usize].push(idx);
            out.edge_lookup.insert((lo, hi, edge.kind), idx);
        }
        out
    }

    /// Disjoint union: appends all nodes and edges of `other`, remapping its
    /// ids after this graph's. Returns the id offset applied to `other`.
    pub fn absorb(&mut self, other: &ContextGraph) -> Result<u32> {
        self.check_mutable()?;
        let offset = self.nodes.len() as u32;
        for node in &other.nodes {
            let new_id = NodeId(node.id.0 + offset);
            self.nodes.push(Node {
                id: new_id,
                ..node.clone()
            });
            self.adjacency.push(Vec::new());
        }
        for edge in &other.edges {
            let a = NodeId(edge.a.0 + offset);
            let b = NodeId(edge.b.0 + offset);
            let idx = self.edges.len();
            self.edges.push(Edge {
                a,
                b,
                direction: edge
                    .direction
                    .map(|(f, t)| (NodeId(f.0 + offset), NodeId(t.0 + offset))),
                ..edge.clone()
            });
            self.adjacency[a.0 as usize].push(idx);
            self.adjacency[b.0 as usize].push(idx);
            self.edge_lookup.insert((a, b, edge.kind), idx);
        }
        // Lookups of the absorbed side are not carried over: a merged graph
        // is only extended through alignment edges, never through upserts.
        Ok(offset)
    }

    pub fn stats(&self) -> GraphStats {
        let mut s = GraphStats::default();
        for n in &self.nodes {
            match n.kind {
                NodeKind::Entity => s.entity_nodes += 1,
                NodeKind::Predicate => s.predicate_nodes += 1,
                NodeKind::Type => s.type_nodes += 1,
                NodeKind::Literal => s.literal_nodes += 1,
            }
        }
        for e in &self.edges {
            match e.kind {
                EdgeKind::Triple => s.triple_edges += 1,
                EdgeKind::TypeEdge => s.type_edges += 1,
                EdgeKind::Alignment => s.alignment_edges += 1,
            }
        }
        s
    }
}

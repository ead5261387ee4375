//! Hierarchical partitioning of a set of clusterings by repeated features.
//!
//! Starting from a single leaf holding every row of the feature matrix, the
//! highest-scoring splittable leaf is repeatedly split by its most repeated
//! non-constant restricted column, until the tree has `max_leaves` leaves or
//! no leaf can be split. Each split is one *event*; the two children of a
//! split share that event's index.

use serde::{Deserialize, Serialize};

use crate::error::{HprefError, Result};
use crate::grouping::{group_columns, ColumnGroups};
use crate::matrix::{BitPattern, FeatureMatrix};
use crate::pairs::{Pair, SampleDescriptor};

pub type NodeId = usize;

/// A partition of the row indices `0..s`, one sorted class per entry.
pub type Partition = Vec<Vec<usize>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HprefConfig {
    pub max_leaves: usize,
}

impl HprefConfig {
    pub fn new(max_leaves: usize) -> Result<Self> {
        if max_leaves == 0 {
            return Err(HprefError::arg("max_leaves must be >= 1"));
        }
        Ok(HprefConfig { max_leaves })
    }
}

/// Decides how much a set of clusterings deserves to be split.
pub trait ScoringFunction {
    fn score(&self, groups: &ColumnGroups) -> f64;
}

/// `f(R) = c + m`: non-constant column count plus the multiplicity of the
/// most repeated non-constant column (0 when there is none).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CountPlusMultiplicity;

impl ScoringFunction for CountPlusMultiplicity {
    fn score(&self, groups: &ColumnGroups) -> f64 {
        score(groups)
    }
}

pub fn score(groups: &ColumnGroups) -> f64 {
    (groups.nonconstant_count() + groups.top_multiplicity()) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    /// Winning column pattern over the node's members (in member order).
    #[serde(with = "pattern_text")]
    pub pattern: BitPattern,
    pub multiplicity: usize,
    /// The sampled pairs whose restricted column equals `pattern`.
    pub witnesses: Vec<Pair>,
    /// `[zero class, one class]`.
    pub children: [NodeId; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HprefNode {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub members: Vec<usize>,
    pub score: f64,
    pub nonconstant: usize,
    pub top_multiplicity: usize,
    pub creation_event: usize,
    pub weight: Option<f64>,
    pub split: Option<Split>,
}

impl HprefNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitEvent {
    /// 1-based; the root is created by event 0.
    pub index: usize,
    pub node: NodeId,
    pub score: f64,
    pub multiplicity: usize,
    #[serde(with = "pattern_text")]
    pub pattern: BitPattern,
    pub children: [NodeId; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub n_rows: usize,
    pub max_leaves: usize,
    pub sample: SampleDescriptor,
    pub nodes: Vec<HprefNode>,
    pub events: Vec<SplitEvent>,
}

impl Dendrogram {
    pub fn root(&self) -> &HprefNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &HprefNode {
        &self.nodes[id]
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    /// Winning multiplicities in event order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.events.iter().map(|e| e.multiplicity).collect()
    }

    pub fn is_weighted(&self) -> bool {
        self.nodes.iter().all(|n| n.weight.is_some())
    }

    pub fn weight(&self, id: NodeId) -> Result<f64> {
        self.nodes[id]
            .weight
            .ok_or_else(|| HprefError::arg("dendrogram weights have not been assigned"))
    }

    /// Leaves in plotting order: depth first, zero class on the left.
    pub fn leaf_order(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            match &self.nodes[id].split {
                None => out.push(id),
                Some(s) => {
                    stack.push(s.children[1]);
                    stack.push(s.children[0]);
                }
            }
        }
        out
    }

    /// The nodes forming the classes after the first `events` splits, in
    /// plotting order.
    pub fn frontier(&self, events: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            match &self.nodes[id].split {
                Some(s) if self.nodes[s.children[0]].creation_event <= events => {
                    stack.push(s.children[1]);
                    stack.push(s.children[0]);
                }
                _ => out.push(id),
            }
        }
        out
    }

    /// Partition into `k` classes: the classes present after the first
    /// `k - 1` split events. Valid for `2 <= k <= leaf_count()`.
    pub fn cut(&self, k: usize) -> Result<Partition> {
        Ok(self
            .cut_nodes(k)?
            .into_iter()
            .map(|id| self.nodes[id].members.clone())
            .collect())
    }

    pub fn cut_nodes(&self, k: usize) -> Result<Vec<NodeId>> {
        let leaves = self.leaf_count();
        if k < 2 || k > leaves {
            return Err(HprefError::arg(format!(
                "cut level {k} outside 2..={leaves}"
            )));
        }
        Ok(self.frontier(k - 1))
    }

    /// Final leaf partition in plotting order.
    pub fn leaf_partition(&self) -> Partition {
        self.leaf_order()
            .into_iter()
            .map(|id| self.nodes[id].members.clone())
            .collect()
    }
}

struct LiveLeaf {
    id: NodeId,
    groups: ColumnGroups,
}

fn new_node(
    fm: &FeatureMatrix,
    scoring: &impl ScoringFunction,
    id: NodeId,
    parent: Option<NodeId>,
    members: Vec<usize>,
    creation_event: usize,
) -> Result<(HprefNode, LiveLeaf)> {
    let groups = group_columns(fm, &members)?;
    let node = HprefNode {
        id,
        parent,
        members,
        score: scoring.score(&groups),
        nonconstant: groups.nonconstant_count(),
        top_multiplicity: groups.top_multiplicity(),
        creation_event,
        weight: None,
        split: None,
    };
    Ok((node, LiveLeaf { id, groups }))
}

/// Runs the partitioning with the `c + m` score.
pub fn run_hpref(fm: &FeatureMatrix, cfg: &HprefConfig) -> Result<Dendrogram> {
    run_hpref_with(fm, cfg, &CountPlusMultiplicity)
}

/// Runs the partitioning with a caller-supplied scoring function. Weights
/// are left unassigned; see [`assign_weights`].
pub fn run_hpref_with(
    fm: &FeatureMatrix,
    cfg: &HprefConfig,
    scoring: &(impl ScoringFunction + Sync),
) -> Result<Dendrogram> {
    if fm.n_rows() == 0 {
        return Err(HprefError::arg("feature matrix has no rows"));
    }
    if cfg.max_leaves == 0 {
        return Err(HprefError::arg("max_leaves must be >= 1"));
    }
    let (root, live) = new_node(fm, scoring, 0, None, (0..fm.n_rows()).collect(), 0)?;
    let mut nodes = vec![root];
    let mut leaves = vec![live];
    let mut events = Vec::new();

    while leaves.len() < cfg.max_leaves {
        // highest score among splittable leaves; ties to the earliest node
        let chosen = leaves
            .iter()
            .enumerate()
            .filter(|(_, l)| l.groups.top().is_some())
            .fold(None::<(usize, f64, NodeId)>, |best, (pos, l)| {
                let s = nodes[l.id].score;
                match best {
                    Some((_, bs, bid)) if bs > s || (bs == s && bid < l.id) => best,
                    _ => Some((pos, s, l.id)),
                }
            });
        let Some((pos, _, _)) = chosen else { break };

        let LiveLeaf { id, groups } = leaves.remove(pos);
        let top = groups.top().expect("splittable leaf has a top column");
        let members = &nodes[id].members;
        let (mut zero, mut one) = (Vec::new(), Vec::new());
        for (k, &r) in members.iter().enumerate() {
            if top.pattern.get(k) {
                one.push(r);
            } else {
                zero.push(r);
            }
        }
        let event = events.len() + 1;
        let ids = [nodes.len(), nodes.len() + 1];
        let (left, right) = rayon::join(
            || new_node(fm, scoring, ids[0], Some(id), zero, event),
            || new_node(fm, scoring, ids[1], Some(id), one, event),
        );
        let ((left_node, left_live), (right_node, right_live)) = (left?, right?);

        let pairs = fm.sample().pairs();
        let split = Split {
            pattern: top.pattern.clone(),
            multiplicity: top.multiplicity(),
            witnesses: top.columns.iter().map(|&c| pairs[c]).collect(),
            children: ids,
        };
        events.push(SplitEvent {
            index: event,
            node: id,
            score: nodes[id].score,
            multiplicity: split.multiplicity,
            pattern: split.pattern.clone(),
            children: ids,
        });
        nodes[id].split = Some(split);
        nodes.push(left_node);
        nodes.push(right_node);
        leaves.push(left_live);
        leaves.push(right_live);
    }

    Ok(Dendrogram {
        n_rows: fm.n_rows(),
        max_leaves: cfg.max_leaves,
        sample: fm.sample().descriptor(),
        nodes,
        events,
    })
}

/// Sets `weight(n) = score(n) + sum of scores of nodes created by strictly
/// later events`. Siblings share their creation event, so neither counts the
/// other.
pub fn assign_weights(mut d: Dendrogram) -> Dendrogram {
    let n_events = d.events.len();
    let mut per_event = vec![0.0f64; n_events + 1];
    for n in &d.nodes {
        per_event[n.creation_event] += n.score;
    }
    // later[e] = total score of nodes created after event e
    let mut later = vec![0.0f64; n_events + 1];
    for e in (0..n_events).rev() {
        later[e] = later[e + 1] + per_event[e + 1];
    }
    for n in &mut d.nodes {
        n.weight = Some(n.score + later[n.creation_event]);
    }
    d
}

mod pattern_text {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::matrix::BitPattern;

    pub fn serialize<S: Serializer>(p: &BitPattern, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BitPattern, D::Error> {
        let text = String::deserialize(d)?;
        BitPattern::parse(&text).ok_or_else(|| D::Error::custom("pattern must be a 0/1 string"))
    }
}

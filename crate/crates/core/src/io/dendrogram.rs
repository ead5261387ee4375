//! Dendrogram documents: JSON (complete, replayable) and Newick (topology,
//! members and weights).

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{HprefError, Result};
use crate::hpref::{Dendrogram, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DendrogramFormat {
    Json,
    Newick,
}

impl std::str::FromStr for DendrogramFormat {
    type Err = HprefError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(DendrogramFormat::Json),
            "newick" | "nwk" => Ok(DendrogramFormat::Newick),
            other => Err(HprefError::arg(format!("unknown dendrogram format '{other}'"))),
        }
    }
}

pub fn export_dendrogram(d: &Dendrogram, format: DendrogramFormat) -> Result<String> {
    if !d.is_weighted() {
        return Err(HprefError::arg("dendrogram weights have not been assigned"));
    }
    match format {
        DendrogramFormat::Json => dendrogram_to_json(d),
        DendrogramFormat::Newick => Ok(to_newick(d)),
    }
}

pub fn dendrogram_to_json(d: &Dendrogram) -> Result<String> {
    let mut text = serde_json::to_string_pretty(d)?;
    text.push('\n');
    Ok(text)
}

/// Parses and structurally validates a JSON dendrogram.
pub fn parse_dendrogram(text: &str) -> Result<Dendrogram> {
    let d: Dendrogram = serde_json::from_str(text).map_err(|e| HprefError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    validate(&d)?;
    Ok(d)
}

pub fn write_dendrogram(d: &Dendrogram, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, export_dendrogram(d, DendrogramFormat::Json)?)?;
    Ok(())
}

pub fn read_dendrogram(path: impl AsRef<Path>) -> Result<Dendrogram> {
    parse_dendrogram(&std::fs::read_to_string(path)?)
}

fn invalid(msg: impl Into<String>) -> HprefError {
    HprefError::arg(format!("invalid dendrogram: {}", msg.into()))
}

/// Checks ids, the single root, that siblings partition their parent, and
/// weight monotonicity when weights are present.
pub fn validate(d: &Dendrogram) -> Result<()> {
    if d.nodes.is_empty() {
        return Err(invalid("no nodes"));
    }
    if d.nodes.iter().filter(|n| n.parent.is_none()).count() != 1 || d.nodes[0].parent.is_some() {
        return Err(invalid("node 0 must be the only root"));
    }
    let mut root_members = d.nodes[0].members.clone();
    root_members.sort_unstable();
    if root_members != (0..d.n_rows).collect::<Vec<_>>() {
        return Err(invalid("root must hold every row"));
    }
    for (i, n) in d.nodes.iter().enumerate() {
        if n.id != i {
            return Err(invalid(format!("node at position {i} has id {}", n.id)));
        }
        let Some(split) = &n.split else { continue };
        let [a, b] = split.children;
        if a >= d.nodes.len() || b >= d.nodes.len() {
            return Err(invalid(format!("node {i} has a missing child")));
        }
        if d.nodes[a].parent != Some(i) || d.nodes[b].parent != Some(i) {
            return Err(invalid(format!("children of node {i} disagree on their parent")));
        }
        let mut joined: Vec<usize> = d.nodes[a]
            .members
            .iter()
            .chain(&d.nodes[b].members)
            .copied()
            .collect();
        joined.sort_unstable();
        let mut parent = n.members.clone();
        parent.sort_unstable();
        if d.nodes[a].members.is_empty() || d.nodes[b].members.is_empty() || joined != parent {
            return Err(invalid(format!("children of node {i} do not partition it")));
        }
        if let (Some(w), Some(wa), Some(wb)) = (n.weight, d.nodes[a].weight, d.nodes[b].weight) {
            if wa > w || wb > w {
                return Err(invalid(format!("weights increase below node {i}")));
            }
        }
    }
    Ok(())
}

/// Newick text: leaves are labelled by their member indices joined with
/// `|`, every node carries `[weight=w]`, and branch lengths are weight
/// differences. Example: `(2[weight=0]:14,(0[weight=0]:4,1[weight=0]:4)[weight=4]:10)[weight=14];`
pub fn to_newick(d: &Dendrogram) -> String {
    let mut out = String::new();
    write_node(d, 0, &mut out);
    out.push(';');
    out
}

fn weight_of(d: &Dendrogram, id: NodeId) -> f64 {
    d.nodes[id].weight.unwrap_or(d.nodes[id].score)
}

fn write_node(d: &Dendrogram, id: NodeId, out: &mut String) {
    let node = &d.nodes[id];
    let w = weight_of(d, id);
    match &node.split {
        Some(split) => {
            out.push('(');
            for (k, &c) in split.children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_node(d, c, out);
            }
            out.push(')');
        }
        None => {
            let labels: Vec<String> = node.members.iter().map(usize::to_string).collect();
            out.push_str(&labels.join("|"));
        }
    }
    let _ = write!(out, "[weight={w}]");
    if let Some(p) = node.parent {
        let _ = write!(out, ":{}", weight_of(d, p) - w);
    }
}

/// A tree read back from Newick text.
#[derive(Debug, Clone, PartialEq)]
pub struct NewickNode {
    pub members: Vec<usize>,
    pub weight: f64,
    pub children: Vec<NewickNode>,
}

impl NewickNode {
    /// Members of every leaf below this node, left to right.
    pub fn all_members(&self) -> Vec<usize> {
        if self.children.is_empty() {
            return self.members.clone();
        }
        self.children.iter().flat_map(NewickNode::all_members).collect()
    }
}

pub fn parse_newick(text: &str) -> Result<NewickNode> {
    let mut p = NewickParser {
        s: text.trim().as_bytes(),
        pos: 0,
    };
    let node = p.node()?;
    p.expect(b';')?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(node)
}

struct NewickParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl NewickParser<'_> {
    fn err(&self, msg: &str) -> HprefError {
        HprefError::parse(1, format!("newick column {}: {msg}", self.pos + 1))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn node(&mut self) -> Result<NewickNode> {
        let mut children = Vec::new();
        let mut members = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.node()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        } else {
            let label = self.take_while(|c| c.is_ascii_digit() || c == b'|').to_owned();
            for part in label.split('|') {
                members.push(part.parse().map_err(|_| self.err("bad leaf label"))?);
            }
        }
        self.expect(b'[')?;
        let note = self.take_while(|c| c != b']').to_owned();
        self.expect(b']')?;
        let weight = note
            .strip_prefix("weight=")
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| self.err("expected [weight=...]"))?;
        if self.peek() == Some(b':') {
            self.pos += 1;
            self.take_while(|c| c != b',' && c != b')' && c != b';');
        }
        Ok(NewickNode {
            members,
            weight,
            children,
        })
    }
}

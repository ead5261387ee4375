//! Naive reference implementations used to check the library: dense
//! matrices, quadratic column scans, recomputation at every step.

#![allow(dead_code)]

use rand::Rng;

/// `labels[r][p]`, `-1` for noise.
pub type Codes = Vec<Vec<i64>>;

pub fn bit(labels: &[i64], i: usize, j: usize) -> u8 {
    u8::from(!(labels[i] == labels[j] && labels[i] != -1))
}

/// Dense `s x (N(N+1)/2)` matrix over lexicographic pairs `i <= j`.
pub fn dense_matrix(codes: &Codes) -> Vec<Vec<u8>> {
    let n = codes[0].len();
    codes
        .iter()
        .map(|row| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in i..n {
                    out.push(bit(row, i, j));
                }
            }
            out
        })
        .collect()
}

pub struct NaiveGroups {
    pub nonconstant: usize,
    /// (pattern, multiplicity) of the most repeated non-constant column,
    /// lowest first column on ties.
    pub top: Option<(Vec<u8>, usize)>,
}

pub fn naive_groups(m: &[Vec<u8>], rows: &[usize]) -> NaiveGroups {
    let cols = m[0].len();
    let column = |c: usize| rows.iter().map(|&r| m[r][c]).collect::<Vec<u8>>();
    let mut nonconstant = 0;
    let mut top: Option<(Vec<u8>, usize)> = None;
    for c in 0..cols {
        let p = column(c);
        if !(p.contains(&0) && p.contains(&1)) {
            continue;
        }
        nonconstant += 1;
        let mult = (0..cols).filter(|&d| column(d) == p).count();
        if top.as_ref().is_none_or(|(_, best)| mult > *best) {
            top = Some((p, mult));
        }
    }
    NaiveGroups { nonconstant, top }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveNode {
    pub members: Vec<usize>,
    pub parent: Option<usize>,
    pub score: f64,
    pub creation_event: usize,
    pub children: Option<[usize; 2]>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveTree {
    pub nodes: Vec<NaiveNode>,
    /// (split node, score, multiplicity) per event.
    pub events: Vec<(usize, f64, usize)>,
}

pub fn naive_hpref(codes: &Codes, max_leaves: usize) -> NaiveTree {
    let m = dense_matrix(codes);
    let score_of = |rows: &[usize]| {
        let g = naive_groups(&m, rows);
        (g.nonconstant + g.top.as_ref().map_or(0, |t| t.1)) as f64
    };
    let all: Vec<usize> = (0..codes.len()).collect();
    let mut nodes = vec![NaiveNode {
        score: score_of(&all),
        members: all,
        parent: None,
        creation_event: 0,
        children: None,
        weight: 0.0,
    }];
    let mut events = Vec::new();
    loop {
        let leaves: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].children.is_none()).collect();
        if leaves.len() >= max_leaves {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for &l in &leaves {
            // recompute from scratch on the restriction
            let g = naive_groups(&m, &nodes[l].members);
            if g.top.is_none() {
                continue;
            }
            let s = score_of(&nodes[l].members);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((l, s));
            }
        }
        let Some((leaf, s)) = best else { break };
        let (pattern, mult) = naive_groups(&m, &nodes[leaf].members).top.unwrap();
        let members = nodes[leaf].members.clone();
        let zero: Vec<usize> = members.iter().zip(&pattern).filter(|(_, b)| **b == 0).map(|(r, _)| *r).collect();
        let one: Vec<usize> = members.iter().zip(&pattern).filter(|(_, b)| **b == 1).map(|(r, _)| *r).collect();
        let event = events.len() + 1;
        let ids = [nodes.len(), nodes.len() + 1];
        for part in [zero, one] {
            nodes.push(NaiveNode {
                score: score_of(&part),
                members: part,
                parent: Some(leaf),
                creation_event: event,
                children: None,
                weight: 0.0,
            });
        }
        nodes[leaf].children = Some(ids);
        events.push((leaf, s, mult));
    }
    let snapshot = nodes.clone();
    for n in &mut nodes {
        n.weight = n.score
            + snapshot
                .iter()
                .filter(|o| o.creation_event > n.creation_event)
                .map(|o| o.score)
                .sum::<f64>();
    }
    NaiveTree { nodes, events }
}

/// LCA-weight distance by walking parent links.
pub fn naive_metric(t: &NaiveTree, s: usize) -> Vec<Vec<f64>> {
    let leaf_of = |x: usize| {
        (0..t.nodes.len())
            .find(|&i| t.nodes[i].children.is_none() && t.nodes[i].members.contains(&x))
            .unwrap()
    };
    let ancestors = |mut n: usize| {
        let mut out = vec![n];
        while let Some(p) = t.nodes[n].parent {
            out.push(p);
            n = p;
        }
        out
    };
    let mut d = vec![vec![0.0; s]; s];
    for x in 0..s {
        for y in 0..s {
            if x == y {
                continue;
            }
            let ax = ancestors(leaf_of(x));
            let ay = ancestors(leaf_of(y));
            let lca = *ax.iter().find(|a| ay.contains(a)).unwrap();
            d[x][y] = t.nodes[lca].weight;
        }
    }
    d
}

/// Pair-counting adjusted Rand index with noise points as singletons.
pub fn naive_ari(a: &[i64], b: &[i64]) -> f64 {
    let n = a.len();
    let same = |l: &[i64], i: usize, j: usize| l[i] == l[j] && l[i] != -1;
    let (mut both, mut only_a, mut only_b, mut total) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            total += 1.0;
            let (x, y) = (same(a, i, j), same(b, i, j));
            if x && y {
                both += 1.0;
            }
            if x {
                only_a += 1.0;
            }
            if y {
                only_b += 1.0;
            }
        }
    }
    let expected = only_a * only_b / total;
    let max = (only_a + only_b) / 2.0;
    if max == expected {
        return if a_equiv(a, b) { 1.0 } else { 0.0 };
    }
    (both - expected) / (max - expected)
}

fn a_equiv(a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).filter(|&j| j != i).all(|j| (a[i] == a[j] && a[i] != -1) == (b[i] == b[j] && b[i] != -1)))
}

pub fn random_codes(rng: &mut impl Rng, s: usize, n: usize, max_label: i64) -> Codes {
    (0..s)
        .map(|_| (0..n).map(|_| rng.random_range(-1..=max_label)).collect())
        .collect()
}

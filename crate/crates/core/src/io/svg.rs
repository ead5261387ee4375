//! Deterministic SVG rendering of a weighted dendrogram.
//!
//! Leaves sit on the baseline in plotting order; every node is drawn at
//! the height of its weight. With a coloring, each class of the cut and the
//! subtree below it share one palette color; links above the cut are grey.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{HprefError, Result};
use crate::hpref::{Dendrogram, NodeId, Partition};

const PALETTE: [&str; 10] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];
const ABOVE_CUT: &str = "#444444";
const LEAF_STEP: f64 = 60.0;
const MARGIN: f64 = 40.0;
const PLOT_HEIGHT: f64 = 300.0;

fn class_nodes(d: &Dendrogram, coloring: &Partition) -> Result<Vec<NodeId>> {
    let wanted: BTreeSet<Vec<usize>> = coloring
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    let k = coloring.len();
    if k >= 2 && k <= d.leaf_count() && wanted.len() == k {
        let nodes = d.cut_nodes(k)?;
        let got: BTreeSet<Vec<usize>> = nodes.iter().map(|&id| d.node(id).members.clone()).collect();
        if got == wanted {
            return Ok(nodes);
        }
    }
    Err(HprefError::arg("coloring is not a cut of the dendrogram"))
}

/// Renders `d`; `coloring`, when given, must equal one of its cuts.
pub fn render_dendrogram_svg(d: &Dendrogram, coloring: Option<&Partition>) -> Result<String> {
    let weights = d
        .nodes
        .iter()
        .map(|n| d.weight(n.id))
        .collect::<Result<Vec<f64>>>()?;
    let mut color = vec![ABOVE_CUT; d.nodes.len()];
    if let Some(partition) = coloring {
        for (class, root) in class_nodes(d, partition)?.into_iter().enumerate() {
            let mut stack = vec![root];
            while let Some(id) = stack.pop() {
                color[id] = PALETTE[class % PALETTE.len()];
                if let Some(s) = &d.nodes[id].split {
                    stack.extend(s.children);
                }
            }
        }
    }

    let leaves = d.leaf_order();
    let mut x = vec![0.0; d.nodes.len()];
    for (pos, &id) in leaves.iter().enumerate() {
        x[id] = MARGIN + LEAF_STEP * (pos as f64 + 0.5);
    }
    // children always have larger ids than their parent
    for id in (0..d.nodes.len()).rev() {
        if let Some(s) = &d.nodes[id].split {
            x[id] = (x[s.children[0]] + x[s.children[1]]) / 2.0;
        }
    }
    let w_max = weights.iter().copied().fold(0.0, f64::max);
    let baseline = MARGIN + PLOT_HEIGHT;
    let y = |w: f64| {
        if w_max > 0.0 {
            baseline - PLOT_HEIGHT * w / w_max
        } else {
            baseline
        }
    };
    let width = 2.0 * MARGIN + LEAF_STEP * leaves.len() as f64;
    let height = baseline + MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{m:.2}" y1="{t:.2}" x2="{m:.2}" y2="{b:.2}" stroke="black"/>"#,
        m = MARGIN / 2.0,
        t = MARGIN,
        b = baseline
    );
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
        2.0,
        MARGIN - 6.0,
        w_max
    );
    for n in &d.nodes {
        if let Some(s) = &n.split {
            let py = y(weights[n.id]);
            let [a, b] = s.children;
            let _ = writeln!(
                out,
                r#"<line class="join" data-node="{}" data-weight="{}" x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="{}"/>"#,
                n.id, weights[n.id], x[a], x[b], color[n.id]
            );
            for c in [a, b] {
                let _ = writeln!(
                    out,
                    r#"<line class="link" x1="{xc:.2}" y1="{:.2}" x2="{xc:.2}" y2="{py:.2}" stroke="{}"/>"#,
                    y(weights[c]),
                    color[c],
                    xc = x[c]
                );
            }
        }
    }
    for &id in &leaves {
        let n = &d.nodes[id];
        let members: Vec<String> = n.members.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            r#"<line class="stem" x1="{xl:.2}" y1="{b:.2}" x2="{xl:.2}" y2="{:.2}" stroke="{c}"/>"#,
            y(weights[id]),
            xl = x[id],
            b = baseline,
            c = color[id]
        );
        let _ = writeln!(
            out,
            r#"<circle class="leaf" data-node="{id}" data-members="{}" cx="{:.2}" cy="{baseline:.2}" r="4" fill="{}"/>"#,
            members.join(" "),
            x[id],
            color[id]
        );
        let _ = writeln!(
            out,
            r#"<text class="leaf-size" x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
            x[id],
            baseline + 16.0,
            n.members.len()
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

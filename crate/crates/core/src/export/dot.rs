//! Graphviz DOT output: fill colour by community, width by degree.

use std::fmt::Write as _;

use super::NodeAnnotations;
use crate::error::{Error, Result};
use crate::graph::{LayerGraph, MultiplexNetwork, PersonId};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];
const UNASSIGNED: &str = "#d3d3d3";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn community_color(community: Option<usize>) -> &'static str {
    community.map_or(UNASSIGNED, |c| PALETTE[c % PALETTE.len()])
}

/// Node width in inches for a given degree.
pub fn node_width(degree: usize) -> f64 {
    0.2 + 0.05 * degree as f64
}

pub fn to_dot(net: &MultiplexNetwork, g: &LayerGraph, ann: &NodeAnnotations) -> Result<String> {
    ann.check(g.nodes().iter())?;
    let title = g.kind().map_or("layer", |k| k.as_str());
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(title));
    out.push_str("  node [shape=circle, style=filled, fixedsize=true];\n");
    for (i, id) in g.nodes().iter().enumerate() {
        let community = ann.community.get(id).copied();
        let mut attrs = format!(
            "label={}, width={:.2}, fillcolor=\"{}\"",
            quote(net.name(id).unwrap_or("")),
            node_width(g.degree_of(i)),
            community_color(community)
        );
        if let Some(c) = community {
            let _ = write!(attrs, ", community={c}");
        }
        if let Some((x, y)) = ann.positions.get(id) {
            let _ = write!(attrs, ", pos=\"{x:?},{y:?}\"");
        }
        let _ = writeln!(out, "  {} [{attrs}];", quote(id.as_str()));
    }
    for (u, v) in g.edge_ids() {
        let _ = writeln!(out, "  {} -- {};", quote(u.as_str()), quote(v.as_str()));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Reads the quoted identifier at the start of `s`, returning it and the rest.
fn take_quoted(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start().strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = s.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &s[i + 1..])),
            _ => out.push(c),
        }
    }
    None
}

/// Reads the node and edge statements of a document written by [`to_dot`].
pub fn read_dot(text: &str) -> Result<LayerGraph> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if !line.starts_with('"') {
            continue;
        }
        let err = || Error::Parse(format!("line {}: {line}", line_no + 1));
        let (first, rest) = take_quoted(line).ok_or_else(err)?;
        let first = PersonId::new(first)?;
        if let Some(rest) = rest.trim_start().strip_prefix("--") {
            let (second, _) = take_quoted(rest).ok_or_else(err)?;
            edges.push((first, PersonId::new(second)?));
        } else {
            nodes.push(first);
        }
    }
    LayerGraph::from_edges(nodes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind;

    fn triangle() -> MultiplexNetwork {
        MultiplexNetwork::build(
            ["a", "b", "c"].map(|s| (PersonId::from(s), format!("N \"{s}\""))),
            [("a", "b"), ("b", "c"), ("a", "c")]
                .map(|(u, v)| (u.into(), v.into(), EdgeKind::Family)),
        )
        .unwrap()
    }

    #[test]
    fn triangle_statements() {
        let net = triangle();
        let g = net.layer(EdgeKind::Family);
        let doc = to_dot(&net, &g, &NodeAnnotations::default()).unwrap();
        assert_eq!(doc.lines().filter(|l| l.contains(" [label=")).count(), 3);
        assert_eq!(doc.matches(" -- ").count(), 3);
        assert_eq!(read_dot(&doc).unwrap(), g.with_kind(None));
    }

    #[test]
    fn colours_follow_communities() {
        let net = triangle();
        let g = net.layer(EdgeKind::Family);
        let mut ann = NodeAnnotations::default();
        ann.community.insert("a".into(), 1);
        let doc = to_dot(&net, &g, &ann).unwrap();
        assert!(doc.contains(PALETTE[1]));
        assert!(doc.contains(UNASSIGNED));
        ann.community.insert("zz".into(), 0);
        assert!(to_dot(&net, &g, &ann).is_err());
    }
}

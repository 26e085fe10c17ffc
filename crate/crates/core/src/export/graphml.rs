//! GraphML writer and reader.
//!
//! Node attributes: `name`, `community`, `dc`, `bc`, `cc`, `ec`, `x`, `y`.
//! Edge attribute: `kind`. All keys are declared in every document; data
//! elements appear only for annotations that are present. Reals are written
//! in shortest round-trip form, so read-then-write reproduces a document
//! byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use quick_xml::events::Event;
use quick_xml::Reader;

use super::NodeAnnotations;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, LayerGraph, MultiplexNetwork, PersonId};

const KEYS: [(&str, &str, &str); 9] = [
    ("name", "node", "string"),
    ("community", "node", "int"),
    ("dc", "node", "double"),
    ("bc", "node", "double"),
    ("cc", "node", "double"),
    ("ec", "node", "double"),
    ("x", "node", "double"),
    ("y", "node", "double"),
    ("kind", "edge", "string"),
];

fn escape(s: &str) -> String {
    quick_xml::escape::escape(s).into_owned()
}

fn write_document(
    nodes: &[(&PersonId, &str)],
    edges: &[(&PersonId, &PersonId, Option<EdgeKind>)],
    ann: &NodeAnnotations,
) -> Result<String> {
    ann.check(nodes.iter().map(|(id, _)| *id))?;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, target, ty) in KEYS {
        let _ = writeln!(
            out,
            "  <key id=\"{id}\" for=\"{target}\" attr.name=\"{id}\" attr.type=\"{ty}\"/>"
        );
    }
    out.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
    for &(id, name) in nodes {
        let _ = writeln!(out, "    <node id=\"{}\">", escape(id.as_str()));
        let _ = writeln!(out, "      <data key=\"name\">{}</data>", escape(name));
        if let Some(c) = ann.community.get(id) {
            let _ = writeln!(out, "      <data key=\"community\">{c}</data>");
        }
        if let Some(scores) = ann.scores.get(id) {
            for (key, value) in ["dc", "bc", "cc", "ec"].iter().zip(scores) {
                let _ = writeln!(out, "      <data key=\"{key}\">{value:?}</data>");
            }
        }
        if let Some((x, y)) = ann.positions.get(id) {
            let _ = writeln!(out, "      <data key=\"x\">{x:?}</data>");
            let _ = writeln!(out, "      <data key=\"y\">{y:?}</data>");
        }
        out.push_str("    </node>\n");
    }
    for &(u, v, kind) in edges {
        let _ = write!(
            out,
            "    <edge source=\"{}\" target=\"{}\"",
            escape(u.as_str()),
            escape(v.as_str())
        );
        match kind {
            Some(kind) => {
                let _ = writeln!(
                    out,
                    ">\n      <data key=\"kind\">{kind}</data>\n    </edge>"
                );
            }
            None => out.push_str("/>\n"),
        }
    }
    out.push_str("  </graph>\n</graphml>\n");
    Ok(out)
}

/// Every node and every typed edge of the network.
pub fn network_to_graphml(net: &MultiplexNetwork, ann: &NodeAnnotations) -> Result<String> {
    let nodes: Vec<_> = net.nodes().collect();
    let edges: Vec<_> = net.typed_edges().map(|(u, v, k)| (u, v, Some(k))).collect();
    write_document(&nodes, &edges, ann)
}

/// One layer graph (or a subgraph of it); names are looked up in `net`.
pub fn layer_to_graphml(
    net: &MultiplexNetwork,
    g: &LayerGraph,
    ann: &NodeAnnotations,
) -> Result<String> {
    let nodes: Vec<_> = g
        .nodes()
        .iter()
        .map(|id| (id, net.name(id).unwrap_or("")))
        .collect();
    let edges: Vec<_> = g.edge_ids().map(|(u, v)| (u, v, g.kind())).collect();
    write_document(&nodes, &edges, ann)
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn attr(e: &quick_xml::events::BytesStart<'_>, key: &str) -> Result<Option<String>> {
    for a in e.attributes() {
        let a = a.map_err(|err| parse_err(err.to_string()))?;
        if a.key.as_ref() == key.as_bytes() {
            let value = a
                .unescape_value()
                .map_err(|err| parse_err(err.to_string()))?;
            return Ok(Some(value.into_owned()));
        }
    }
    Ok(None)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| parse_err(format!("not a number: {s:?}")))
}

/// Reads a document produced by this module. Edges must carry a `kind`.
pub fn read_graphml(text: &str) -> Result<(MultiplexNetwork, NodeAnnotations)> {
    // No text trimming: names may carry significant whitespace.
    let mut reader = Reader::from_str(text);

    let mut nodes: Vec<(PersonId, String)> = Vec::new();
    let mut edges = Vec::new();
    let mut data: BTreeMap<(PersonId, String), String> = BTreeMap::new();
    let mut current_node: Option<PersonId> = None;
    let mut current_edge: Option<(PersonId, PersonId, Option<EdgeKind>)> = None;
    let mut current_key: Option<String> = None;

    loop {
        let event = reader
            .read_event()
            .map_err(|e| parse_err(format!("at byte {}: {e}", reader.buffer_position())))?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => {
                let is_empty = matches!(event, Event::Empty(_));
                match e.name().as_ref() {
                    b"node" => {
                        let id = attr(e, "id")?.ok_or_else(|| parse_err("node without id"))?;
                        let id = PersonId::new(id)?;
                        nodes.push((id.clone(), String::new()));
                        current_node = (!is_empty).then_some(id);
                    }
                    b"edge" => {
                        let s =
                            attr(e, "source")?.ok_or_else(|| parse_err("edge without source"))?;
                        let t =
                            attr(e, "target")?.ok_or_else(|| parse_err("edge without target"))?;
                        let edge = (PersonId::new(s)?, PersonId::new(t)?, None);
                        if is_empty {
                            edges.push(edge);
                        } else {
                            current_edge = Some(edge);
                        }
                    }
                    b"data" => {
                        current_key = attr(e, "key")?;
                    }
                    _ => {}
                }
            }
            Event::Text(t) => {
                let value = t
                    .unescape()
                    .map_err(|e| parse_err(e.to_string()))?
                    .into_owned();
                if let Some(key) = current_key.as_deref() {
                    if let Some((_, _, kind)) = current_edge.as_mut() {
                        if key == "kind" {
                            *kind = Some(value.parse()?);
                        }
                    } else if let Some(node) = &current_node {
                        data.insert((node.clone(), key.to_string()), value);
                    }
                }
            }
            Event::End(e) => match e.name().as_ref() {
                b"node" => current_node = None,
                b"edge" => {
                    if let Some(edge) = current_edge.take() {
                        edges.push(edge);
                    }
                }
                b"data" => current_key = None,
                _ => {}
            },
            Event::Eof => break,
            _ => {}
        }
    }

    let mut ann = NodeAnnotations::default();
    for (id, name) in &mut nodes {
        if let Some(v) = data.get(&(id.clone(), "name".into())) {
            *name = v.clone();
        }
        if let Some(v) = data.get(&(id.clone(), "community".into())) {
            let c = v
                .parse()
                .map_err(|_| parse_err(format!("bad community {v:?}")))?;
            ann.community.insert(id.clone(), c);
        }
        let score = |k: &str| data.get(&(id.clone(), k.to_string())).map(|v| parse_f64(v));
        if let (Some(dc), Some(bc), Some(cc), Some(ec)) =
            (score("dc"), score("bc"), score("cc"), score("ec"))
        {
            ann.scores.insert(id.clone(), [dc?, bc?, cc?, ec?]);
        }
        if let (Some(x), Some(y)) = (score("x"), score("y")) {
            ann.positions.insert(id.clone(), (x?, y?));
        }
    }
    let typed = edges
        .into_iter()
        .map(|(u, v, kind)| {
            kind.map(|k| (u.clone(), v.clone(), k))
                .ok_or_else(|| parse_err(format!("edge {u}--{v} has no kind")))
        })
        .collect::<Result<Vec<_>>>()?;
    let net = MultiplexNetwork::build(nodes, typed)?;
    Ok((net, ann))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::Partition;

    fn net() -> MultiplexNetwork {
        MultiplexNetwork::build(
            [
                ("a".into(), "Ann & Co".to_string()),
                ("b".into(), "B <b>".to_string()),
            ],
            [("a".into(), "b".into(), EdgeKind::Work)],
        )
        .unwrap()
    }

    #[test]
    fn writes_nodes_and_edges() {
        let doc = network_to_graphml(&net(), &NodeAnnotations::default()).unwrap();
        assert_eq!(doc.matches("<node ").count(), 2);
        assert_eq!(doc.matches("<edge ").count(), 1);
        assert!(doc.contains("Ann &amp; Co"));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let g = net().layer(EdgeKind::Work);
        let partition = Partition::from_blocks(vec![vec!["a".into()], vec!["b".into()]]).unwrap();
        let mut ann = NodeAnnotations::default().with_partition(&partition);
        ann.positions.insert("a".into(), (0.1 + 0.2, -1e-300));
        ann.positions.insert("b".into(), (3.0, 1.0 / 3.0));
        let doc = layer_to_graphml(&net(), &g, &ann).unwrap();
        let (back, back_ann) = read_graphml(&doc).unwrap();
        assert_eq!(back, net());
        assert_eq!(back_ann, ann);
        assert_eq!(
            layer_to_graphml(&back, &back.layer(EdgeKind::Work), &back_ann).unwrap(),
            doc
        );
        assert!(doc.contains("<data key=\"community\">1</data>"));
    }

    #[test]
    fn rejects_foreign_annotations() {
        let mut ann = NodeAnnotations::default();
        ann.community.insert("zz".into(), 0);
        assert!(matches!(
            network_to_graphml(&net(), &ann),
            Err(Error::AnnotationMismatch(_))
        ));
    }

    #[test]
    fn rejects_untyped_edges() {
        let doc = r#"<graphml><graph><node id="a"/><node id="b"/><edge source="a" target="b"/></graph></graphml>"#;
        assert!(matches!(read_graphml(doc), Err(Error::Parse(_))));
    }
}

//! Profile record parsing and resolution into a [`MultiplexNetwork`].
//!
//! The primary input is line-delimited JSON, one profile per line:
//!
//! ```text
//! {"id":"au","name":"A. U.","relations":[{"target":"id","kind":"alliance"}]}
//! ```
//!
//! `url` is optional; unknown fields are rejected. A CSV edge list with the
//! header `source,target,kind` is accepted as an alternative, in which case
//! every node is inferred from the edges and named by its id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, MultiplexNetwork, PersonId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub target: PersonId,
    pub kind: EdgeKind,
}

/// One scraped profile with its outgoing relation links.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRecord {
    pub id: PersonId,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    pub relations: Vec<Relation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    target: String,
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    name: String,
    #[serde(default)]
    url: Option<String>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

fn malformed(line: usize, reason: impl Into<String>) -> Error {
    Error::MalformedRecord {
        line,
        reason: reason.into(),
    }
}

fn parse_line(line_no: usize, text: &str) -> Result<ProfileRecord> {
    let raw: RawRecord =
        serde_json::from_str(text).map_err(|e| malformed(line_no, e.to_string()))?;
    let id = PersonId::new(raw.id).map_err(|_| malformed(line_no, "empty id"))?;
    let mut relations = Vec::with_capacity(raw.relations.len());
    for rel in raw.relations {
        let kind = EdgeKind::from_str(&rel.kind)?;
        let target =
            PersonId::new(rel.target).map_err(|_| malformed(line_no, "empty relation target"))?;
        if target == id {
            return Err(malformed(
                line_no,
                format!("{id} lists itself as a relation"),
            ));
        }
        relations.push(Relation { target, kind });
    }
    Ok(ProfileRecord {
        id,
        name: raw.name,
        url: raw.url,
        relations,
    })
}

/// Parses line-delimited profile records. Blank lines are skipped; line
/// numbers in errors are 1-based physical lines.
pub fn parse_profiles<R: BufRead>(input: R) -> Result<Vec<ProfileRecord>> {
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| malformed(line_no, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_line(line_no, &line)?;
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateId(record.id));
        }
        records.push(record);
    }
    Ok(records)
}

/// Writes records in the line format accepted by [`parse_profiles`].
pub fn serialize_profiles(records: &[ProfileRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("records always serialize"));
        out.push('\n');
    }
    out
}

/// Parses a `source,target,kind` edge list into one record per inferred node.
pub fn parse_edge_csv<R: std::io::Read>(input: R) -> Result<Vec<ProfileRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["source", "target", "kind"] {
        return Err(malformed(1, "expected header source,target,kind"));
    }
    let mut relations: BTreeMap<PersonId, Vec<Relation>> = BTreeMap::new();
    for (idx, row) in reader.records().enumerate() {
        let line_no = idx + 2;
        let row = row?;
        if row.len() != 3 {
            return Err(malformed(line_no, "expected 3 fields"));
        }
        let source = PersonId::new(&row[0]).map_err(|_| malformed(line_no, "empty source"))?;
        let target = PersonId::new(&row[1]).map_err(|_| malformed(line_no, "empty target"))?;
        let kind = EdgeKind::from_str(&row[2])?;
        if source == target {
            return Err(malformed(line_no, format!("self-loop on {source}")));
        }
        relations.entry(target.clone()).or_default();
        relations
            .entry(source)
            .or_default()
            .push(Relation { target, kind });
    }
    Ok(relations
        .into_iter()
        .map(|(id, relations)| ProfileRecord {
            name: id.to_string(),
            id,
            url: None,
            relations,
        })
        .collect())
}

/// Reads a record file, choosing the CSV edge-list parser for `.csv` paths.
pub fn read_records(path: &Path) -> Result<Vec<ProfileRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    if path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"))
    {
        parse_edge_csv(file)
    } else {
        parse_profiles(std::io::BufReader::new(file))
    }
}

/// What to do with relations whose target has no record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DanglingPolicy {
    Reject,
    Drop,
    #[default]
    #[serde(alias = "stub")]
    MaterializeStub,
}

impl FromStr for DanglingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reject" => Ok(DanglingPolicy::Reject),
            "drop" => Ok(DanglingPolicy::Drop),
            "materialize-stub" | "stub" => Ok(DanglingPolicy::MaterializeStub),
            other => Err(Error::InvalidParameter(format!(
                "unknown dangling policy {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DanglingReference {
    pub from: PersonId,
    pub target: PersonId,
    pub kind: EdgeKind,
}

/// Per-layer tallies of a resolved network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngestSummary {
    pub node_count: usize,
    pub edges_per_kind: BTreeMap<EdgeKind, usize>,
    pub giant_component_per_kind: BTreeMap<EdgeKind, usize>,
    pub dangling_references: Vec<DanglingReference>,
}

impl IngestSummary {
    pub fn total_edges(&self) -> usize {
        self.edges_per_kind.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary always serializes") + "\n"
    }
}

impl fmt::Display for IngestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "nodes: {}", self.node_count)?;
        writeln!(out, "{:<12} {:>8} {:>8}", "kind", "edges", "giant")?;
        for kind in EdgeKind::ALL {
            writeln!(
                out,
                "{:<12} {:>8} {:>8}",
                kind.as_str(),
                self.edges_per_kind.get(&kind).copied().unwrap_or(0),
                self.giant_component_per_kind
                    .get(&kind)
                    .copied()
                    .unwrap_or(0)
            )?;
        }
        writeln!(out, "{:<12} {:>8}", "total", self.total_edges())?;
        if !self.dangling_references.is_empty() {
            writeln!(
                out,
                "dangling references: {}",
                self.dangling_references.len()
            )?;
            for d in &self.dangling_references {
                writeln!(out, "  {} -> {} ({})", d.from, d.target, d.kind)?;
            }
        }
        f.write_str(&out)
    }
}

/// Per-kind edge counts and largest-component sizes of `net`.
///
/// Layers keep isolates, so a layer without edges reports a largest
/// component of one node whenever the network is non-empty.
pub fn summarize(net: &MultiplexNetwork) -> IngestSummary {
    let mut edges_per_kind = BTreeMap::new();
    let mut giant_component_per_kind = BTreeMap::new();
    for kind in EdgeKind::ALL {
        edges_per_kind.insert(kind, net.edge_count(kind));
        let giant = net
            .layer(kind)
            .component_indices()
            .first()
            .map_or(0, Vec::len);
        giant_component_per_kind.insert(kind, giant);
    }
    IngestSummary {
        node_count: net.node_count(),
        edges_per_kind,
        giant_component_per_kind,
        dangling_references: Vec::new(),
    }
}

/// Resolves parsed records into a network. Every mention, one-sided or
/// mutual, becomes a single undirected edge of its kind.
pub fn resolve(
    records: &[ProfileRecord],
    policy: DanglingPolicy,
) -> Result<(MultiplexNetwork, IngestSummary)> {
    let mut nodes: BTreeMap<PersonId, String> = BTreeMap::new();
    for record in records {
        if nodes
            .insert(record.id.clone(), record.name.clone())
            .is_some()
        {
            return Err(Error::DuplicateId(record.id.clone()));
        }
    }

    let mut dangling = BTreeSet::new();
    let mut stubs = BTreeSet::new();
    let mut edges = Vec::new();
    for record in records {
        for rel in &record.relations {
            if rel.target == record.id {
                return Err(Error::SelfLoop(record.id.clone()));
            }
            if !nodes.contains_key(&rel.target) {
                let reference = DanglingReference {
                    from: record.id.clone(),
                    target: rel.target.clone(),
                    kind: rel.kind,
                };
                match policy {
                    DanglingPolicy::Reject => {
                        return Err(Error::DanglingReference {
                            from: reference.from,
                            target: reference.target,
                        })
                    }
                    DanglingPolicy::Drop => {
                        dangling.insert(reference);
                        continue;
                    }
                    DanglingPolicy::MaterializeStub => {
                        dangling.insert(reference);
                        stubs.insert(rel.target.clone());
                    }
                }
            }
            edges.push((record.id.clone(), rel.target.clone(), rel.kind));
        }
    }
    for stub in stubs {
        nodes.insert(stub, String::new());
    }

    let net = MultiplexNetwork::build(nodes, edges)?;
    let mut summary = summarize(&net);
    summary.dangling_references = dangling.into_iter().collect();
    Ok((net, summary))
}

/// Converts a network back into one record per node, each edge listed once
/// under its smaller endpoint.
pub fn to_records(net: &MultiplexNetwork) -> Vec<ProfileRecord> {
    let mut relations: BTreeMap<&PersonId, Vec<Relation>> = BTreeMap::new();
    for (u, v, kind) in net.typed_edges() {
        relations.entry(u).or_default().push(Relation {
            target: v.clone(),
            kind,
        });
    }
    net.nodes()
        .map(|(id, name)| ProfileRecord {
            id: id.clone(),
            name: name.to_string(),
            url: None,
            relations: relations.remove(id).unwrap_or_default(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, rels: &[(&str, EdgeKind)]) -> ProfileRecord {
        ProfileRecord {
            id: id.into(),
            name: id.to_uppercase(),
            url: None,
            relations: rels
                .iter()
                .map(|&(t, kind)| Relation {
                    target: t.into(),
                    kind,
                })
                .collect(),
        }
    }

    #[test]
    fn parses_valid_line() {
        let text = r#"{"relations":[{"target":"b","kind":"work"},{"kind":"work","target":"c"}],"name":"Ann","id":"a"}"#;
        let records = parse_profiles(text.as_bytes()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].relations.len(), 2);
        assert_eq!(records[0].url, None);
    }

    #[test]
    fn rejects_unknown_kind() {
        let text = r#"{"id":"a","name":"A","relations":[{"target":"b","kind":"mentor"}]}"#;
        let err = parse_profiles(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::UnknownRelationKind(t) if t == "mentor"));
    }

    #[test]
    fn rejects_malformed_and_duplicates() {
        let text = "{\"id\":\"a\",\"name\":\"A\"}\n\n{\"id\":\"b\"";
        assert!(matches!(
            parse_profiles(text.as_bytes()),
            Err(Error::MalformedRecord { line: 3, .. })
        ));
        let text = "{\"id\":\"a\",\"name\":\"A\"}\n{\"id\":\"a\",\"name\":\"B\"}";
        assert!(matches!(
            parse_profiles(text.as_bytes()),
            Err(Error::DuplicateId(_))
        ));
        let text = r#"{"id":"a","name":"A","extra":1}"#;
        assert!(matches!(
            parse_profiles(text.as_bytes()),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
        let text = r#"{"id":"","name":"A"}"#;
        assert!(parse_profiles(text.as_bytes()).is_err());
        let text = r#"{"id":"a","name":"A","relations":[{"target":"a","kind":"work"}]}"#;
        assert!(parse_profiles(text.as_bytes()).is_err());
    }

    #[test]
    fn mutual_mentions_collapse() {
        let records = [
            record("a", &[("b", EdgeKind::Work)]),
            record("b", &[("a", EdgeKind::Work)]),
        ];
        let (net, summary) = resolve(&records, DanglingPolicy::Reject).unwrap();
        assert_eq!(net.edge_count(EdgeKind::Work), 1);
        assert_eq!(summary.edges_per_kind[&EdgeKind::Work], 1);
        assert_eq!(summary.giant_component_per_kind[&EdgeKind::Work], 2);
    }

    #[test]
    fn dangling_policies() {
        let records = [record("a", &[("x", EdgeKind::Alliance)])];

        let err = resolve(&records, DanglingPolicy::Reject).unwrap_err();
        assert!(matches!(err, Error::DanglingReference { .. }));

        let (net, summary) = resolve(&records, DanglingPolicy::Drop).unwrap();
        assert_eq!(net.total_edge_count(), 0);
        assert_eq!(net.node_count(), 1);
        assert_eq!(summary.dangling_references.len(), 1);

        let (net, summary) = resolve(&records, DanglingPolicy::MaterializeStub).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(net.name(&"x".into()), Some(""));
        assert_eq!(net.edge_count(EdgeKind::Alliance), 1);
        assert_eq!(summary.dangling_references.len(), 1);
    }

    #[test]
    fn summarize_empty_and_small() {
        let empty = MultiplexNetwork::default();
        let s = summarize(&empty);
        assert_eq!(s.node_count, 0);
        assert_eq!(s.total_edges(), 0);
        assert!(s.giant_component_per_kind.values().all(|&c| c == 0));

        let records = [
            record("a", &[("b", EdgeKind::Work), ("b", EdgeKind::Alliance)]),
            record("b", &[]),
            record("c", &[]),
        ];
        let (net, _) = resolve(&records, DanglingPolicy::Reject).unwrap();
        let s = summarize(&net);
        assert_eq!(s.edges_per_kind[&EdgeKind::Work], 1);
        assert_eq!(s.edges_per_kind[&EdgeKind::Alliance], 1);
        assert_eq!(s.edges_per_kind[&EdgeKind::Family], 0);
        assert_eq!(s.total_edges(), net.total_edge_count());
        let table = s.to_string();
        assert!(table.contains("alliance"));
    }

    #[test]
    fn csv_edge_list() {
        let text = "source,target,kind\na,b,work\nb,c,alliance\n";
        let records = parse_edge_csv(text.as_bytes()).unwrap();
        assert_eq!(records.len(), 3);
        let (net, _) = resolve(&records, DanglingPolicy::Reject).unwrap();
        assert_eq!(net.edge_count(EdgeKind::Work), 1);
        assert_eq!(net.edge_count(EdgeKind::Alliance), 1);

        let bad = "source,target,kind\na,b,mentor\n";
        assert!(matches!(
            parse_edge_csv(bad.as_bytes()),
            Err(Error::UnknownRelationKind(_))
        ));
        let bad = "from,to,kind\na,b,work\n";
        assert!(parse_edge_csv(bad.as_bytes()).is_err());
    }

    #[test]
    fn repeated_entries_are_idempotent() {
        let once = [record("a", &[("b", EdgeKind::Family)]), record("b", &[])];
        let twice = [
            record("a", &[("b", EdgeKind::Family), ("b", EdgeKind::Family)]),
            record("b", &[("a", EdgeKind::Family)]),
        ];
        let (n1, _) = resolve(&once, DanglingPolicy::Reject).unwrap();
        let (n2, _) = resolve(&twice, DanglingPolicy::Reject).unwrap();
        assert_eq!(n1, n2);
    }
}

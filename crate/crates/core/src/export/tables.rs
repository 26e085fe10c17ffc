//! Fixed-header CSV tables.
//!
//! | table      | header                                            |
//! |------------|---------------------------------------------------|
//! | partition  | `node,community`                                  |
//! | centrality | `node,degree,betweenness,closeness,eigenvector`   |
//! | fit        | `k,p_k,fitted`                                    |
//! | edges      | `source,target,kind`                              |
//!
//! Reals are written at full (shortest round-trip) precision.

use std::collections::BTreeMap;

use crate::centrality::CentralitySet;
use crate::community::Partition;
use crate::degree_stats::FitRow;
use crate::error::{Error, Result};
use crate::graph::{MultiplexNetwork, PersonId};

pub const PARTITION_HEADER: [&str; 2] = ["node", "community"];
pub const CENTRALITY_HEADER: [&str; 5] =
    ["node", "degree", "betweenness", "closeness", "eigenvector"];
pub const FIT_HEADER: [&str; 3] = ["k", "p_k", "fitted"];
pub const EDGE_HEADER: [&str; 3] = ["source", "target", "kind"];

fn real(v: f64) -> String {
    format!("{v:?}")
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn reader<'a>(text: &'a str, header: &[&str]) -> Result<csv::Reader<&'a [u8]>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::Parse(format!(
            "expected header {}, found {}",
            header.join(","),
            found.join(",")
        )));
    }
    Ok(r)
}

fn parse_real(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

pub fn partition_csv(p: &Partition) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PARTITION_HEADER)?;
    for (id, c) in &p.assignment {
        w.write_record([id.as_str(), &c.to_string()])?;
    }
    finish(w)
}

pub fn read_partition_csv(text: &str) -> Result<Partition> {
    let mut assignment = BTreeMap::new();
    for row in reader(text, &PARTITION_HEADER)?.records() {
        let row = row?;
        let id = PersonId::new(&row[0])?;
        let c: usize = row[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad community {:?}", &row[1])))?;
        if assignment.insert(id.clone(), c).is_some() {
            return Err(Error::DuplicateNode(id));
        }
    }
    Partition::from_assignment(assignment)
}

pub fn centrality_csv(set: &CentralitySet) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CENTRALITY_HEADER)?;
    for id in set.degree.scores.keys() {
        let row = set.row(id).expect("all metrics share one node set");
        w.write_record([
            id.to_string(),
            (row[0] as u64).to_string(),
            real(row[1]),
            real(row[2]),
            real(row[3]),
        ])?;
    }
    finish(w)
}

/// `node -> [degree, betweenness, closeness, eigenvector]`.
pub fn read_centrality_csv(text: &str) -> Result<BTreeMap<PersonId, [f64; 4]>> {
    let mut rows = BTreeMap::new();
    for row in reader(text, &CENTRALITY_HEADER)?.records() {
        let row = row?;
        let values = [
            parse_real(&row[1])?,
            parse_real(&row[2])?,
            parse_real(&row[3])?,
            parse_real(&row[4])?,
        ];
        rows.insert(PersonId::new(&row[0])?, values);
    }
    Ok(rows)
}

/// With `log`, every column is written as its base-10 logarithm.
pub fn fit_csv(rows: &[FitRow], log: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FIT_HEADER)?;
    for r in rows {
        if log {
            w.write_record([
                real((r.k as f64).log10()),
                real(r.p_k.log10()),
                real(r.fitted.log10()),
            ])?;
        } else {
            w.write_record([r.k.to_string(), real(r.p_k), real(r.fitted)])?;
        }
    }
    finish(w)
}

/// Rows as `(k, p_k, fitted)` reals.
pub fn read_fit_csv(text: &str) -> Result<Vec<(f64, f64, f64)>> {
    reader(text, &FIT_HEADER)?
        .records()
        .map(|row| {
            let row = row?;
            Ok((
                parse_real(&row[0])?,
                parse_real(&row[1])?,
                parse_real(&row[2])?,
            ))
        })
        .collect()
}

/// Edge list in the ingest CSV format. Isolated nodes are not represented.
pub fn edges_csv(net: &MultiplexNetwork) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(EDGE_HEADER)?;
    for (u, v, kind) in net.typed_edges() {
        w.write_record([u.as_str(), v.as_str(), kind.as_str()])?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::CentralitySet;
    use crate::graph::LayerGraph;

    #[test]
    fn partition_rows() {
        let p =
            Partition::from_blocks(vec![vec!["a".into(), "b".into()], vec!["c".into()]]).unwrap();
        let text = partition_csv(&p).unwrap();
        assert_eq!(text, "node,community\na,0\nb,0\nc,1\n");
        assert_eq!(read_partition_csv(&text).unwrap(), p);
        assert!(read_partition_csv("id,community\na,0\n").is_err());
    }

    #[test]
    fn centrality_header() {
        let g = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &[]).unwrap();
        let set = CentralitySet::compute(&g).unwrap();
        let text = centrality_csv(&set).unwrap();
        assert_eq!(
            text.lines().next(),
            Some("node,degree,betweenness,closeness,eigenvector")
        );
        let back = read_centrality_csv(&text).unwrap();
        assert_eq!(back[&PersonId::from("b")], set.row(&"b".into()).unwrap());
    }

    #[test]
    fn fit_rows() {
        let rows = [FitRow {
            k: 10,
            p_k: 0.5,
            fitted: 0.1,
        }];
        assert_eq!(fit_csv(&rows, false).unwrap(), "k,p_k,fitted\n10,0.5,0.1\n");
        assert_eq!(
            fit_csv(&rows, true).unwrap(),
            "k,p_k,fitted\n1.0,-0.3010299956639812,-1.0\n"
        );
        assert_eq!(
            read_fit_csv("k,p_k,fitted\n10,0.5,0.1\n").unwrap(),
            vec![(10.0, 0.5, 0.1)]
        );
    }
}

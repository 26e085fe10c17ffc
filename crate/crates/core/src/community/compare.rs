use std::collections::BTreeMap;

use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};

/// Block counts up to this size are matched exhaustively; larger ones
/// greedily by descending overlap.
const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionComparison {
    /// Nodes whose block in `p` is not matched to their block in `q`.
    pub migrations: usize,
    /// Block of `p` -> matched block of `q`.
    pub matching: BTreeMap<usize, usize>,
}

fn overlaps(p: &Partition, q: &Partition) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0; q.community_count()]; p.community_count()];
    for (id, &a) in &p.assignment {
        table[a][q.assignment[id]] += 1;
    }
    table
}

fn best_exhaustive(table: &[Vec<usize>]) -> Vec<(usize, usize)> {
    fn search(
        table: &[Vec<usize>],
        row: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        total: usize,
        best: &mut (usize, Vec<(usize, usize)>),
    ) {
        if row == table.len() {
            if total > best.0 || best.1.is_empty() {
                *best = (total, current.clone());
            }
            return;
        }
        let cols = table[row].len();
        let free = used.iter().filter(|u| !**u).count();
        let rows_left = table.len() - row;
        for col in 0..cols {
            if used[col] {
                continue;
            }
            used[col] = true;
            current.push((row, col));
            search(table, row + 1, used, current, total + table[row][col], best);
            current.pop();
            used[col] = false;
        }
        // A row may stay unmatched only when there are more rows than columns.
        if rows_left > free || free == 0 {
            search(table, row + 1, used, current, total, best);
        }
    }
    let cols = table.first().map_or(0, Vec::len);
    let mut best = (0, Vec::new());
    search(
        table,
        0,
        &mut vec![false; cols],
        &mut Vec::new(),
        0,
        &mut best,
    );
    best.1
}

fn best_greedy(table: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize, usize)> = table
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (v, r, c)))
        .collect();
    cells.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut row_used = vec![false; table.len()];
    let mut col_used = vec![false; table.first().map_or(0, Vec::len)];
    let mut pairs = Vec::new();
    for (_, r, c) in cells {
        if !row_used[r] && !col_used[c] {
            row_used[r] = true;
            col_used[c] = true;
            pairs.push((r, c));
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Matches blocks of `p` to blocks of `q` maximizing total overlap and counts
/// the nodes that change block under that matching.
pub fn compare_partitions(p: &Partition, q: &Partition) -> Result<PartitionComparison> {
    if p.assignment.len() != q.assignment.len()
        || p.assignment
            .keys()
            .zip(q.assignment.keys())
            .any(|(a, b)| a != b)
    {
        return Err(Error::NodeSetMismatch);
    }
    let table = overlaps(p, q);
    let pairs = if p.community_count().max(q.community_count()) <= EXHAUSTIVE_LIMIT {
        best_exhaustive(&table)
    } else {
        best_greedy(&table)
    };
    let kept: usize = pairs.iter().map(|&(r, c)| table[r][c]).sum();
    Ok(PartitionComparison {
        migrations: p.node_count() - kept,
        matching: pairs.into_iter().collect(),
    })
}

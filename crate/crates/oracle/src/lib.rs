//! Brute-force reference implementations.
//!
//! Graphs are `n` plus an undirected edge list over `0..n`. Everything here
//! favours obviousness over speed and shares no code with `plexnet`.

use rand::Rng;

pub type Edges = [(usize, usize)];

pub fn adjacency(n: usize, edges: &Edges) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// G(n, p) edge list with `u < v`, deduplicated.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random connected graph: a random spanning tree plus G(n, p) extras.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = random_graph(rng, n, p);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if !edges.contains(&(u, v)) {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    edges
}

// ---------------------------------------------------------------- components

/// Component label per node (labels are the smallest member of each component).
pub fn components(n: usize, edges: &Edges) -> Vec<usize> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

pub fn component_count(n: usize, edges: &Edges) -> usize {
    let labels = components(n, edges);
    (0..n).filter(|&x| labels[x] == x).count()
}

// ------------------------------------------------------------- shortest paths

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
pub fn distances(n: usize, edges: &Edges) -> Vec<Vec<Option<usize>>> {
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(u, v) in edges {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Every shortest path from `s` to `t`, as node sequences.
pub fn all_shortest_paths(
    adj: &[Vec<bool>],
    dist: &[Vec<Option<usize>>],
    s: usize,
    t: usize,
) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[Vec<bool>],
        dist: &[Vec<Option<usize>>],
        t: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path.clone());
            return;
        }
        let remaining = dist[last][t].unwrap();
        for next in 0..adj.len() {
            if adj[last][next] && dist[next][t] == Some(remaining - 1) {
                path.push(next);
                extend(adj, dist, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if dist[s][t].is_some() {
        extend(adj, dist, t, &mut vec![s], &mut out);
    }
    out
}

/// Node betweenness by explicit path enumeration, normalized by
/// `(n-1)(n-2)/2` (all zeros when `n < 3`).
pub fn betweenness(n: usize, edges: &Edges) -> Vec<f64> {
    let adj = adjacency(n, edges);
    let dist = distances(n, edges);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_shortest_paths(&adj, &dist, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    let scale = ((n - 1) * (n - 2)) as f64 / 2.0;
    bc.iter().map(|x| x / scale).collect()
}

/// Unnormalized edge betweenness over unordered node pairs, keyed `(u, v)`
/// with `u < v`.
pub fn edge_betweenness(n: usize, edges: &Edges) -> Vec<((usize, usize), f64)> {
    let adj = adjacency(n, edges);
    let dist = distances(n, edges);
    let mut keys: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    keys.sort_unstable();
    keys.dedup();
    let mut scores = vec![0.0; keys.len()];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_shortest_paths(&adj, &dist, s, t);
            let total = paths.len() as f64;
            for p in &paths {
                for w in p.windows(2) {
                    let key = (w[0].min(w[1]), w[0].max(w[1]));
                    let at = keys.binary_search(&key).unwrap();
                    scores[at] += 1.0 / total;
                }
            }
        }
    }
    keys.into_iter().zip(scores).collect()
}

/// `(n-1) / sum of distances`; `None` for disconnected graphs.
pub fn closeness(n: usize, edges: &Edges) -> Option<Vec<f64>> {
    let dist = distances(n, edges);
    let mut out = Vec::with_capacity(n);
    for row in &dist {
        let mut sum = 0usize;
        for d in row {
            sum += (*d)?;
        }
        out.push(if n < 2 {
            0.0
        } else {
            (n - 1) as f64 / sum as f64
        });
    }
    Some(out)
}

// ------------------------------------------------------------------- cliques

/// All maximal cliques by checking every vertex subset. Each clique is
/// sorted; the list is sorted by size descending, then lexicographically.
pub fn maximal_cliques(n: usize, edges: &Edges) -> Vec<Vec<usize>> {
    assert!(n <= 20, "subset enumeration is exponential");
    let adj = adjacency(n, edges);
    let is_clique = |mask: u32| {
        (0..n)
            .all(|i| mask & (1 << i) == 0 || (i + 1..n).all(|j| mask & (1 << j) == 0 || adj[i][j]))
    };
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if !is_clique(mask) {
            continue;
        }
        let extendable = (0..n).any(|v| mask & (1 << v) == 0 && is_clique(mask | (1 << v)));
        if !extendable {
            out.push((0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>());
        }
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Every `k`-node subset that is complete, by plain enumeration of all
/// `C(n, k)` subsets in lexicographic order.
pub fn complete_subsets(n: usize, edges: &Edges, k: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(n, edges);
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        if pick
            .iter()
            .enumerate()
            .all(|(i, &u)| pick[i + 1..].iter().all(|&v| adj[u][v]))
        {
            out.push(pick.clone());
        }
        // Advance to the next combination.
        let Some(i) = (0..k).rev().find(|&i| pick[i] < n - k + i) else {
            return out;
        };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------- dense eigensolver

/// Cyclic Jacobi diagonalization of a symmetric matrix. Returns eigenvalues
/// in ascending order with eigenvectors as the matching columns.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let values = order.iter().map(|&k| a[k][k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i][k]).collect())
        .collect();
    (values, vectors)
}

pub fn laplacian(n: usize, edges: &Edges) -> Vec<Vec<f64>> {
    let adj = adjacency(n, edges);
    (0..n)
        .map(|i| {
            let deg = adj[i].iter().filter(|&&x| x).count() as f64;
            (0..n)
                .map(|j| {
                    if i == j {
                        deg
                    } else if adj[i][j] {
                        -1.0
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Fiedler {
    pub value: f64,
    pub vector: Vec<f64>,
    pub multiplicity: usize,
}

/// Second Laplacian eigenpair with the canonical choice inside a repeated
/// eigenspace: project the first unit vector whose projection is non-trivial,
/// centre, normalize, then make the first non-zero entry positive.
pub fn fiedler(n: usize, edges: &Edges) -> Fiedler {
    let (values, vectors) = jacobi_eigen(&laplacian(n, edges));
    let lambda = values[1].max(0.0);
    let gap = 1e-9 * values[n - 1].abs().max(1.0);
    let cluster: Vec<usize> = (1..n)
        .take_while(|&k| (values[k] - lambda).abs() <= gap)
        .collect();
    let mut x: Vec<f64> = if cluster.len() == 1 {
        vectors[1].clone()
    } else {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|r| cluster.iter().map(|&k| vectors[k][r] * vectors[k][i]).sum())
                    .collect::<Vec<f64>>()
            })
            .find(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-6)
            .unwrap()
    };
    let mean = x.iter().sum::<f64>() / n as f64;
    x.iter_mut().for_each(|e| *e -= mean);
    let norm = x.iter().map(|e| e * e).sum::<f64>().sqrt();
    x.iter_mut().for_each(|e| *e /= norm);
    if x.iter().find(|e| e.abs() > 1e-10).is_some_and(|e| *e < 0.0) {
        x.iter_mut().for_each(|e| *e = -*e);
    }
    Fiedler {
        value: lambda,
        vector: x,
        multiplicity: cluster.len(),
    }
}

/// Sign split of a Fiedler vector: `true` for the non-negative side.
pub fn sign_split(vector: &[f64]) -> Vec<bool> {
    vector.iter().map(|&x| x >= -1e-10).collect()
}

/// Principal eigenvector of the adjacency matrix of a connected graph,
/// non-negative with unit Euclidean norm.
pub fn principal_eigenvector(n: usize, edges: &Edges) -> (f64, Vec<f64>) {
    let adj = adjacency(n, edges);
    let a: Vec<Vec<f64>> = adj
        .iter()
        .map(|row| row.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
        .collect();
    let (values, vectors) = jacobi_eigen(&a);
    let mut x = vectors[n - 1].clone();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|e| *e = -*e);
    }
    (values[n - 1], x)
}

// ---------------------------------------------------------------- power law

/// Exact inverse-CDF sampler for `P(k) ∝ k^-gamma`, `k >= k_min`.
///
/// Probabilities are tabulated directly up to `TABLE_END`; the remaining
/// mass (estimated by the integral tail) is sampled from the continuous
/// Pareto law rounded down, which is accurate to far below sampling noise
/// for `gamma >= 2`.
pub struct DiscretePowerLaw {
    gamma: f64,
    cdf: Vec<f64>,
    k_min: usize,
}

const TABLE_END: usize = 1_000_000;

impl DiscretePowerLaw {
    pub fn new(gamma: f64, k_min: usize) -> Self {
        assert!(gamma > 1.0 && k_min >= 1);
        let weights: Vec<f64> = (k_min..TABLE_END)
            .map(|k| (k as f64).powf(-gamma))
            .collect();
        let tail = (TABLE_END as f64 - 0.5).powf(1.0 - gamma) / (gamma - 1.0);
        let total: f64 = weights.iter().rev().sum::<f64>() + tail;
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in weights {
            acc += w;
            cdf.push(acc / total);
        }
        DiscretePowerLaw { gamma, cdf, k_min }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.gen();
        let at = self.cdf.partition_point(|&c| c < u);
        if at < self.cdf.len() {
            return self.k_min + at;
        }
        let last = *self.cdf.last().unwrap();
        let v = (1.0 - u) / (1.0 - last);
        let x = (TABLE_END as f64 - 0.5) * v.powf(-1.0 / (self.gamma - 1.0));
        (x + 0.5).floor().max(TABLE_END as f64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn path_betweenness() {
        let bc = betweenness(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!((bc[1] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(bc[0], 0.0);
    }

    #[test]
    fn cycle_has_two_paths_between_opposites() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let dist = distances(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(all_shortest_paths(&adj, &dist, 0, 2).len(), 2);
    }

    #[test]
    fn triangle_with_tail_cliques() {
        let cliques = maximal_cliques(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(cliques, vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn complete_subsets_of_k4() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(complete_subsets(4, &k4, 3).len(), 4);
        assert_eq!(complete_subsets(4, &k4, 4), vec![vec![0, 1, 2, 3]]);
        assert!(complete_subsets(5, &k4, 5).is_empty());
    }

    #[test]
    fn jacobi_path_spectrum() {
        let (values, vectors) = jacobi_eigen(&laplacian(3, &[(0, 1), (1, 2)]));
        for (got, want) in values.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(vectors[1][1].abs() < 1e-12);
    }

    #[test]
    fn star_fiedler_is_degenerate() {
        let f = fiedler(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(f.multiplicity, 2);
        assert!((f.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampler_respects_minimum() {
        let law = DiscretePowerLaw::new(2.5, 3);
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        assert!((0..1000).all(|_| law.sample(&mut rng) >= 3));
    }

    #[test]
    fn components_of_two_edges() {
        assert_eq!(components(5, &[(3, 4), (0, 2)]), vec![0, 1, 0, 3, 3]);
        assert_eq!(component_count(5, &[(3, 4), (0, 2)]), 3);
    }
}

//! Exhaustive enumeration of small unlabeled simple graphs and trees for
//! the verification suites and conjecture scans.

use itertools::Itertools;

use crate::sgraph::SignedMultidigraph;

/// Upper-triangle adjacency bitmask of a simple graph (n <= 11).
#[allow(clippy::needless_range_loop)]
fn edge_mask(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let mut mask = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

/// Minimum edge mask over all vertex permutations: a canonical key for
/// isomorphism dedupe.
fn canonical_key(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let mut best = u64::MAX;
    for perm in (0..n).permutations(n) {
        let mut mapped = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if adj[i][j] {
                    mapped[perm[i]][perm[j]] = true;
                }
            }
        }
        best = best.min(edge_mask(&mapped));
    }
    best
}

fn mask_to_graph(n: usize, mask: u64) -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << bit) != 0 {
                g.add_edge(i, j, 1);
            }
            bit += 1;
        }
    }
    g
}

#[allow(clippy::needless_range_loop)]
fn mask_to_adj(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << bit) != 0 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
            bit += 1;
        }
    }
    adj
}

/// All simple graphs on n vertices up to isomorphism, by brute-force
/// enumeration of edge subsets with canonical-key dedupe. Practical for
/// n <= 6.
pub fn simple_graphs(n: usize) -> Vec<SignedMultidigraph> {
    assert!((1..=6).contains(&n), "enumeration is sized for n <= 6");
    let bits = n * (n - 1) / 2;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u64 << bits) {
        let adj = mask_to_adj(n, mask);
        if seen.insert(canonical_key(&adj)) {
            out.push(mask_to_graph(n, mask));
        }
    }
    out
}

/// All connected simple graphs on n vertices up to isomorphism.
pub fn connected_simple_graphs(n: usize) -> Vec<SignedMultidigraph> {
    simple_graphs(n)
        .into_iter()
        .filter(SignedMultidigraph::is_connected)
        .collect()
}

/// All trees on n vertices up to isomorphism, by decoding every Pruefer
/// sequence and deduplicating with a rooted canonical encoding.
pub fn trees(n: usize) -> Vec<SignedMultidigraph> {
    assert!(n >= 1, "trees need at least one vertex");
    if n == 1 {
        return vec![SignedMultidigraph::empty(1)];
    }
    if n == 2 {
        let mut g = SignedMultidigraph::empty(2);
        g.add_edge(0, 1, 1);
        return vec![g];
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(n, &seq);
        let key = tree_canonical_key(n, &edges);
        if seen.insert(key) {
            let mut g = SignedMultidigraph::empty(n);
            for &(u, v) in &edges {
                g.add_edge(u, v, 1);
            }
            out.push(g);
        }
        // next sequence (odometer)
        let mut t = 0;
        loop {
            if t == seq.len() {
                return out;
            }
            seq[t] += 1;
            if seq[t] < n {
                break;
            }
            seq[t] = 0;
            t += 1;
        }
    }
}

/// Standard Pruefer decoding: returns the n-1 edges of the tree.
fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut deg = degree.clone();
    for &s in seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        deg[leaf] = 0;
        deg[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Canonical encoding of an unrooted tree: root at the center (tie-broken
/// by the smaller encoding) and recursively sort child encodings.
fn tree_canonical_key(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let centers = tree_centers(n, &adj);
    centers
        .iter()
        .map(|&c| rooted_encoding(c, usize::MAX, &adj))
        .min()
        .expect("at least one center")
}

fn tree_centers(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &u in &adj[v] {
                if !removed[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

fn rooted_encoding(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_encoding(u, v, adj))
        .collect();
    kids.sort();
    format!("({})", kids.join(""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgraph::is_twin_free;

    #[test]
    fn graph_counts_match_known_sequences() {
        // unlabeled simple graphs: 1, 2, 4, 11, 34
        assert_eq!(simple_graphs(1).len(), 1);
        assert_eq!(simple_graphs(2).len(), 2);
        assert_eq!(simple_graphs(3).len(), 4);
        assert_eq!(simple_graphs(4).len(), 11);
        assert_eq!(simple_graphs(5).len(), 34);
        // connected: 1, 1, 2, 6, 21
        assert_eq!(connected_simple_graphs(4).len(), 6);
        assert_eq!(connected_simple_graphs(5).len(), 21);
    }

    #[test]
    fn six_vertex_connected_count() {
        assert_eq!(connected_simple_graphs(6).len(), 112);
    }

    #[test]
    fn tree_counts_match_known_sequence() {
        // unlabeled trees: 1, 1, 1, 2, 3, 6, 11, 23
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(trees(i + 1).len(), e, "n = {}", i + 1);
        }
    }

    #[test]
    fn enumerated_graphs_are_simple_and_distinct() {
        let graphs = simple_graphs(4);
        for g in &graphs {
            assert!(g.is_simple_undirected());
        }
        // P4 is the unique twin-free graph on 4 vertices
        let twin_free: Vec<_> = connected_simple_graphs(4)
            .into_iter()
            .filter(is_twin_free)
            .collect();
        assert_eq!(twin_free.len(), 1);
        assert_eq!(twin_free[0].edge_count_underlying(), 3);
    }
}

//! Cross-check the graph6 codec against an independent encoder written
//! directly from the format definition, exhaustively over all labeled
//! simple graphs with up to 5 vertices.

use criticalis::sgraph::{parse_graph6, to_graph6, SignedMultidigraph};

/// Independent graph6 encoder: n as a single printable byte (n <= 62),
/// then the upper triangle read column by column, packed big-endian into
/// 6-bit groups, each offset by 63.
fn encode_reference(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> String {
    assert!(n <= 62);
    let mut out = vec![n as u8 + 63];
    let mut bits: Vec<bool> = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(adj(i, j));
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for &b in chunk {
            v = (v << 1) | b as u8;
        }
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}

#[test]
#[allow(clippy::needless_range_loop)]
fn all_labeled_graphs_up_to_five_vertices_round_trip() {
    for n in 1..=5usize {
        let m = n * (n - 1) / 2;
        for mask in 0u32..(1 << m) {
            let mut g = SignedMultidigraph::empty(n);
            let mut bit = 0;
            let mut edges = vec![vec![false; n]; n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if mask & (1 << bit) != 0 {
                        g.add_edge(u, v, 1);
                        edges[u][v] = true;
                        edges[v][u] = true;
                    }
                    bit += 1;
                }
            }
            let ours = to_graph6(&g).unwrap();
            let reference = encode_reference(n, &|i, j| edges[i][j]);
            assert_eq!(ours, reference, "n={n} mask={mask:b}");
            let back = parse_graph6(&ours).unwrap();
            assert_eq!(back.n(), n);
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(
                        back.weight(u, v) != 0,
                        edges[u][v],
                        "n={n} mask={mask:b} edge {u},{v}"
                    );
                }
            }
        }
    }
}

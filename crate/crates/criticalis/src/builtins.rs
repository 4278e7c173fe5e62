//! Named example graphs available on the command line as `builtin:<name>`.

use crate::sgraph::{build_family, Family, GraphError, SignedMultidigraph};

pub const BUILTIN_NAMES: [&str; 8] = [
    "path3",
    "hypercube3",
    "fig2",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
];

/// Look a builtin graph up by its bare name (no `builtin:` prefix).
pub fn builtin_graph(name: &str) -> Result<SignedMultidigraph, GraphError> {
    match name {
        "path3" => build_family(&Family::Path(3)),
        "hypercube3" => build_family(&Family::Hypercube3),
        "fig2" => Ok(fig2()),
        "fig4" => Ok(fig4()),
        "fig5" => Ok(fig5()),
        "fig6" => Ok(fig6()),
        "fig7" => Ok(fig7()),
        "fig8" => Ok(fig8()),
        other => Err(GraphError::Parse(format!(
            "unknown builtin graph '{}'; available: {}",
            other,
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// A 5-cycle with two arc pairs carrying unequal weights in the two
/// directions: w(1,2)=1 but w(2,1)=-1, and w(1,5)=-1 but w(5,1)=1; the
/// three remaining edges are plain.
pub fn fig2() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(5);
    g.add_arc(0, 1, 1);
    g.add_arc(1, 0, -1);
    g.add_arc(0, 4, -1);
    g.add_arc(4, 0, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 4, 1);
    g
}

/// A simple graph on 6 vertices whose co-rank stays fixed under twin
/// additions at v6.
pub fn fig4() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(6);
    for (u, v) in [
        (1, 3),
        (1, 4),
        (1, 6),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 5),
        (3, 6),
        (4, 5),
        (4, 6),
        (5, 6),
    ] {
        g.add_edge(u - 1, v - 1, 1);
    }
    g
}

/// A twin-free simple graph on 7 vertices with co-rank 3.
pub fn fig5() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(7);
    for (u, v) in [
        (5, 7),
        (7, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (1, 7),
        (3, 2),
        (2, 4),
        (4, 6),
        (6, 2),
        (2, 1),
    ] {
        g.add_edge(u - 1, v - 1, 1);
    }
    g
}

/// A signed 4-cycle with asymmetric weights on two arc pairs:
/// w(1,4)=-1 / w(4,1)=1 and w(3,4)=1 / w(4,3)=-1.
pub fn fig6() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(4);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_arc(2, 3, 1);
    g.add_arc(3, 2, -1);
    g.add_arc(0, 3, -1);
    g.add_arc(3, 0, 1);
    g
}

/// Five one-way arcs into v1, a negative edge v2v3, and a triangle on
/// v4, v5, v6.
pub fn fig7() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(6);
    for i in 1..6 {
        g.add_arc(i, 0, 1);
    }
    g.add_edge(1, 2, -1);
    g.add_edge(3, 4, 1);
    g.add_edge(3, 5, 1);
    g.add_edge(4, 5, 1);
    g
}

/// A connected cograph on 7 vertices.
pub fn fig8() -> SignedMultidigraph {
    let mut g = SignedMultidigraph::empty(7);
    for (u, v) in [
        (4, 5),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (1, 7),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (2, 7),
        (6, 7),
    ] {
        g.add_edge(u - 1, v - 1, 1);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::{corank, critical_ideal, generalized_laplacian};
    use crate::groebner::{ideal_equal, GbConfig, Ideal};
    use crate::polyring::{CoefficientRing, Polynomial};
    use crate::sgraph::{cotree, is_twin_free};

    fn z() -> CoefficientRing {
        CoefficientRing::Int
    }

    fn cfg() -> GbConfig {
        GbConfig::default()
    }

    fn ideal_z(gens: &[&str]) -> Ideal {
        Ideal::new(
            z(),
            gens.iter()
                .map(|s| Polynomial::parse(z(), s).unwrap())
                .collect(),
        )
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(builtin_graph("nope").is_err());
        for name in BUILTIN_NAMES {
            assert!(builtin_graph(name).is_ok(), "{}", name);
        }
    }

    #[test]
    fn fig2_laplacian_and_corank() {
        let g = fig2();
        let l = generalized_laplacian(&g, z());
        // asymmetric arc pair: entry (1,2) = -w(1,2) = -1, (2,1) = +1
        assert_eq!(l.get(0, 1), &Polynomial::parse(z(), "-1").unwrap());
        assert_eq!(l.get(1, 0), &Polynomial::parse(z(), "1").unwrap());
        assert_eq!(l.get(0, 4), &Polynomial::parse(z(), "1").unwrap());
        assert_eq!(l.get(4, 0), &Polynomial::parse(z(), "-1").unwrap());
        assert_eq!(corank(&g, z(), &cfg()).unwrap().gamma, 3);
    }

    #[test]
    fn fig4_and_fig5_coranks() {
        assert_eq!(corank(&fig4(), z(), &cfg()).unwrap().gamma, 3);
        let g5 = fig5();
        assert!(is_twin_free(&g5));
        assert_eq!(corank(&g5, z(), &cfg()).unwrap().gamma, 3);
    }

    #[test]
    fn fig6_corank_and_printed_ideals() {
        let g = fig6();
        assert_eq!(corank(&g, z(), &cfg()).unwrap().gamma, 2);
        let i3 = critical_ideal(&g, 3, z(), &cfg()).unwrap().ideal;
        assert!(ideal_equal(
            &i3,
            &ideal_z(&["x2 + x4", "x1 - x3", "x3*x4 + 2"]),
            &cfg()
        )
        .unwrap());
        let i4 = critical_ideal(&g, 4, z(), &cfg()).unwrap().ideal;
        assert!(ideal_equal(
            &i4,
            &ideal_z(&["x1*x2*x3*x4 + x1*x2 + x2*x3 - x1*x4 - x3*x4 - 4"]),
            &cfg()
        )
        .unwrap());
    }

    #[test]
    fn fig7_corank_and_structure() {
        let g = fig7();
        let l = generalized_laplacian(&g, z());
        for i in 1..6 {
            assert_eq!(l.get(i, 0), &Polynomial::parse(z(), "-1").unwrap());
            assert_eq!(l.get(0, i), &Polynomial::parse(z(), "0").unwrap());
        }
        assert_eq!(l.get(1, 2), &Polynomial::parse(z(), "1").unwrap());
        assert_eq!(corank(&g, z(), &cfg()).unwrap().gamma, 2);
        assert_eq!(
            corank(&g.delete_vertex(0), z(), &cfg()).unwrap().gamma,
            2
        );
    }

    #[test]
    fn fig8_is_a_cograph() {
        let g = fig8();
        let t = cotree(&g).unwrap();
        assert_eq!(
            t.render(),
            "join(union(join(v4,v5),join(v6,v7),v3),union(v1,v2))"
        );
    }

    #[test]
    fn hypercube3_corank() {
        let g = builtin_graph("hypercube3").unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(corank(&g, z(), &cfg()).unwrap().gamma, 4);
    }
}

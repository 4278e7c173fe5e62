//! Verification suites: each one checks a structural identity, bound, or
//! closed form on an exhaustive or randomized family of small graphs and
//! reports the cases run and any failures.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::builtins;
use crate::critical::{
    all_minors, closed_form_bipartite, closed_form_complete, closed_form_union, corank,
    corank_blowup, critical_ideal, dup_rep_expanded_ideal, generalized_laplacian, join_build,
    join_determinant, minor_ideal_triviality, phi_assignment, stabilized_twin_ideal,
    CriticalError, SymbolicMatrix,
};
use crate::enumerate::{connected_simple_graphs, simple_graphs, trees};
use crate::groebner::{
    groebner_basis, ideal_contains, ideal_equal, normal_form, GbConfig, Ideal,
};
use crate::polyring::{CoefficientRing, MonomialOrder, Polynomial, VarId};
use crate::sgraph::{
    blowup, build_family, disjoint_union, duplicate_replicate, is_twin_free, Family,
    SignedMultidigraph, TwinKind, TwinVector,
};

pub const SUITE_NAMES: [&str; 11] = [
    "joindet",
    "chain",
    "subgraph-containment",
    "thm-rd",
    "cor-bound",
    "lemma-dr",
    "thm-deq-req",
    "closed-forms",
    "union-additivity",
    "bounds-clique-stability",
    "tree-proposition",
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: &str, cfg: &GbConfig) -> Result<SuiteReport, CriticalError> {
    let (cases, failures) = match name {
        "joindet" => suite_joindet(cfg),
        "chain" => suite_chain(cfg)?,
        "subgraph-containment" => suite_subgraph(cfg)?,
        "thm-rd" => suite_thm_rd(cfg)?,
        "cor-bound" => suite_cor_bound(cfg)?,
        "lemma-dr" => suite_lemma_dr(cfg)?,
        "thm-deq-req" => suite_deq_req(cfg)?,
        "closed-forms" => suite_closed_forms(cfg)?,
        "union-additivity" => suite_union_additivity(cfg)?,
        "bounds-clique-stability" => suite_bounds(cfg)?,
        "tree-proposition" => suite_tree_proposition(cfg)?,
        other => {
            return Err(CriticalError::Precondition(format!(
                "unknown suite '{}'; available: {}",
                other,
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        name: name.to_string(),
        cases,
        failures,
    })
}

fn z() -> CoefficientRing {
    CoefficientRing::Int
}

/// Randomized joins with total size up to 6: the four-case determinant
/// formula must match brute-force cofactor expansion.
fn suite_joindet(cfg: &GbConfig) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6a64);
    let mut cases = 0;
    let mut failures = Vec::new();
    while cases < 300 {
        let p1 = rng.gen_range(1..=3usize);
        let p2 = rng.gen_range(1..=3usize);
        let q1 = rng.gen_range(1..=3usize);
        let Some(q2) = (p1 + q1).checked_sub(p2).filter(|&q2| (1..=3).contains(&q2)) else {
            continue;
        };
        if p1 + q1 > 6 {
            continue;
        }
        let mut rand_poly = |_: ()| -> Polynomial {
            match rng.gen_range(0..4) {
                0 => Polynomial::zero(z()),
                1 => Polynomial::constant(z(), rng.gen_range(-3..=3i64)),
                _ => Polynomial::variable(z(), VarId::base(rng.gen_range(1..=4))),
            }
        };
        let fill = |r: usize, c: usize, rp: &mut dyn FnMut(()) -> Polynomial| {
            let mut m = SymbolicMatrix::zero(z(), r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, rp(()));
                }
            }
            m
        };
        let p = fill(p1, p2, &mut rand_poly);
        let q = fill(q1, q2, &mut rand_poly);
        let a: Vec<Polynomial> = (0..q1).map(|_| rand_poly(())).collect();
        let b: Vec<Polynomial> = (0..q2).map(|_| rand_poly(())).collect();
        let lemma = join_determinant(&p, &a, &q, &b).expect("square join");
        let brute = join_build(&p, &a, &q, &b)
            .expect("consistent dims")
            .determinant_cofactor();
        if lemma != brute {
            failures.push(format!(
                "join {}x{} with {}x{}: formula disagrees with cofactor expansion",
                p1, p2, q1, q2
            ));
        }
        cases += 1;
    }
    (cases, failures)
}

/// I_{i+1}(G, X) is contained in I_i(G, X) for every simple graph with at
/// most 5 vertices. Up to 4 vertices the containment is decided
/// semantically with Groebner bases; on 5 vertices each (i+1)-minor is
/// checked against its Laplace expansion, an explicit combination of
/// i-minors witnessing membership.
fn suite_chain(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut work = Vec::new();
    for n in 2..=5 {
        for (gi, g) in simple_graphs(n).into_iter().enumerate() {
            work.push((n, gi, g));
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, gi, g)| {
            let mut cases = 0;
            let mut failures = Vec::new();
            if *n <= 4 {
                let mut prev = critical_ideal(g, 1, z(), cfg)?.ideal;
                for i in 1..*n {
                    let next = critical_ideal(g, i + 1, z(), cfg)?.ideal;
                    cases += 1;
                    if !ideal_contains(&prev, &next, cfg)? {
                        failures.push(format!(
                            "graph #{} on {} vertices: I_{} not inside I_{}",
                            gi,
                            n,
                            i + 1,
                            i
                        ));
                    }
                    prev = next;
                }
            } else {
                let l = generalized_laplacian(g, z());
                for i in 1..*n {
                    cases += 1;
                    if !laplace_witness(&l, i + 1) {
                        failures.push(format!(
                            "graph #{} on {} vertices: no expansion of I_{} into I_{}",
                            gi,
                            n,
                            i + 1,
                            i
                        ));
                    }
                }
            }
            Ok((cases, failures))
        })
        .collect();
    merge(results)
}

/// Verify that every k-minor of `l` equals its Laplace expansion along the
/// first selected row, i.e. an explicit entry-weighted sum of (k-1)-minors.
fn laplace_witness(l: &SymbolicMatrix, k: usize) -> bool {
    let n = l.rows();
    if k > n {
        return true;
    }
    for rows in (0..n).combinations(k) {
        for cols in (0..n).combinations(k) {
            let m = l.submatrix(&rows, &cols);
            let direct = m.determinant();
            let mut expanded = Polynomial::zero(z());
            let sub_rows: Vec<usize> = rows[1..].to_vec();
            for (t, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = l.submatrix(&sub_rows, &sub_cols).determinant();
                let term = l.get(rows[0], c).mul(&minor).expect("same ring");
                expanded = if t % 2 == 0 {
                    expanded.add(&term).expect("same ring")
                } else {
                    expanded.sub(&term).expect("same ring")
                };
            }
            if direct != expanded {
                return false;
            }
        }
    }
    true
}

/// Every generator of I_i(H, X) for an induced subgraph H lies in
/// I_i(G, X), and co-rank is monotone under taking induced subgraphs.
#[allow(clippy::needless_range_loop)]
fn suite_subgraph(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut work = Vec::new();
    for n in 2..=5 {
        for (gi, g) in simple_graphs(n).into_iter().enumerate() {
            work.push((n, gi, g));
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, gi, g)| {
            let mut cases = 0;
            let mut failures = Vec::new();
            let gamma_g = corank(g, z(), cfg)?.gamma;
            // cache Groebner bases of I_i(G) lazily (used only for n <= 4)
            let mut cached: Vec<Option<crate::groebner::GroebnerBasis>> = vec![None; n + 1];
            for subset_mask in 1u32..(1 << n) - 1 {
                let keep: Vec<usize> = (0..*n).filter(|&v| subset_mask & (1 << v) != 0).collect();
                let h = g.induced(&keep);
                let gamma_h = corank(&h, z(), cfg)?.gamma;
                cases += 1;
                if gamma_h > gamma_g {
                    failures.push(format!(
                        "graph #{} on {} vertices, subset {:?}: co-rank grew from {} to {}",
                        gi, n, keep, gamma_g, gamma_h
                    ));
                }
                for i in 1..=h.n() {
                    let gens_h = critical_ideal(&h, i, z(), cfg)?.ideal;
                    if gens_h.is_zero_ideal() {
                        continue;
                    }
                    cases += 1;
                    if *n <= 4 {
                        if cached[i].is_none() {
                            let ig = critical_ideal(g, i, z(), cfg)?.ideal;
                            cached[i] =
                                Some(groebner_basis(&ig, MonomialOrder::DegRevLex, cfg)?);
                        }
                        let gb = cached[i].as_ref().unwrap();
                        for gen in gens_h.generators() {
                            if !normal_form(gen, &gb.elements, MonomialOrder::DegRevLex)
                                .is_zero()
                            {
                                failures.push(format!(
                                    "graph #{} on {} vertices, subset {:?}, index {}: generator escapes",
                                    gi, n, keep, i
                                ));
                                break;
                            }
                        }
                    } else {
                        // the generalized Laplacian of an induced subgraph is a
                        // principal submatrix, so its minors appear verbatim
                        // among the big graph's minors
                        let gens_g = critical_ideal(g, i, z(), cfg)?.ideal;
                        for gen in gens_h.generators() {
                            if !gens_g.generators().contains(gen) {
                                failures.push(format!(
                                    "graph #{} on {} vertices, subset {:?}, index {}: minor missing",
                                    gi, n, keep, i
                                ));
                                break;
                            }
                        }
                    }
                }
            }
            Ok((cases, failures))
        })
        .collect();
    merge(results)
}

/// Triviality of I_j of a blowup equals triviality of the evaluated ideal
/// I_j(G, X) at x_v = 0 (duplicated) / -1 (replicated): exhaustive over
/// connected simple graphs with at most 4 vertices and all sign vectors.
fn suite_thm_rd(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut work = Vec::new();
    for n in 1..=4usize {
        for (gi, g) in connected_simple_graphs(n).into_iter().enumerate() {
            let mut delta = vec![-1i64; n];
            loop {
                work.push((n, gi, g.clone(), TwinVector::from_slice(&delta)));
                let mut t = 0;
                loop {
                    if t == n {
                        break;
                    }
                    delta[t] += 1;
                    if delta[t] <= 1 {
                        break;
                    }
                    delta[t] = -1;
                    t += 1;
                }
                if t == n {
                    break;
                }
            }
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, gi, g, d)| {
            let mut cases = 0;
            let mut failures = Vec::new();
            let big = blowup(g, d)?;
            let l_big = generalized_laplacian(&big, z());
            let l_eval = generalized_laplacian(g, z()).substitute(&phi_assignment(g, d, z()));
            for j in 1..=*n {
                cases += 1;
                let lhs = minor_ideal_triviality(&l_big, j, cfg)?.trivial;
                let rhs = minor_ideal_triviality(&l_eval, j, cfg)?.trivial;
                if lhs != rhs {
                    failures.push(format!(
                        "graph #{} on {} vertices, d={}, j={}: blowup {} vs evaluation {}",
                        gi, n, d, j, lhs, rhs
                    ));
                }
            }
            Ok((cases, failures))
        })
        .collect();
    merge(results)
}

/// gamma(G^d) = gamma(G^supp(d)) <= n on randomized blowups, and the
/// evaluation-based fast path agrees.
fn suite_cor_bound(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let pool: Vec<SignedMultidigraph> = (2..=4)
        .flat_map(connected_simple_graphs)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0b0);
    let mut work = Vec::new();
    for _ in 0..200 {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let d: Vec<i64> = (0..g.n()).map(|_| rng.gen_range(-3..=3i64)).collect();
        work.push((g, TwinVector::from_slice(&d)));
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(g, d)| {
            let mut failures = Vec::new();
            let n = g.n();
            let full = corank(&blowup(g, d)?, z(), cfg)?.gamma;
            let supp = corank(&blowup(g, &d.support())?, z(), cfg)?.gamma;
            let fast = corank_blowup(g, d, z(), cfg, false)?.gamma;
            if full != supp || supp != fast || full > n {
                failures.push(format!(
                    "n={}, d={}: blowup co-rank {}, support co-rank {}, evaluation {} (limit {})",
                    n, d, full, supp, fast, n
                ));
            }
            Ok((1, failures))
        })
        .collect();
    merge(results)
}

/// The expansion-lemma generator families reproduce I_j of iterated twin
/// graphs exactly.
fn suite_lemma_dr(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let graphs: Vec<SignedMultidigraph> = vec![
        build_family(&Family::Complete(2)).unwrap(),
        build_family(&Family::Path(3)).unwrap(),
        build_family(&Family::Complete(3)).unwrap(),
        build_family(&Family::Cycle(4)).unwrap(),
    ];
    let mut work = Vec::new();
    for g in &graphs {
        for v in 0..g.n() {
            for k in 1..=2usize {
                for kind in [TwinKind::Duplicate, TwinKind::Replicate] {
                    for j in 1..=g.n() + k {
                        work.push((g.clone(), v, k, kind, j));
                    }
                }
            }
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(g, v, k, kind, j)| {
            let mut failures = Vec::new();
            let expanded = dup_rep_expanded_ideal(g, *v, *k, *j, *kind, z())?;
            let grown = duplicate_replicate(g, *v, *k, *kind);
            let direct = critical_ideal(&grown, *j, z(), cfg)?.ideal;
            if !ideal_equal(&expanded, &direct, cfg)? {
                failures.push(format!(
                    "{:?} of vertex {} (k={}) on {} vertices at j={}: expansion disagrees",
                    kind,
                    v,
                    k,
                    g.n(),
                    j
                ));
            }
            Ok((1, failures))
        })
        .collect();
    merge(results)
}

/// The stabilization theorems: the bounded difference
/// 0 <= gamma_twin - gamma_v <= 2, the stabilized generator family, and
/// the below-threshold negative controls.
fn suite_deq_req(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    // bounded difference on all connected graphs with <= 5 vertices
    let mut work = Vec::new();
    for n in 2..=5usize {
        for (gi, g) in connected_simple_graphs(n).into_iter().enumerate() {
            work.push((n, gi, g));
        }
    }
    let diff_results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, gi, g)| {
            let mut cases = 0;
            let mut failures = Vec::new();
            if corank(g, z(), cfg)?.gamma < 2 {
                return Ok((0, failures));
            }
            for v in 0..*n {
                let gamma_v = corank(&g.delete_vertex(v), z(), cfg)?.gamma;
                for kind in [TwinKind::Duplicate, TwinKind::Replicate] {
                    let gamma_t =
                        corank(&duplicate_replicate(g, v, 1, kind), z(), cfg)?.gamma;
                    cases += 1;
                    if gamma_t < gamma_v || gamma_t > gamma_v + 2 {
                        failures.push(format!(
                            "graph #{} on {} vertices, vertex {}, {:?}: gamma_twin={} vs gamma_v={}",
                            gi, n, v, kind, gamma_t, gamma_v
                        ));
                    }
                }
            }
            Ok((cases, failures))
        })
        .collect();
    let (c, f) = merge(diff_results)?;
    cases += c;
    failures.extend(f);

    // stabilized family equals minor enumeration on a growable example
    let c4 = build_family(&Family::Cycle(4)).unwrap();
    for kind in [TwinKind::Duplicate, TwinKind::Replicate] {
        for k in 1..=2usize {
            for i in 0..=1usize {
                let st = stabilized_twin_ideal(&c4, 0, k, i, kind, z(), cfg)?;
                let grown = duplicate_replicate(&c4, 0, st.twins, kind);
                let direct = critical_ideal(&grown, st.index, z(), cfg)?.ideal;
                cases += 1;
                if !ideal_equal(&st.ideal, &direct, cfg)? {
                    failures.push(format!(
                        "4-cycle {:?} k={} i={}: stabilized form disagrees",
                        kind, k, i
                    ));
                }
            }
        }
    }

    // negative controls: one twin copy sits below the stabilization
    // threshold, so the stabilized form must NOT describe it
    let fig6 = builtins::fig6();
    let st = stabilized_twin_ideal(&fig6, 0, 2, 0, TwinKind::Duplicate, z(), cfg)?;
    let below = critical_ideal(&duplicate_replicate(&fig6, 0, 1, TwinKind::Duplicate), st.index, z(), cfg)?
        .ideal;
    cases += 1;
    if ideal_equal(&st.ideal, &below, cfg)? {
        failures.push("duplication control: stabilized form matched below threshold".into());
    }
    let fig7 = builtins::fig7();
    let st = stabilized_twin_ideal(&fig7, 0, 1, 0, TwinKind::Replicate, z(), cfg)?;
    let below = critical_ideal(
        &duplicate_replicate(&fig7, 0, 1, TwinKind::Replicate),
        st.index,
        z(),
        cfg,
    )?
    .ideal;
    cases += 1;
    if ideal_equal(&st.ideal, &below, cfg)? {
        failures.push("replication control: stabilized form matched below threshold".into());
    }
    Ok((cases, failures))
}

/// Closed forms for complete graphs, complete bipartite graphs, and
/// disjoint unions all equal brute-force minor enumeration.
fn suite_closed_forms(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    type WorkItem = Box<dyn Fn() -> Result<(usize, Vec<String>), CriticalError> + Send + Sync>;
    let mut work: Vec<WorkItem> = Vec::new();
    for n in 3..=5usize {
        for j in 1..=n {
            let cfg = *cfg;
            work.push(Box::new(move || {
                let kn = build_family(&Family::Complete(n)).unwrap();
                let formula = closed_form_complete(n, j, z())?;
                let direct = critical_ideal(&kn, j, z(), &cfg)?.ideal;
                let ok = ideal_equal(&formula, &direct, &cfg)?;
                Ok((
                    1,
                    if ok {
                        vec![]
                    } else {
                        vec![format!("complete n={} j={}", n, j)]
                    },
                ))
            }));
        }
    }
    for n in 2..=4usize {
        for m in n..=4usize {
            for j in 2..=n + m {
                let cfg = *cfg;
                work.push(Box::new(move || {
                    let g = build_family(&Family::CompleteBipartite(n, m)).unwrap();
                    let formula = closed_form_bipartite(n, m, j, z())?;
                    let direct = critical_ideal(&g, j, z(), &cfg)?.ideal;
                    let ok = ideal_equal(&formula, &direct, &cfg)?;
                    Ok((
                        1,
                        if ok {
                            vec![]
                        } else {
                            vec![format!("bipartite n={} m={} j={}", n, m, j)]
                        },
                    ))
                }));
            }
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> =
        work.par_iter().map(|f| f()).collect();
    let (mut cases, mut failures) = merge(results)?;

    // 50 random disjoint unions with <= 4 vertices per part
    let pool: Vec<SignedMultidigraph> = (1..=4).flat_map(connected_simple_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd15c);
    let mut union_work = Vec::new();
    for _ in 0..50 {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let h = pool[rng.gen_range(0..pool.len())].clone();
        let j = rng.gen_range(1..=g.n() + h.n());
        union_work.push((g, h, j));
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = union_work
        .par_iter()
        .map(|(g, h, j)| {
            let (u, formula) = closed_form_union(g, h, *j, z())?;
            let direct = critical_ideal(&u, *j, z(), cfg)?.ideal;
            let ok = ideal_equal(&formula, &direct, cfg)?;
            Ok((
                1,
                if ok {
                    vec![]
                } else {
                    vec![format!(
                        "union of {} and {} vertices at j={}",
                        g.n(),
                        h.n(),
                        j
                    )]
                },
            ))
        })
        .collect();
    let (c, f) = merge(results)?;
    cases += c;
    failures.extend(f);
    Ok((cases, failures))
}

/// Co-rank is additive over disjoint unions (exhaustive over pairs of
/// connected graphs with <= 4 vertices each).
fn suite_union_additivity(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let pool: Vec<SignedMultidigraph> = (1..=4).flat_map(connected_simple_graphs).collect();
    let mut work = Vec::new();
    for (i, g) in pool.iter().enumerate() {
        for h in &pool[i..] {
            work.push((g.clone(), h.clone()));
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(g, h)| {
            let mut failures = Vec::new();
            let sum = corank(g, z(), cfg)?.gamma + corank(h, z(), cfg)?.gamma;
            let joint = corank(&disjoint_union(g, h), z(), cfg)?.gamma;
            if sum != joint {
                failures.push(format!(
                    "union of {} and {} vertices: joint co-rank {} vs sum {}",
                    g.n(),
                    h.n(),
                    joint,
                    sum
                ));
            }
            Ok((1, failures))
        })
        .collect();
    merge(results)
}

/// gamma <= 2(n - omega) + 1 and gamma <= 2(n - alpha) on connected
/// simple graphs with <= 6 vertices.
fn suite_bounds(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut work = Vec::new();
    for n in 2..=6usize {
        for (gi, g) in connected_simple_graphs(n).into_iter().enumerate() {
            work.push((n, gi, g));
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, gi, g)| {
            let mut failures = Vec::new();
            let gamma = corank(g, z(), cfg)?.gamma;
            let omega = g.clique_number();
            let alpha = g.independence_number();
            if gamma > 2 * (n - omega) + 1 {
                failures.push(format!(
                    "graph #{} on {} vertices: gamma={} exceeds 2(n-omega)+1 with omega={}",
                    gi, n, gamma, omega
                ));
            }
            if gamma > 2 * (n - alpha) {
                failures.push(format!(
                    "graph #{} on {} vertices: gamma={} exceeds 2(n-alpha) with alpha={}",
                    gi, n, gamma, alpha
                ));
            }
            Ok((1, failures))
        })
        .collect();
    merge(results)
}

/// Twin-free trees with n <= 8 vertices have co-rank at least
/// ceil((n+2)/2).
fn suite_tree_proposition(cfg: &GbConfig) -> Result<(usize, Vec<String>), CriticalError> {
    let mut work = Vec::new();
    for n in 4..=8usize {
        for (ti, t) in trees(n).into_iter().enumerate() {
            if is_twin_free(&t) {
                work.push((n, ti, t));
            }
        }
    }
    let results: Vec<Result<(usize, Vec<String>), CriticalError>> = work
        .par_iter()
        .map(|(n, ti, t)| {
            let mut failures = Vec::new();
            let gamma = corank(t, z(), cfg)?.gamma;
            let bound = (n + 2).div_ceil(2);
            if gamma < bound {
                failures.push(format!(
                    "tree #{} on {} vertices: gamma={} below bound {}",
                    ti, n, gamma, bound
                ));
            }
            Ok((1, failures))
        })
        .collect();
    merge(results)
}

fn merge(
    results: Vec<Result<(usize, Vec<String>), CriticalError>>,
) -> Result<(usize, Vec<String>), CriticalError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in results {
        let (c, f) = r?;
        cases += c;
        failures.extend(f);
    }
    Ok((cases, failures))
}

// ---------------------------------------------------------------------------
// conjecture scans
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    /// Twin-free connected graphs: gamma >= floor(n/2).
    TwinFreeBound,
    /// Twin-free trees: gamma >= ceil((n+2)/2).
    TreeBound,
}

impl Conjecture {
    pub fn parse(s: &str) -> Option<Conjecture> {
        match s {
            "twinfree-bound" => Some(Conjecture::TwinFreeBound),
            "tree-bound" => Some(Conjecture::TreeBound),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Conjecture::TwinFreeBound => "twinfree-bound",
            Conjecture::TreeBound => "tree-bound",
        }
    }
}

#[derive(Clone, Debug)]
pub enum ScanOutcome {
    /// The graph does not satisfy the conjecture's hypotheses.
    Skipped(String),
    Checked {
        gamma: usize,
        bound: usize,
        holds: bool,
    },
}

/// Evaluate one graph against a conjectured lower bound. A failure here is
/// a counterexample, never a proof of anything.
pub fn scan_graph(
    g: &SignedMultidigraph,
    conjecture: Conjecture,
    cfg: &GbConfig,
) -> Result<ScanOutcome, CriticalError> {
    let n = g.n();
    match conjecture {
        Conjecture::TwinFreeBound => {
            if !g.is_simple_undirected() || !g.is_connected() {
                return Ok(ScanOutcome::Skipped("not connected simple".into()));
            }
            if !is_twin_free(g) {
                return Ok(ScanOutcome::Skipped("has twin vertices".into()));
            }
            let gamma = corank(g, z(), cfg)?.gamma;
            let bound = n / 2;
            Ok(ScanOutcome::Checked {
                gamma,
                bound,
                holds: gamma >= bound,
            })
        }
        Conjecture::TreeBound => {
            if !g.is_simple_undirected()
                || !g.is_connected()
                || g.edge_count_underlying() != n.saturating_sub(1)
            {
                return Ok(ScanOutcome::Skipped("not a tree".into()));
            }
            if !is_twin_free(g) {
                return Ok(ScanOutcome::Skipped("has twin vertices".into()));
            }
            let gamma = corank(g, z(), cfg)?.gamma;
            let bound = (n + 2).div_ceil(2);
            Ok(ScanOutcome::Checked {
                gamma,
                bound,
                holds: gamma >= bound,
            })
        }
    }
}

/// Exercise `all_minors` determinism under the parallel scheduler: results
/// sorted canonically do not depend on thread interleaving.
pub fn minors_deterministic(g: &SignedMultidigraph, j: usize) -> bool {
    let l = generalized_laplacian(g, z());
    let a = Ideal::new(z(), all_minors(&l, j));
    let b = Ideal::new(z(), all_minors(&l, j));
    a.generators() == b.generators()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GbConfig {
        GbConfig::default()
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &cfg()).is_err());
    }

    #[test]
    fn joindet_suite_passes() {
        let r = run_suite("joindet", &cfg()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.cases, 300);
    }

    #[test]
    fn lemma_dr_suite_passes() {
        let r = run_suite("lemma-dr", &cfg()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.cases > 50);
    }

    #[test]
    fn scan_outcomes_classify_graphs() {
        let p4 = build_family(&Family::Path(4)).unwrap();
        match scan_graph(&p4, Conjecture::TreeBound, &cfg()).unwrap() {
            ScanOutcome::Checked {
                gamma,
                bound,
                holds,
            } => {
                assert_eq!(gamma, 3);
                assert_eq!(bound, 3);
                assert!(holds);
            }
            other => panic!("expected a checked outcome, got {:?}", other),
        }
        let p3 = build_family(&Family::Path(3)).unwrap();
        assert!(matches!(
            scan_graph(&p3, Conjecture::TreeBound, &cfg()).unwrap(),
            ScanOutcome::Skipped(_)
        ));
    }

    #[test]
    fn minor_collection_is_deterministic() {
        let g = build_family(&Family::Cycle(5)).unwrap();
        for j in 1..=5 {
            assert!(minors_deterministic(&g, j));
        }
    }
}

//! Signed multidigraphs, the graph families used throughout, twin
//! operations (duplication, replication, blowups), twin detection, and
//! cograph cotrees.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::polyring::VarId;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("loops are not allowed (vertex {0})")]
    Loop(String),
    #[error("zero weight on arc {0} -> {1}")]
    ZeroWeight(String, String),
    #[error("invalid family spec: {0}")]
    InvalidFamily(String),
    #[error("graph is not simple undirected: {0}")]
    NotSimple(String),
    #[error("graph contains an induced P4, not a cograph")]
    NotCograph,
}

/// A signed multidigraph with net integer arc weights.
///
/// Parallel arcs between an ordered pair collapse to the net signed
/// multiplicity `w_uv`, which is the only quantity the generalized
/// Laplacian sees. Vertex order is fixed at construction and drives
/// variable order everywhere downstream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMultidigraph {
    labels: Vec<VarId>,
    // row-major n*n matrix of net weights; diagonal always zero
    weights: Vec<i64>,
}

impl SignedMultidigraph {
    pub fn empty(n: usize) -> SignedMultidigraph {
        SignedMultidigraph {
            labels: (1..=n as u32).map(VarId::base).collect(),
            weights: vec![0; n * n],
        }
    }

    pub fn with_labels(labels: Vec<VarId>) -> SignedMultidigraph {
        let n = labels.len();
        SignedMultidigraph {
            labels,
            weights: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VarId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> VarId {
        self.labels[i]
    }

    /// Index of the vertex with the given label.
    pub fn index_of(&self, v: VarId) -> Option<usize> {
        self.labels.iter().position(|&l| l == v)
    }

    pub fn weight(&self, u: usize, v: usize) -> i64 {
        self.weights[u * self.n() + v]
    }

    /// Add `w` to the net weight of the arc u -> v.
    pub fn add_arc(&mut self, u: usize, v: usize, w: i64) {
        assert_ne!(u, v, "no loops");
        let n = self.n();
        self.weights[u * n + v] += w;
    }

    /// Add a symmetric edge of weight `w` (both directions).
    pub fn add_edge(&mut self, u: usize, v: usize, w: i64) {
        self.add_arc(u, v, w);
        self.add_arc(v, u, w);
    }

    /// True if some arc joins u and v in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.weight(u, v) != 0 || self.weight(v, u) != 0
    }

    /// Number of undirected edges of the underlying simple graph.
    pub fn edge_count_underlying(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacent(u, v))
            .count()
    }

    /// All weights symmetric and in {0, 1}: a simple undirected graph.
    pub fn is_simple_undirected(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| {
            (0..n).all(|v| {
                let w = self.weight(u, v);
                (w == 0 || w == 1) && w == self.weight(v, u)
            })
        })
    }

    /// Induced subgraph on the given vertex indices (order preserved).
    pub fn induced(&self, keep: &[usize]) -> SignedMultidigraph {
        let mut g = SignedMultidigraph::with_labels(keep.iter().map(|&i| self.labels[i]).collect());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if a != b {
                    let w = self.weight(i, j);
                    if w != 0 {
                        g.add_arc(a, b, w);
                    }
                }
            }
        }
        g
    }

    /// Delete one vertex.
    pub fn delete_vertex(&self, v: usize) -> SignedMultidigraph {
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != v).collect();
        self.induced(&keep)
    }

    /// Complement of the underlying simple graph (panics on non-simple).
    pub fn complement_simple(&self) -> SignedMultidigraph {
        assert!(self.is_simple_undirected());
        let n = self.n();
        let mut g = SignedMultidigraph::with_labels(self.labels.clone());
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v, 1);
                }
            }
        }
        g
    }

    /// Connected components of the underlying undirected graph, as sorted
    /// index lists.
    #[allow(clippy::needless_range_loop)]
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in 0..n {
                    if !seen[v] && self.adjacent(u, v) {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Next unused copy index for a base vertex name.
    fn next_copy(&self, base: u32) -> u32 {
        self.labels
            .iter()
            .filter(|l| l.vertex == base)
            .map(|l| l.copy + 1)
            .max()
            .unwrap_or(1)
    }

    /// Append one twin of vertex `v`: a new vertex with v's exact in/out
    /// weights to every other vertex. `duplicate` leaves the new vertex and
    /// v non-adjacent; `replicate` additionally adds symmetric weight-1
    /// arcs between them.
    fn add_twin(&mut self, v: usize, kind: TwinKind) {
        let n = self.n();
        let base = self.labels[v].vertex;
        let new_label = VarId::new(base, self.next_copy(base));
        let mut w = vec![0i64; (n + 1) * (n + 1)];
        for u in 0..n {
            for t in 0..n {
                w[u * (n + 1) + t] = self.weights[u * n + t];
            }
        }
        for u in 0..n {
            if u != v {
                w[n * (n + 1) + u] = self.weights[v * n + u];
                w[u * (n + 1) + n] = self.weights[u * n + v];
            }
        }
        if kind == TwinKind::Replicate {
            w[n * (n + 1) + v] = 1;
            w[v * (n + 1) + n] = 1;
        }
        self.labels.push(new_label);
        self.weights = w;
    }

    /// Maximum clique size of the underlying simple graph (desk scale).
    pub fn clique_number(&self) -> usize {
        let n = self.n();
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if verts.len() <= best {
                continue;
            }
            let ok = verts
                .iter()
                .enumerate()
                .all(|(a, &u)| verts[a + 1..].iter().all(|&v| self.adjacent(u, v)));
            if ok {
                best = verts.len();
            }
        }
        best
    }

    /// Maximum independent set size of the underlying simple graph.
    pub fn independence_number(&self) -> usize {
        let n = self.n();
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if verts.len() <= best {
                continue;
            }
            let ok = verts
                .iter()
                .enumerate()
                .all(|(a, &u)| verts[a + 1..].iter().all(|&v| !self.adjacent(u, v)));
            if ok {
                best = verts.len();
            }
        }
        best
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwinKind {
    Duplicate,
    Replicate,
}

impl fmt::Display for TwinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwinKind::Duplicate => write!(f, "duplicate"),
            TwinKind::Replicate => write!(f, "replicate"),
        }
    }
}

/// d^k(G, v) or r^k(G, v): add k twins of v of the given kind. New
/// vertices are labeled v^1..v^k and appended after all existing vertices.
pub fn duplicate_replicate(
    g: &SignedMultidigraph,
    v: usize,
    k: usize,
    kind: TwinKind,
) -> SignedMultidigraph {
    assert!(v < g.n(), "unknown vertex index {}", v);
    assert!(k >= 1);
    let mut out = g.clone();
    for _ in 0..k {
        out.add_twin(v, kind);
    }
    out
}

/// An integer vector indexed by base vertex names; omitted vertices are 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwinVector {
    entries: BTreeMap<u32, i64>,
}

impl TwinVector {
    pub fn new(entries: BTreeMap<u32, i64>) -> TwinVector {
        TwinVector { entries }
    }

    pub fn from_slice(values: &[i64]) -> TwinVector {
        TwinVector {
            entries: values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as u32 + 1, v))
                .collect(),
        }
    }

    pub fn get(&self, base: u32) -> i64 {
        self.entries.get(&base).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|&v| v == 0)
    }

    /// Componentwise sign vector in {0, +-1}.
    pub fn support(&self) -> TwinVector {
        TwinVector {
            entries: self
                .entries
                .iter()
                .map(|(&k, &v)| (k, v.signum()))
                .collect(),
        }
    }

    /// Every named vertex must exist in the graph.
    pub fn validate(&self, g: &SignedMultidigraph) -> Result<(), GraphError> {
        for &base in self.entries.keys() {
            if g.index_of(VarId::base(base)).is_none() {
                return Err(GraphError::UnknownVertex(format!("v{}", base)));
            }
        }
        Ok(())
    }

    /// Parse `v1:-1,v2:2,v3:0` (the `v` prefix is optional).
    pub fn parse(text: &str) -> Result<TwinVector, GraphError> {
        let mut entries = BTreeMap::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, val) = part
                .split_once(':')
                .ok_or_else(|| GraphError::Parse(format!("expected `v:<int>` in {:?}", part)))?;
            let name = name.trim().strip_prefix('v').unwrap_or(name.trim());
            let base: u32 = name
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex name {:?}", name)))?;
            let d: i64 = val
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad integer {:?}", val)))?;
            if entries.insert(base, d).is_some() {
                return Err(GraphError::Parse(format!("vertex v{} repeated", base)));
            }
        }
        Ok(TwinVector { entries })
    }
}

impl fmt::Display for TwinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "v{}:{}", k, v)?;
            first = false;
        }
        Ok(())
    }
}

/// The blowup G^d: duplicate v d_v times when d_v > 0, replicate it -d_v
/// times when d_v < 0, leave it alone when d_v = 0. Copies are appended
/// in vertex order.
pub fn blowup(g: &SignedMultidigraph, d: &TwinVector) -> Result<SignedMultidigraph, GraphError> {
    d.validate(g)?;
    let mut out = g.clone();
    for i in 0..g.n() {
        let dv = d.get(g.label(i).vertex);
        if dv > 0 {
            out = duplicate_replicate(&out, i, dv as usize, TwinKind::Duplicate);
        } else if dv < 0 {
            out = duplicate_replicate(&out, i, (-dv) as usize, TwinKind::Replicate);
        }
    }
    Ok(out)
}

/// All twin pairs of the graph, as (u, v, kind) with u < v.
///
/// Two vertices are duplicated (false) twins when their weight rows and
/// columns agree everywhere off {u, v} and there is no arc between them;
/// replicated (true) twins additionally carry symmetric weight-1 arcs.
/// Exact weights are compared, not just adjacency patterns.
pub fn twin_pairs(g: &SignedMultidigraph) -> Vec<(usize, usize, TwinKind)> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let same_off = (0..n).filter(|&k| k != u && k != v).all(|k| {
                g.weight(u, k) == g.weight(v, k) && g.weight(k, u) == g.weight(k, v)
            });
            if !same_off {
                continue;
            }
            if g.weight(u, v) == 0 && g.weight(v, u) == 0 {
                out.push((u, v, TwinKind::Duplicate));
            } else if g.weight(u, v) == 1 && g.weight(v, u) == 1 {
                out.push((u, v, TwinKind::Replicate));
            }
        }
    }
    out
}

pub fn is_twin_free(g: &SignedMultidigraph) -> bool {
    twin_pairs(g).is_empty()
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SignedMultidigraph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edgelist(text),
        GraphFormat::Graph6 => parse_graph6(text.trim()),
    }
}

/// Edge-list format: a header `n <count>`, then `edge u v [w]` (symmetric,
/// default weight 1) or `arc u v w` lines. `#` starts a comment. Vertices
/// are 1-based.
pub fn parse_edgelist(text: &str) -> Result<SignedMultidigraph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let mut it = header.split_whitespace();
    if it.next() != Some("n") {
        return Err(GraphError::Parse(format!(
            "expected header `n <count>`, got {:?}",
            header
        )));
    }
    let n: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GraphError::Parse("bad vertex count".into()))?;
    if it.next().is_some() {
        return Err(GraphError::Parse("trailing tokens in header".into()));
    }
    let mut g = SignedMultidigraph::empty(n);
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_vertex = |s: &str| -> Result<usize, GraphError> {
            let v: usize = s
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex {:?}", s)))?;
            if v < 1 || v > n {
                return Err(GraphError::UnknownVertex(format!("v{}", v)));
            }
            Ok(v - 1)
        };
        let parse_weight = |s: &str| -> Result<i64, GraphError> {
            s.parse()
                .map_err(|_| GraphError::Parse(format!("bad weight {:?}", s)))
        };
        match toks.as_slice() {
            ["edge", u, v] | ["edge", u, v, _] => {
                let (ui, vi) = (parse_vertex(u)?, parse_vertex(v)?);
                let w = if toks.len() == 4 {
                    parse_weight(toks[3])?
                } else {
                    1
                };
                if ui == vi {
                    return Err(GraphError::Loop(format!("v{}", ui + 1)));
                }
                if w == 0 {
                    return Err(GraphError::ZeroWeight(
                        format!("v{}", ui + 1),
                        format!("v{}", vi + 1),
                    ));
                }
                g.add_edge(ui, vi, w);
            }
            ["arc", u, v, w] => {
                let (ui, vi) = (parse_vertex(u)?, parse_vertex(v)?);
                let w = parse_weight(w)?;
                if ui == vi {
                    return Err(GraphError::Loop(format!("v{}", ui + 1)));
                }
                if w == 0 {
                    return Err(GraphError::ZeroWeight(
                        format!("v{}", ui + 1),
                        format!("v{}", vi + 1),
                    ));
                }
                g.add_arc(ui, vi, w);
            }
            _ => {
                return Err(GraphError::Parse(format!("malformed line {:?}", line)));
            }
        }
    }
    Ok(g)
}

/// graph6 decoder for simple undirected graphs with n < 63.
pub fn parse_graph6(line: &str) -> Result<SignedMultidigraph, GraphError> {
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty graph6 line".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(GraphError::Parse(format!("invalid graph6 byte {}", b)));
        }
    }
    let (n, rest) = if bytes[0] == 126 {
        return Err(GraphError::Parse("graph6 with n >= 63 not supported".into()));
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let need = n * (n - 1) / 2;
    let have = rest.len() * 6;
    if have < need || rest.len() != need.div_ceil(6) {
        return Err(GraphError::Parse(format!(
            "graph6 body length {} does not match n={}",
            rest.len(),
            n
        )));
    }
    let mut g = SignedMultidigraph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = rest[k / 6] - 63;
            let bit = (byte >> (5 - k % 6)) & 1;
            if bit == 1 {
                g.add_edge(u, v, 1);
            }
            k += 1;
        }
    }
    // trailing padding bits must be zero
    while k < rest.len() * 6 {
        let byte = rest[k / 6] - 63;
        if (byte >> (5 - k % 6)) & 1 != 0 {
            return Err(GraphError::Parse("nonzero graph6 padding".into()));
        }
        k += 1;
    }
    Ok(g)
}

/// graph6 encoder (inverse of [`parse_graph6`]); requires a simple
/// undirected graph with n < 63.
pub fn to_graph6(g: &SignedMultidigraph) -> Result<String, GraphError> {
    if !g.is_simple_undirected() {
        return Err(GraphError::NotSimple(
            "graph6 encodes simple undirected graphs only".into(),
        ));
    }
    let n = g.n();
    if n >= 63 {
        return Err(GraphError::Parse("graph6 with n >= 63 not supported".into()));
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc <<= 1;
            if g.adjacent(u, v) {
                acc |= 1;
            }
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).unwrap())
}

// ---------------------------------------------------------------------------
// families
// ---------------------------------------------------------------------------

/// Graph family constructors.
#[derive(Clone, Debug)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Trivial(usize),
    CompleteBipartite(usize, usize),
    Threshold(usize),
    Hypercube3,
}

pub fn build_family(spec: &Family) -> Result<SignedMultidigraph, GraphError> {
    match *spec {
        Family::Path(n) => {
            if n < 1 {
                return Err(GraphError::InvalidFamily("path needs n >= 1".into()));
            }
            let mut g = SignedMultidigraph::empty(n);
            for i in 0..n.saturating_sub(1) {
                g.add_edge(i, i + 1, 1);
            }
            Ok(g)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::InvalidFamily("cycle needs n >= 3".into()));
            }
            let mut g = SignedMultidigraph::empty(n);
            for i in 0..n {
                g.add_edge(i, (i + 1) % n, 1);
            }
            Ok(g)
        }
        Family::Complete(n) => {
            if n < 1 {
                return Err(GraphError::InvalidFamily("complete needs n >= 1".into()));
            }
            let mut g = SignedMultidigraph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    g.add_edge(u, v, 1);
                }
            }
            Ok(g)
        }
        Family::Trivial(n) => {
            if n < 1 {
                return Err(GraphError::InvalidFamily("trivial needs n >= 1".into()));
            }
            Ok(SignedMultidigraph::empty(n))
        }
        Family::CompleteBipartite(n, m) => {
            if n < 1 || m < 1 {
                return Err(GraphError::InvalidFamily(
                    "complete bipartite needs n, m >= 1".into(),
                ));
            }
            // K_{n,m} as the blowup K2^(n-1, m-1): sides are the copies of
            // v1 and v2
            let k2 = build_family(&Family::Complete(2))?;
            let mut g = k2;
            if n > 1 {
                g = duplicate_replicate(&g, 0, n - 1, TwinKind::Duplicate);
            }
            if m > 1 {
                g = duplicate_replicate(&g, 1, m - 1, TwinKind::Duplicate);
            }
            Ok(g)
        }
        Family::Threshold(n) => {
            if n < 1 {
                return Err(GraphError::InvalidFamily("threshold needs n >= 1".into()));
            }
            // Th_1 trivial; Th_{2k} = v_{2k} join Th_{2k-1};
            // Th_{2k+1} = v_{2k+1} union Th_{2k}
            let mut g = SignedMultidigraph::empty(1);
            for k in 2..=n {
                // merge_labels shifts the second operand's base names past
                // the first's, so the fresh single vertex becomes v_k
                let v = SignedMultidigraph::empty(1);
                g = if k % 2 == 0 {
                    join(&g, &v)
                } else {
                    disjoint_union(&g, &v)
                };
            }
            Ok(g)
        }
        Family::Hypercube3 => {
            let mut g = SignedMultidigraph::empty(8);
            for u in 0..8usize {
                for v in (u + 1)..8 {
                    if (u ^ v).count_ones() == 1 {
                        g.add_edge(u, v, 1);
                    }
                }
            }
            Ok(g)
        }
    }
}

fn merge_labels(g: &SignedMultidigraph, h: &SignedMultidigraph) -> Vec<VarId> {
    let shift = g.labels().iter().map(|l| l.vertex).max().unwrap_or(0);
    let mut labels = g.labels().to_vec();
    labels.extend(h.labels().iter().map(|l| VarId::new(l.vertex + shift, l.copy)));
    labels
}

/// Disjoint union; the second graph's base vertex names are shifted past
/// the first's.
pub fn disjoint_union(g: &SignedMultidigraph, h: &SignedMultidigraph) -> SignedMultidigraph {
    let mut out = SignedMultidigraph::with_labels(merge_labels(g, h));
    let ng = g.n();
    for u in 0..ng {
        for v in 0..ng {
            if u != v && g.weight(u, v) != 0 {
                out.add_arc(u, v, g.weight(u, v));
            }
        }
    }
    for u in 0..h.n() {
        for v in 0..h.n() {
            if u != v && h.weight(u, v) != 0 {
                out.add_arc(ng + u, ng + v, h.weight(u, v));
            }
        }
    }
    out
}

/// Join: disjoint union plus all symmetric weight-1 cross edges.
pub fn join(g: &SignedMultidigraph, h: &SignedMultidigraph) -> SignedMultidigraph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, g.n() + v, 1);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// cotrees
// ---------------------------------------------------------------------------

/// Canonical cotree of a cograph: alternating union/join internal nodes
/// with >= 2 children each, children sorted by subtree signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cotree {
    Leaf(VarId),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    /// Deterministic signature used to sort children canonically.
    pub fn signature(&self) -> String {
        match self {
            Cotree::Leaf(v) => format!("L{}", v),
            Cotree::Union(cs) => {
                let inner: Vec<String> = cs.iter().map(Cotree::signature).collect();
                format!("U({})", inner.join(","))
            }
            Cotree::Join(cs) => {
                let inner: Vec<String> = cs.iter().map(Cotree::signature).collect();
                format!("J({})", inner.join(","))
            }
        }
    }

    pub fn leaves(&self) -> Vec<VarId> {
        match self {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Union(cs) | Cotree::Join(cs) => {
                cs.iter().flat_map(Cotree::leaves).collect()
            }
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Cotree::Leaf(_) => 0,
            Cotree::Union(cs) | Cotree::Join(cs) => {
                1 + cs.iter().map(Cotree::height).max().unwrap_or(0)
            }
        }
    }

    /// Rebuild the cograph: vertices are the leaves (in the order given by
    /// `labels`), u ~ v iff their lowest common ancestor is a join node.
    pub fn to_graph(&self, labels: &[VarId]) -> SignedMultidigraph {
        let mut g = SignedMultidigraph::with_labels(labels.to_vec());
        let mut pairs: Vec<(VarId, VarId)> = Vec::new();
        collect_join_pairs(self, &mut pairs);
        for (a, b) in pairs {
            let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
            g.add_edge(i, j, 1);
        }
        g
    }

    /// Pretty single-line rendering, e.g. `join(union(v1,v2),v3)`.
    pub fn render(&self) -> String {
        match self {
            Cotree::Leaf(v) => {
                if v.copy == 0 {
                    format!("v{}", v.vertex)
                } else {
                    format!("v{}_{}", v.vertex, v.copy)
                }
            }
            Cotree::Union(cs) => {
                let inner: Vec<String> = cs.iter().map(Cotree::render).collect();
                format!("union({})", inner.join(","))
            }
            Cotree::Join(cs) => {
                let inner: Vec<String> = cs.iter().map(Cotree::render).collect();
                format!("join({})", inner.join(","))
            }
        }
    }
}

fn collect_join_pairs(t: &Cotree, pairs: &mut Vec<(VarId, VarId)>) {
    match t {
        Cotree::Leaf(_) => {}
        Cotree::Union(cs) => {
            for c in cs {
                collect_join_pairs(c, pairs);
            }
        }
        Cotree::Join(cs) => {
            for (i, a) in cs.iter().enumerate() {
                for b in &cs[i + 1..] {
                    for u in a.leaves() {
                        for v in b.leaves() {
                            pairs.push((u, v));
                        }
                    }
                }
            }
            for c in cs {
                collect_join_pairs(c, pairs);
            }
        }
    }
}

/// Cotree via the standard recursion: disconnected graphs decompose as a
/// union of components, graphs with disconnected complement as a join of
/// co-components, single vertices are leaves; anything else contains an
/// induced P4 and is rejected.
pub fn cotree(g: &SignedMultidigraph) -> Result<Cotree, GraphError> {
    if !g.is_simple_undirected() {
        return Err(GraphError::NotSimple(
            "cotrees are defined for simple undirected graphs".into(),
        ));
    }
    let t = cotree_rec(g)?;
    Ok(canonicalize(t))
}

fn cotree_rec(g: &SignedMultidigraph) -> Result<Cotree, GraphError> {
    if g.n() == 1 {
        return Ok(Cotree::Leaf(g.label(0)));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|c| cotree_rec(&g.induced(c)))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Cotree::Union(children));
    }
    let co = g.complement_simple();
    let cocomps = co.components();
    if cocomps.len() > 1 {
        let children = cocomps
            .iter()
            .map(|c| cotree_rec(&g.induced(c)))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Cotree::Join(children));
    }
    Err(GraphError::NotCograph)
}

fn canonicalize(t: Cotree) -> Cotree {
    match t {
        Cotree::Leaf(v) => Cotree::Leaf(v),
        Cotree::Union(cs) => {
            let mut cs: Vec<Cotree> = cs.into_iter().map(canonicalize).collect();
            cs.sort_by_key(Cotree::signature);
            Cotree::Union(cs)
        }
        Cotree::Join(cs) => {
            let mut cs: Vec<Cotree> = cs.into_iter().map(canonicalize).collect();
            cs.sort_by_key(Cotree::signature);
            Cotree::Join(cs)
        }
    }
}

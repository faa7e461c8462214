//! Metric graphs: finite edges with lengths, half-lines reaching vertices at
//! infinity, and the structural checks the analysis relies on (connectivity,
//! Assumption (H) in both formulations, bubble-tower detection).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::GraphError;

/// Index of a vertex within its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Edge metric data: a finite positive length, or a half-line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeKind {
    Finite(f64),
    HalfLine,
}

/// An undirected edge between two vertices. A half-line must have its second
/// endpoint at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_halfline(&self) -> bool {
        matches!(self.kind, EdgeKind::HalfLine)
    }

    /// Finite length, if any.
    pub fn length(&self) -> Option<f64> {
        match self.kind {
            EdgeKind::Finite(l) => Some(l),
            EdgeKind::HalfLine => None,
        }
    }
}

/// One end of an edge as seen from a vertex adjacency list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub edge: usize,
    /// 0 or 1: which entry of `Edge::ends` sits at this vertex.
    pub end: usize,
}

/// A metric graph: named vertices (some flagged at infinity), undirected
/// edges carrying lengths or half-line markers, and adjacency. Immutable
/// after construction; all analyses are pure functions of the structure.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph {
    names: Vec<String>,
    infinity: Vec<bool>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeEnd>>,
}

/// Incremental construction for [`MetricGraph`]. Invalid graphs are
/// representable on purpose: `validate` reports their defects as data.
#[derive(Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    infinity: Vec<bool>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.infinity.push(false);
        VertexId(self.names.len() - 1)
    }

    pub fn infinity(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.infinity.push(true);
        VertexId(self.names.len() - 1)
    }

    pub fn edge(&mut self, a: VertexId, b: VertexId, length: f64) -> usize {
        self.edges.push(Edge {
            ends: [a, b],
            kind: EdgeKind::Finite(length),
        });
        self.edges.len() - 1
    }

    /// Half-line from `a` out to the infinity vertex `w`. Stored with the
    /// finite endpoint first whenever exactly one endpoint is at infinity,
    /// so serialization is canonical regardless of argument order.
    pub fn halfline(&mut self, a: VertexId, w: VertexId) -> usize {
        let ends = if self.infinity[a.0] && !self.infinity[w.0] { [w, a] } else { [a, w] };
        self.edges.push(Edge { ends, kind: EdgeKind::HalfLine });
        self.edges.len() - 1
    }

    pub fn build(self) -> MetricGraph {
        let mut adjacency = vec![Vec::new(); self.names.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adjacency[e.ends[0].0].push(EdgeEnd { edge: i, end: 0 });
            adjacency[e.ends[1].0].push(EdgeEnd { edge: i, end: 1 });
        }
        MetricGraph {
            names: self.names,
            infinity: self.infinity,
            edges: self.edges,
            adjacency,
        }
    }
}

/// A structural rule broken by a graph, naming the offending element.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Disconnected { vertex: VertexId },
    EdgeJoinsInfinities { edge: usize },
    InfinityDegree { vertex: VertexId, degree: usize },
    InfinityEdgeNotHalfline { vertex: VertexId, edge: usize },
    HalflineWithoutInfinity { edge: usize },
    NonpositiveLength { edge: usize, length: f64 },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected { vertex } => {
                write!(f, "graph is disconnected: {vertex} unreachable from v0")
            }
            Violation::EdgeJoinsInfinities { edge } => {
                write!(f, "edge e{edge} joins two vertices at infinity")
            }
            Violation::InfinityDegree { vertex, degree } => {
                write!(f, "infinity vertex {vertex} has degree {degree}, expected 1")
            }
            Violation::InfinityEdgeNotHalfline { vertex, edge } => {
                write!(f, "infinity vertex {vertex} terminates finite edge e{edge}")
            }
            Violation::HalflineWithoutInfinity { edge } => {
                write!(f, "halfline e{edge} has no endpoint at infinity")
            }
            Violation::NonpositiveLength { edge, length } => {
                write!(f, "edge e{edge} has non-positive length {length}")
            }
            Violation::Empty => write!(f, "graph has no vertices"),
        }
    }
}

impl MetricGraph {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn is_infinity(&self, v: VertexId) -> bool {
        self.infinity[v.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn adjacency(&self, v: VertexId) -> &[EdgeEnd] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    pub fn finite_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|v| !self.is_infinity(*v))
    }

    pub fn halfline_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_halfline()).count()
    }

    pub fn is_compact(&self) -> bool {
        self.halfline_count() == 0
    }

    /// Checks every structural invariant and returns the list of breaches.
    /// An empty list means the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.names.is_empty() {
            out.push(Violation::Empty);
            return out;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let inf0 = self.infinity[e.ends[0].0];
            let inf1 = self.infinity[e.ends[1].0];
            if inf0 && inf1 {
                out.push(Violation::EdgeJoinsInfinities { edge: i });
            }
            match e.kind {
                EdgeKind::Finite(l) => {
                    if !(l > 0.0) || !l.is_finite() {
                        out.push(Violation::NonpositiveLength { edge: i, length: l });
                    }
                }
                EdgeKind::HalfLine => {
                    if !inf0 && !inf1 {
                        out.push(Violation::HalflineWithoutInfinity { edge: i });
                    }
                }
            }
        }
        for v in self.vertices() {
            if !self.is_infinity(v) {
                continue;
            }
            let deg = self.degree(v);
            if deg != 1 {
                out.push(Violation::InfinityDegree { vertex: v, degree: deg });
            }
            for ee in &self.adjacency[v.0] {
                if !self.edges[ee.edge].is_halfline() {
                    out.push(Violation::InfinityEdgeNotHalfline { vertex: v, edge: ee.edge });
                }
            }
        }
        // Connectivity over all vertices, skipping no edges.
        let comp = self.components(None);
        for v in self.vertices() {
            if comp[v.0] != comp[0] {
                out.push(Violation::Disconnected { vertex: v });
                break;
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Connected-component labels, optionally pretending one edge is removed.
    fn components(&self, skip_edge: Option<usize>) -> Vec<usize> {
        let n = self.names.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) == skip_edge {
                continue;
            }
            let a = find(&mut parent, e.ends[0].0);
            let b = find(&mut parent, e.ends[1].0);
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    /// Assumption (H), removal form: deleting any single edge must leave only
    /// components that contain a vertex at infinity. Returns the offending
    /// edge as witness when the check fails.
    pub fn check_assumption_h(&self) -> (bool, Option<usize>) {
        for i in 0..self.edges.len() {
            let comp = self.components(Some(i));
            let mut has_infinity: BTreeMap<usize, bool> = BTreeMap::new();
            for v in self.vertices() {
                let e = has_infinity.entry(comp[v.0]).or_insert(false);
                *e |= self.is_infinity(v);
            }
            if has_infinity.values().any(|ok| !ok) {
                return (false, Some(i));
            }
        }
        (true, None)
    }

    /// Assumption (H), trail form: every edge lies on a trail (edge-simple
    /// walk) joining two distinct vertices at infinity. Decided edge by edge
    /// through a unit-capacity flow: two edge-disjoint paths from the edge's
    /// endpoints to the infinity set, independent of `check_assumption_h`.
    pub fn check_assumption_h_trails(&self) -> bool {
        if self.edges.is_empty() {
            return true;
        }
        (0..self.edges.len()).all(|e| self.edge_on_infinity_trail(e))
    }

    fn edge_on_infinity_trail(&self, e: usize) -> bool {
        let infinities: Vec<usize> = self
            .vertices()
            .filter(|v| self.is_infinity(*v))
            .map(|v| v.0)
            .collect();
        if infinities.len() < 2 {
            return false;
        }
        let n = self.names.len();
        let source = n;
        let sink = n + 1;
        let mut net = FlowNetwork::new(n + 2);
        for (i, edge) in self.edges.iter().enumerate() {
            if i == e || edge.ends[0] == edge.ends[1] {
                continue; // self-loops never extend a trail towards infinity
            }
            net.add_undirected(edge.ends[0].0, edge.ends[1].0, 1);
        }
        let [a, b] = self.edges[e].ends;
        if a == b {
            net.add_directed(source, a.0, 2);
        } else {
            net.add_directed(source, a.0, 1);
            net.add_directed(source, b.0, 1);
        }
        for w in infinities {
            net.add_directed(w, sink, 1);
        }
        net.max_flow(source, sink, 2) >= 2
    }

    /// Detects the exact bubble-tower pattern: two half-lines at a base
    /// vertex, then a chain of cycles, each made of exactly two parallel
    /// edges whose lengths agree within the relative tolerance `tol`.
    /// The degenerate chain of zero bubbles (a plain line) counts as a tower.
    pub fn is_bubble_tower(&self, tol: f64) -> bool {
        if !self.is_valid() {
            return false;
        }
        let halflines: Vec<usize> = (0..self.edges.len())
            .filter(|&i| self.edges[i].is_halfline())
            .collect();
        if halflines.len() != 2 {
            return false;
        }
        let base = {
            let finite_end = |ei: usize| {
                let e = &self.edges[ei];
                if self.is_infinity(e.ends[0]) { e.ends[1] } else { e.ends[0] }
            };
            let b0 = finite_end(halflines[0]);
            if b0 != finite_end(halflines[1]) {
                return false;
            }
            b0
        };
        let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs());
        let mut visited = vec![false; self.names.len()];
        visited[base.0] = true;
        let mut current = base;
        let mut seen_edges = 0usize;
        loop {
            // Finite edges at `current` leading away from the visited chain.
            let mut forward: Vec<usize> = Vec::new();
            for ee in self.adjacency(current) {
                let e = &self.edges[ee.edge];
                if e.is_halfline() {
                    continue;
                }
                let other = e.ends[1 - ee.end];
                if other == current || visited[other.0] {
                    // Self-loop, or an edge back into the chain beyond the
                    // paired arcs: not the tower pattern. Back-arcs to the
                    // previous vertex were consumed when we arrived there.
                    if other == current {
                        return false;
                    }
                    continue;
                }
                forward.push(ee.edge);
            }
            if forward.is_empty() {
                break;
            }
            if forward.len() != 2 {
                return false;
            }
            let (e0, e1) = (&self.edges[forward[0]], &self.edges[forward[1]]);
            let next0 = e0.ends[1 - if e0.ends[0] == current { 0 } else { 1 }];
            let next1 = e1.ends[1 - if e1.ends[0] == current { 0 } else { 1 }];
            if next0 != next1 {
                return false;
            }
            match (e0.kind, e1.kind) {
                (EdgeKind::Finite(l0), EdgeKind::Finite(l1)) if close(l0, l1) => {}
                _ => return false,
            }
            visited[next0.0] = true;
            seen_edges += 2;
            current = next0;
        }
        // Every finite edge must belong to some bubble pair, and every
        // chain vertex must carry only its pair arcs (checked above via
        // forward counting); leftover edges mean extra structure.
        seen_edges == self.edges.len() - 2
    }

    /// Arc lengths of the bubbles from base to top, when the graph is a
    /// bubble tower. Pairs are averaged.
    pub fn bubble_arcs(&self, tol: f64) -> Option<Vec<f64>> {
        if !self.is_bubble_tower(tol) {
            return None;
        }
        let mut arcs = Vec::new();
        let base = self
            .edges
            .iter()
            .find(|e| e.is_halfline())
            .map(|e| if self.is_infinity(e.ends[0]) { e.ends[1] } else { e.ends[0] })?;
        let mut visited = vec![false; self.names.len()];
        visited[base.0] = true;
        let mut current = base;
        loop {
            let mut lengths = Vec::new();
            let mut next = None;
            for ee in self.adjacency(current) {
                let e = &self.edges[ee.edge];
                if e.is_halfline() {
                    continue;
                }
                let other = e.ends[1 - ee.end];
                if visited[other.0] {
                    continue;
                }
                lengths.push(e.length().unwrap());
                next = Some(other);
            }
            match next {
                Some(v) => {
                    arcs.push(0.5 * (lengths[0] + lengths[1]));
                    visited[v.0] = true;
                    current = v;
                }
                None => break,
            }
        }
        Some(arcs)
    }

    /// Sum of finite edge lengths plus `l_inf` per half-line.
    pub fn total_length(&self, l_inf: f64) -> f64 {
        self.edges
            .iter()
            .map(|e| e.length().unwrap_or(l_inf))
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Unit-capacity max flow (Edmonds–Karp, capped): tiny graphs only.

struct FlowArc {
    to: usize,
    cap: i32,
    rev: usize,
}

struct FlowNetwork {
    arcs: Vec<Vec<FlowArc>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self { arcs: (0..n).map(|_| Vec::new()).collect() }
    }

    fn add_directed(&mut self, from: usize, to: usize, cap: i32) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(FlowArc { to, cap, rev: rev_from });
        self.arcs[to].push(FlowArc { to: from, cap: 0, rev: rev_to });
    }

    /// Undirected unit edge: one unit may cross in either direction.
    fn add_undirected(&mut self, a: usize, b: usize, cap: i32) {
        let rev_a = self.arcs[b].len();
        let rev_b = self.arcs[a].len();
        self.arcs[a].push(FlowArc { to: b, cap, rev: rev_a });
        self.arcs[b].push(FlowArc { to: a, cap, rev: rev_b });
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: i32) -> i32 {
        let mut flow = 0;
        while flow < limit {
            // BFS for an augmenting path.
            let n = self.arcs.len();
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (ai, arc) in self.arcs[u].iter().enumerate() {
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        prev[arc.to] = Some((u, ai));
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let (u, ai) = prev[v].unwrap();
                let rev = self.arcs[u][ai].rev;
                self.arcs[u][ai].cap -= 1;
                self.arcs[v][rev].cap += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

// ---------------------------------------------------------------------------
// Text format: `vertex <name>` | `infinity <name>` | `edge <a> <b> <len>` |
// `halfline <a> <w>`, with `#` comments. Round-trips losslessly.

pub fn parse(text: &str) -> Result<MetricGraph, GraphError> {
    let mut builder = GraphBuilder::new();
    let mut by_name: BTreeMap<String, VertexId> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let line_err = |msg: &str| GraphError::Parse {
            line: lineno + 1,
            message: msg.to_string(),
        };
        let lookup = |name: &str| {
            by_name
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::Parse {
                    line: lineno + 1,
                    message: format!("unknown vertex '{name}'"),
                })
        };
        match keyword {
            "vertex" | "infinity" => {
                let name = parts.next().ok_or_else(|| line_err("missing vertex name"))?;
                if parts.next().is_some() {
                    return Err(line_err("trailing tokens"));
                }
                if by_name.contains_key(name) {
                    return Err(line_err(&format!("duplicate vertex '{name}'")));
                }
                let id = if keyword == "vertex" {
                    builder.vertex(name)
                } else {
                    builder.infinity(name)
                };
                by_name.insert(name.to_string(), id);
            }
            "edge" => {
                let a = lookup(parts.next().ok_or_else(|| line_err("missing endpoint"))?)?;
                let b = lookup(parts.next().ok_or_else(|| line_err("missing endpoint"))?)?;
                let len: f64 = parts
                    .next()
                    .ok_or_else(|| line_err("missing length"))?
                    .parse()
                    .map_err(|_| line_err("bad length"))?;
                if parts.next().is_some() {
                    return Err(line_err("trailing tokens"));
                }
                builder.edge(a, b, len);
            }
            "halfline" => {
                let a = lookup(parts.next().ok_or_else(|| line_err("missing endpoint"))?)?;
                let w = lookup(parts.next().ok_or_else(|| line_err("missing endpoint"))?)?;
                if parts.next().is_some() {
                    return Err(line_err("trailing tokens"));
                }
                if !builder.infinity[w.0] {
                    return Err(line_err("second halfline endpoint must be a vertex at infinity"));
                }
                builder.halfline(a, w);
            }
            other => return Err(line_err(&format!("unknown keyword '{other}'"))),
        }
    }
    Ok(builder.build())
}

pub fn serialize(g: &MetricGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let kw = if g.is_infinity(v) { "infinity" } else { "vertex" };
        out.push_str(&format!("{kw} {}\n", g.vertex_name(v)));
    }
    for e in g.edges() {
        let a = g.vertex_name(e.ends[0]);
        let b = g.vertex_name(e.ends[1]);
        match e.kind {
            EdgeKind::Finite(l) => out.push_str(&format!("edge {a} {b} {l}\n")),
            EdgeKind::HalfLine => out.push_str(&format!("halfline {a} {b}\n")),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Stock graphs used across the toolkit and the CLI.

pub mod builders {
    use super::{GraphBuilder, MetricGraph};

    /// The real line: two half-lines joined at one vertex.
    pub fn line() -> MetricGraph {
        let mut b = GraphBuilder::new();
        let c = b.vertex("c");
        let w1 = b.infinity("w1");
        let w2 = b.infinity("w2");
        b.halfline(c, w1);
        b.halfline(c, w2);
        b.build()
    }

    /// The half-line: one finite vertex at the origin.
    pub fn halfline() -> MetricGraph {
        let mut b = GraphBuilder::new();
        let o = b.vertex("o");
        let w = b.infinity("w");
        b.halfline(o, w);
        b.build()
    }

    /// Star of `n` half-lines at a single vertex.
    pub fn star(n: usize) -> MetricGraph {
        let mut b = GraphBuilder::new();
        let c = b.vertex("c");
        for i in 0..n {
            let w = b.infinity(format!("w{i}"));
            b.halfline(c, w);
        }
        b.build()
    }

    /// The line with a pendant of length `ell` at the junction.
    pub fn line_with_pendant(ell: f64) -> MetricGraph {
        let mut b = GraphBuilder::new();
        let c = b.vertex("c");
        let t = b.vertex("t");
        let w1 = b.infinity("w1");
        let w2 = b.infinity("w2");
        b.edge(c, t, ell);
        b.halfline(c, w1);
        b.halfline(c, w2);
        b.build()
    }

    /// Three half-lines plus a pendant of length `ell` at one vertex.
    pub fn gl(ell: f64) -> MetricGraph {
        let mut b = GraphBuilder::new();
        let c = b.vertex("c");
        let t = b.vertex("t");
        b.edge(c, t, ell);
        for i in 0..3 {
            let w = b.infinity(format!("w{i}"));
            b.halfline(c, w);
        }
        b.build()
    }

    /// Bubble tower: two half-lines at the base, then one cycle of two
    /// parallel arcs per entry of `arcs` (both arcs of a pair equal).
    pub fn bubble_tower(arcs: &[f64]) -> MetricGraph {
        let mut b = GraphBuilder::new();
        let base = b.vertex("b0");
        let w1 = b.infinity("w1");
        let w2 = b.infinity("w2");
        b.halfline(base, w1);
        b.halfline(base, w2);
        let mut prev = base;
        for (i, &a) in arcs.iter().enumerate() {
            let v = b.vertex(format!("b{}", i + 1));
            b.edge(prev, v, a);
            b.edge(prev, v, a);
            prev = v;
        }
        b.build()
    }

    /// A showcase graph with self-loops, parallel edges and several
    /// half-lines, mirroring the shape used in the documentation examples.
    pub fn showcase() -> MetricGraph {
        let mut b = GraphBuilder::new();
        let v1 = b.vertex("a");
        let v3 = b.vertex("b");
        let v4 = b.vertex("c");
        let v6 = b.vertex("d");
        let v7 = b.vertex("e");
        let v8 = b.vertex("f");
        let v9 = b.vertex("g");
        let w2 = b.infinity("w1");
        let w5 = b.infinity("w2");
        let w10 = b.infinity("w3");
        let w11 = b.infinity("w4");
        let w12 = b.infinity("w5");
        b.halfline(v1, w2);
        b.edge(v1, v3, 1.0);
        b.edge(v1, v4, 1.0);
        b.edge(v3, v4, 1.4);
        b.halfline(v4, w5);
        b.edge(v3, v3, 0.8); // self-loop
        b.edge(v3, v6, 1.0);
        b.edge(v6, v7, 1.0);
        b.edge(v6, v7, 1.2);
        b.edge(v6, v7, 1.5);
        b.edge(v6, v8, 1.0);
        b.edge(v6, v8, 1.3);
        b.edge(v7, v8, 1.4);
        b.edge(v8, v9, 1.0);
        b.edge(v7, v9, 1.4);
        b.halfline(v9, w12);
        b.halfline(v7, w10);
        b.halfline(v7, w11);
        b.build()
    }
}

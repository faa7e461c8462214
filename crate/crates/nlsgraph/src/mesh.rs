//! Discretisation: uniform piecewise-linear meshes on truncated metric
//! graphs, functions on them, and the discrete energy machinery.
//!
//! Half-lines are truncated at `l_inf` with a homogeneous Dirichlet condition
//! at the artificial endpoint. The kinetic term is exact for piecewise-linear
//! functions; mass and the `L^p` term use the composite trapezoid rule
//! (lumped quadrature). Mass means the squared `L^2` norm throughout.

use std::sync::Arc;

use crate::error::SolveError;
use crate::graph::{MetricGraph, VertexId};

/// Mesh data for one edge: global node ids from the primary end to the other
/// end, uniform spacing `h`, meshed length `len` (`l_inf` for half-lines).
/// For half-lines the primary end is the finite vertex and the last node is
/// the Dirichlet truncation node.
#[derive(Clone, Debug)]
pub struct EdgeMesh {
    pub nodes: Vec<usize>,
    pub h: f64,
    pub len: f64,
}

/// A mesh over a valid metric graph. Nodes at a shared vertex carry a single
/// global index, so meshed functions are continuous at vertices by storage.
#[derive(Debug)]
pub struct Mesh {
    graph: MetricGraph,
    h_max: f64,
    l_inf: f64,
    edges: Vec<EdgeMesh>,
    node_count: usize,
    weight: Vec<f64>,
    dirichlet: Vec<bool>,
    vertex_node: Vec<usize>,
}

pub fn build_mesh(graph: &MetricGraph, h_max: f64, l_inf: f64) -> Result<Arc<Mesh>, SolveError> {
    if !(h_max > 0.0) {
        return Err(SolveError::NonpositiveParameter { name: "h_max", value: h_max });
    }
    if !(l_inf > 0.0) {
        return Err(SolveError::NonpositiveParameter { name: "l_inf", value: l_inf });
    }
    let violations = graph.validate();
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(SolveError::InvalidGraph(msgs.join("; ")));
    }
    if graph.edge_count() == 0 {
        return Err(SolveError::BadInput("graph has no edges to mesh".into()));
    }

    let mut vertex_node = vec![usize::MAX; graph.vertex_count()];
    let mut next = 0usize;
    for v in graph.finite_vertices() {
        vertex_node[v.0] = next;
        next += 1;
    }
    let mut edges = Vec::with_capacity(graph.edge_count());
    let mut dirichlet_nodes = Vec::new();
    for e in graph.edges() {
        let (start, far, len) = match e.length() {
            Some(l) => (e.ends[0], Some(e.ends[1]), l),
            None => {
                // Orient half-lines from the finite vertex.
                let fin = if graph.is_infinity(e.ends[1]) { e.ends[0] } else { e.ends[1] };
                (fin, None, l_inf)
            }
        };
        let intervals = (len / h_max).ceil().max(1.0) as usize;
        let h = len / intervals as f64;
        let mut nodes = Vec::with_capacity(intervals + 1);
        nodes.push(vertex_node[start.0]);
        for _ in 1..intervals {
            nodes.push(next);
            next += 1;
        }
        match far {
            Some(v) => nodes.push(vertex_node[v.0]),
            None => {
                // Fresh truncation node, Dirichlet.
                let inf = if graph.is_infinity(e.ends[1]) { e.ends[1] } else { e.ends[0] };
                vertex_node[inf.0] = next;
                dirichlet_nodes.push(next);
                nodes.push(next);
                next += 1;
            }
        }
        edges.push(EdgeMesh { nodes, h, len });
    }

    let node_count = next;
    let mut weight = vec![0.0; node_count];
    for em in &edges {
        for k in 0..em.nodes.len() - 1 {
            weight[em.nodes[k]] += 0.5 * em.h;
            weight[em.nodes[k + 1]] += 0.5 * em.h;
        }
    }
    let mut dirichlet = vec![false; node_count];
    for n in dirichlet_nodes {
        dirichlet[n] = true;
    }

    Ok(Arc::new(Mesh {
        graph: graph.clone(),
        h_max,
        l_inf,
        edges,
        node_count,
        weight,
        dirichlet,
        vertex_node,
    }))
}

impl Mesh {
    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    pub fn l_inf(&self) -> f64 {
        self.l_inf
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_meshes(&self) -> &[EdgeMesh] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    pub fn is_dirichlet(&self, node: usize) -> bool {
        self.dirichlet[node]
    }

    pub fn vertex_node(&self, v: VertexId) -> usize {
        self.vertex_node[v.0]
    }

    /// Graph distances from a node to every node, along mesh segments.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        use std::collections::BinaryHeap;
        let mut dist = vec![f64::INFINITY; self.node_count];
        dist[source] = 0.0;
        // Max-heap on reversed bit pattern; distances are non-negative.
        let mut heap: BinaryHeap<(std::cmp::Reverse<u64>, usize)> = BinaryHeap::new();
        heap.push((std::cmp::Reverse(0u64), source));
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.node_count];
        for em in &self.edges {
            for k in 0..em.nodes.len() - 1 {
                let (a, b) = (em.nodes[k], em.nodes[k + 1]);
                adj[a].push((b, em.h));
                adj[b].push((a, em.h));
            }
        }
        while let Some((std::cmp::Reverse(dbits), u)) = heap.pop() {
            let d = f64::from_bits(dbits);
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &adj[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push((std::cmp::Reverse(nd.to_bits()), v));
                }
            }
        }
        dist
    }
}

fn check_power(p: f64) -> Result<(), SolveError> {
    if p > 2.0 && p < 6.0 {
        Ok(())
    } else {
        Err(SolveError::PowerOutOfRange(p))
    }
}

/// Mass, kinetic and potential terms, total energy, multiplier and vertex
/// residual of a meshed function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    /// Squared L2 norm (trapezoid).
    pub mass: f64,
    /// `1/2 ||u'||^2`, exact for piecewise-linear functions.
    pub kinetic: f64,
    /// `1/p ||u||_p^p` (trapezoid).
    pub potential: f64,
    /// `kinetic - potential`.
    pub total: f64,
    /// Multiplier `(||u||_p^p - ||u'||^2) / mass` from the stationarity
    /// equation tested against `u` itself; zero for the zero function.
    pub omega: f64,
    /// Max over vertices of degree >= 2 of the absolute Kirchhoff sum of
    /// outgoing derivatives (one-sided second-order differences).
    pub kirchhoff_residual: f64,
}

/// Continuous piecewise-linear function on a mesh: one value per global node,
/// vertex values shared by storage, Dirichlet nodes pinned to zero.
#[derive(Clone, Debug)]
pub struct GraphFunction {
    mesh: Arc<Mesh>,
    values: Vec<f64>,
}

impl GraphFunction {
    pub fn zeros(mesh: &Arc<Mesh>) -> Self {
        Self { mesh: mesh.clone(), values: vec![0.0; mesh.node_count()] }
    }

    pub fn from_values(mesh: &Arc<Mesh>, values: Vec<f64>) -> Result<Self, SolveError> {
        if values.len() != mesh.node_count() {
            return Err(SolveError::BadInput(format!(
                "value vector has length {}, mesh has {} nodes",
                values.len(),
                mesh.node_count()
            )));
        }
        let mut f = Self { mesh: mesh.clone(), values };
        f.enforce_dirichlet();
        Ok(f)
    }

    /// Samples `f(edge, arclength)` at every node. The sampler must be
    /// consistent at shared vertices; Dirichlet nodes are pinned to zero.
    pub fn interpolate(mesh: &Arc<Mesh>, f: impl Fn(usize, f64) -> f64) -> Self {
        let mut values = vec![0.0; mesh.node_count()];
        for (ei, em) in mesh.edge_meshes().iter().enumerate() {
            for (k, &n) in em.nodes.iter().enumerate() {
                values[n] = f(ei, k as f64 * em.h);
            }
        }
        let mut out = Self { mesh: mesh.clone(), values };
        out.enforce_dirichlet();
        out
    }

    /// Bump profile around a node: `values[i] = profile(dist(center, i))`.
    pub fn radial(mesh: &Arc<Mesh>, center: usize, profile: impl Fn(f64) -> f64) -> Self {
        let dist = mesh.distances_from(center);
        let values = dist.iter().map(|&d| profile(d)).collect();
        let mut out = Self { mesh: mesh.clone(), values };
        out.enforce_dirichlet();
        out
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn enforce_dirichlet(&mut self) {
        for i in 0..self.values.len() {
            if self.mesh.is_dirichlet(i) {
                self.values[i] = 0.0;
            }
        }
    }

    pub fn same_mesh(&self, other: &GraphFunction) -> bool {
        Arc::ptr_eq(&self.mesh, &other.mesh)
    }

    /// Trapezoid approximation of the squared L2 norm.
    pub fn mass(&self) -> f64 {
        self.values
            .iter()
            .zip(self.mesh.weights())
            .map(|(&v, &w)| w * v * v)
            .sum()
    }

    /// Trapezoid approximation of `||u||_p^p`.
    pub fn lp_norm_pow(&self, p: f64) -> f64 {
        self.values
            .iter()
            .zip(self.mesh.weights())
            .map(|(&v, &w)| w * v.abs().powf(p))
            .sum()
    }

    /// Exact `||u'||^2` of the piecewise-linear interpolant.
    pub fn grad_norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for em in self.mesh.edge_meshes() {
            for k in 0..em.nodes.len() - 1 {
                let d = self.values[em.nodes[k + 1]] - self.values[em.nodes[k]];
                s += d * d / em.h;
            }
        }
        s
    }

    /// Exact `int |u|^q` of the piecewise-linear interpolant (no quadrature
    /// error); used where machine-precision equimeasurability matters.
    pub fn exact_lq_norm_pow(&self, q: f64) -> f64 {
        let mut s = 0.0;
        for em in self.mesh.edge_meshes() {
            for k in 0..em.nodes.len() - 1 {
                let a = self.values[em.nodes[k]];
                let b = self.values[em.nodes[k + 1]];
                s += segment_lq(a, b, em.h, q);
            }
        }
        s
    }

    /// Rescales to exact mass `mu`. Errors on the zero function.
    pub fn rescale_mass(&mut self, mu: f64) -> Result<(), SolveError> {
        let m = self.mass();
        if !(m > 0.0) {
            return Err(SolveError::BadInput("cannot normalise the zero function".into()));
        }
        let s = (mu / m).sqrt();
        for v in &mut self.values {
            *v *= s;
        }
        Ok(())
    }

    pub fn clamp_nonnegative(&mut self) {
        for v in &mut self.values {
            *v = v.abs();
        }
    }

    /// Energy report at power `p`.
    pub fn energy(&self, p: f64) -> Result<EnergyReport, SolveError> {
        check_power(p)?;
        let mass = self.mass();
        let grad_sq = self.grad_norm_sq();
        let lp = self.lp_norm_pow(p);
        let kinetic = 0.5 * grad_sq;
        let potential = lp / p;
        let omega = if mass > 0.0 { (lp - grad_sq) / mass } else { 0.0 };
        Ok(EnergyReport {
            mass,
            kinetic,
            potential,
            total: kinetic - potential,
            omega,
            kirchhoff_residual: self.kirchhoff_residual(),
        })
    }

    /// Nodal gradient of the discrete energy: stiffness action minus the
    /// lumped nonlinear term, zero at Dirichlet nodes.
    pub fn energy_gradient(&self, p: f64) -> Result<GraphFunction, SolveError> {
        check_power(p)?;
        let mut g = stiffness_apply(&self.mesh, &self.values);
        for (i, gi) in g.iter_mut().enumerate() {
            let v = self.values[i];
            *gi -= self.mesh.weights()[i] * v.abs().powf(p - 2.0) * v;
            if self.mesh.is_dirichlet(i) {
                *gi = 0.0;
            }
        }
        GraphFunction::from_values(&self.mesh, g)
    }

    /// Max over finite vertices of degree >= 2 of `|sum of outgoing
    /// derivatives|`, each by the one-sided three-point formula (two-point on
    /// single-interval edges).
    pub fn kirchhoff_residual(&self) -> f64 {
        let mesh = &self.mesh;
        let mut worst = 0.0f64;
        for v in mesh.graph().finite_vertices() {
            if mesh.graph().degree(v) < 2 {
                continue;
            }
            let node = mesh.vertex_node(v);
            let mut sum = 0.0;
            for em in mesh.edge_meshes() {
                let n = em.nodes.len();
                if em.nodes[0] == node {
                    sum += one_sided_derivative(&self.values, &em.nodes, em.h);
                }
                if em.nodes[n - 1] == node {
                    let rev: Vec<usize> = em.nodes.iter().rev().copied().collect();
                    sum += one_sided_derivative(&self.values, &rev, em.h);
                }
            }
            worst = worst.max(sum.abs());
        }
        worst
    }

    /// Fraction of the total mass lying in the outer `tail_fraction` of the
    /// truncated half-lines (segments whose midpoint is beyond the cut).
    pub fn boundary_mass_fraction(&self, tail_fraction: f64) -> f64 {
        let total = self.mass();
        if !(total > 0.0) {
            return 0.0;
        }
        let mut outer = 0.0;
        for (ei, em) in self.mesh.edge_meshes().iter().enumerate() {
            if !self.mesh.graph().edge(ei).is_halfline() {
                continue;
            }
            let cut = (1.0 - tail_fraction) * em.len;
            for k in 0..em.nodes.len() - 1 {
                let mid = (k as f64 + 0.5) * em.h;
                if mid >= cut {
                    let a = self.values[em.nodes[k]];
                    let b = self.values[em.nodes[k + 1]];
                    outer += 0.5 * em.h * (a * a + b * b);
                }
            }
        }
        outer / total
    }

    /// L2 distance between two functions on the same mesh (trapezoid).
    pub fn l2_distance(&self, other: &GraphFunction) -> Result<f64, SolveError> {
        if !self.same_mesh(other) {
            return Err(SolveError::MeshMismatch);
        }
        let mut s = 0.0;
        for i in 0..self.values.len() {
            let d = self.values[i] - other.values[i];
            s += self.mesh.weights()[i] * d * d;
        }
        Ok(s.sqrt())
    }
}

/// Outgoing derivative at `nodes[0]` into the chain.
fn one_sided_derivative(values: &[f64], nodes: &[usize], h: f64) -> f64 {
    if nodes.len() >= 3 {
        (-3.0 * values[nodes[0]] + 4.0 * values[nodes[1]] - values[nodes[2]]) / (2.0 * h)
    } else {
        (values[nodes[1]] - values[nodes[0]]) / h
    }
}

/// Stiffness matrix action: `(K u)_i = sum over segments (u_i - u_j)/h`.
pub fn stiffness_apply(mesh: &Mesh, u: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; mesh.node_count()];
    for em in mesh.edge_meshes() {
        for k in 0..em.nodes.len() - 1 {
            let (a, b) = (em.nodes[k], em.nodes[k + 1]);
            let d = (u[a] - u[b]) / em.h;
            g[a] += d;
            g[b] -= d;
        }
    }
    g
}

/// Exact `int_0^h |a + (b-a) t/h|^q dt` for the linear segment.
pub fn segment_lq(a: f64, b: f64, h: f64, q: f64) -> f64 {
    if a >= 0.0 && b >= 0.0 {
        segment_lq_nonneg(a, b, h, q)
    } else if a <= 0.0 && b <= 0.0 {
        segment_lq_nonneg(-a, -b, h, q)
    } else {
        // Split at the zero crossing.
        let t0 = h * a.abs() / (a - b).abs();
        segment_lq_nonneg(a.abs(), 0.0, t0, q) + segment_lq_nonneg(0.0, b.abs(), h - t0, q)
    }
}

fn segment_lq_nonneg(a: f64, b: f64, h: f64, q: f64) -> f64 {
    let m = a.max(b);
    if m == 0.0 {
        return 0.0;
    }
    if (a - b).abs() <= 1e-7 * m {
        return h * (0.5 * (a + b)).powf(q);
    }
    h * (b.powf(q + 1.0) - a.powf(q + 1.0)) / ((q + 1.0) * (b - a))
}

/// Default tolerance for declaring the Kirchhoff condition satisfied at
/// mesh size `h`: ten times the second-order consistency error.
pub fn default_kirchhoff_tol(h: f64) -> f64 {
    10.0 * h * h
}

/// Right-hand side of the Gagliardo-Nirenberg energy bound
/// `1/2 g^2 (1 - C mu^{(p+2)/4} g^{(p-6)/2})` with `g` the gradient norm;
/// at `p = 4` this is `1/2 g^2 (1 - C mu^{3/2} / g)`.
pub fn gn_lower_bound(mass: f64, grad_norm: f64, c: f64, p: f64) -> f64 {
    let g = grad_norm;
    if g == 0.0 {
        return 0.0;
    }
    0.5 * g * g * (1.0 - c * mass.powf((p + 2.0) / 4.0) * g.powf((p - 6.0) / 2.0))
}

// ---------------------------------------------------------------------------
// Shifted elliptic solver `(K + alpha W) x = b` by static condensation:
// Thomas elimination along each edge chain, dense Cholesky on the vertex
// Schur complement. Exact, O(nodes) per solve.

struct ChainFactor {
    /// Interior node ids in chain order.
    interior: Vec<usize>,
    /// LDL^T factors of the interior tridiagonal block.
    l: Vec<f64>,
    d: Vec<f64>,
    off: f64,
    /// Dense indices of the coupled endpoint vertices (start, end), if any.
    start_vertex: Option<usize>,
    end_vertex: Option<usize>,
}

impl ChainFactor {
    fn solve_interior(&self, b: &mut [f64]) {
        let m = b.len();
        for i in 1..m {
            b[i] -= self.l[i] * b[i - 1];
        }
        for (bi, di) in b.iter_mut().zip(&self.d) {
            *bi /= *di;
        }
        for i in (0..m.saturating_sub(1)).rev() {
            let t = self.l[i + 1] * b[i + 1];
            b[i] -= t;
        }
    }
}

/// Reusable factorisation of `K + alpha W` over the non-Dirichlet nodes.
pub struct ShiftedSolver {
    mesh: Arc<Mesh>,
    chains: Vec<ChainFactor>,
    vertex_nodes: Vec<usize>,
    chol: DenseCholesky,
}

impl ShiftedSolver {
    pub fn new(mesh: &Arc<Mesh>, alpha: f64) -> Result<Self, SolveError> {
        if !(alpha > 0.0) {
            return Err(SolveError::NonpositiveParameter { name: "alpha", value: alpha });
        }
        let n = mesh.node_count();
        let mut dense_index = vec![None; n];
        let mut vertex_nodes = Vec::new();
        for v in mesh.graph().finite_vertices() {
            let node = mesh.vertex_node(v);
            if dense_index[node].is_none() {
                dense_index[node] = Some(vertex_nodes.len());
                vertex_nodes.push(node);
            }
        }
        let nv = vertex_nodes.len();
        let mut schur = vec![0.0; nv * nv];
        for (i, &node) in vertex_nodes.iter().enumerate() {
            schur[i * nv + i] += alpha * mesh.weights()[node];
        }

        let mut chains = Vec::new();
        for em in mesh.edge_meshes() {
            let nodes = &em.nodes;
            let last = nodes.len() - 1;
            let inv_h = 1.0 / em.h;
            // Stiffness diagonal contributions at endpoint vertices.
            for &end in [nodes[0], nodes[last]].iter() {
                if let Some(di) = dense_index[end] {
                    schur[di * nv + di] += inv_h;
                }
            }
            let start_vertex = dense_index[nodes[0]];
            let end_vertex = dense_index[nodes[last]];
            let interior: Vec<usize> = nodes[1..last]
                .iter()
                .copied()
                .filter(|&nd| !mesh.is_dirichlet(nd))
                .collect();
            if interior.is_empty() {
                if nodes[0] != nodes[last] {
                    if let (Some(a), Some(b)) = (start_vertex, end_vertex) {
                        schur[a * nv + b] -= inv_h;
                        schur[b * nv + a] -= inv_h;
                    }
                }
                continue;
            }
            let m = interior.len();
            let off = -inv_h;
            let mut l = vec![0.0; m];
            let mut d = vec![0.0; m];
            for (i, &nd) in interior.iter().enumerate() {
                let diag = 2.0 * inv_h + alpha * mesh.weights()[nd];
                if i == 0 {
                    d[0] = diag;
                } else {
                    l[i] = off / d[i - 1];
                    d[i] = diag - off * l[i];
                }
            }
            let chain = ChainFactor { interior, l, d, off, start_vertex, end_vertex };
            // Schur corrections: columns of T^{-1} at the coupled ends.
            let mut e_first = vec![0.0; m];
            e_first[0] = 1.0;
            chain.solve_interior(&mut e_first);
            let mut e_last = vec![0.0; m];
            e_last[m - 1] = 1.0;
            chain.solve_interior(&mut e_last);
            let c2 = inv_h * inv_h;
            if let Some(a) = chain.start_vertex {
                schur[a * nv + a] -= c2 * e_first[0];
            }
            if let Some(b) = chain.end_vertex {
                schur[b * nv + b] -= c2 * e_last[m - 1];
            }
            if let (Some(a), Some(b)) = (chain.start_vertex, chain.end_vertex) {
                schur[a * nv + b] -= c2 * e_first[m - 1];
                schur[b * nv + a] -= c2 * e_last[0];
            }
            chains.push(chain);
        }

        let chol = DenseCholesky::new(schur, nv).ok_or_else(|| {
            SolveError::BadInput("shifted operator is not positive definite".into())
        })?;
        Ok(Self { mesh: mesh.clone(), chains, vertex_nodes, chol })
    }

    /// Solves `(K + alpha W) x = b`; Dirichlet entries of `b` are ignored and
    /// the corresponding solution entries are zero.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let nv = self.vertex_nodes.len();
        let mut rhs_v = vec![0.0; nv];
        for (i, &node) in self.vertex_nodes.iter().enumerate() {
            rhs_v[i] = b[node];
        }
        let mut interior_tmp: Vec<Vec<f64>> = Vec::with_capacity(self.chains.len());
        for chain in &self.chains {
            let mut bi: Vec<f64> = chain.interior.iter().map(|&nd| b[nd]).collect();
            chain.solve_interior(&mut bi);
            let m = bi.len();
            if let Some(a) = chain.start_vertex {
                rhs_v[a] -= chain.off * bi[0];
            }
            if let Some(bidx) = chain.end_vertex {
                rhs_v[bidx] -= chain.off * bi[m - 1];
            }
            interior_tmp.push(bi);
        }
        let xv = self.chol.solve(&rhs_v);
        let mut x = vec![0.0; self.mesh.node_count()];
        for (i, &node) in self.vertex_nodes.iter().enumerate() {
            x[node] = xv[i];
        }
        for chain in &self.chains {
            let m = chain.interior.len();
            let mut bi: Vec<f64> = chain.interior.iter().map(|&nd| b[nd]).collect();
            if let Some(a) = chain.start_vertex {
                bi[0] -= chain.off * xv[a];
            }
            if let Some(bidx) = chain.end_vertex {
                bi[m - 1] -= chain.off * xv[bidx];
            }
            chain.solve_interior(&mut bi);
            for (k, &nd) in chain.interior.iter().enumerate() {
                x[nd] = bi[k];
            }
        }
        x
    }
}

struct DenseCholesky {
    l: Vec<f64>,
    n: usize,
}

impl DenseCholesky {
    fn new(mut a: Vec<f64>, n: usize) -> Option<Self> {
        for j in 0..n {
            for k in 0..j {
                let ljk = a[j * n + k];
                for i in j..n {
                    a[i * n + j] -= a[i * n + k] * ljk;
                }
            }
            let d = a[j * n + j];
            if !(d > 0.0) {
                return None;
            }
            let s = d.sqrt();
            for i in j..n {
                a[i * n + j] /= s;
            }
        }
        Some(Self { l: a, n })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }
}

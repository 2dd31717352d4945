use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::abgroup::IntMatrix;
use crate::monoid::{LatticeVector, MonoidError, MonoidHom, SharpFsMonoid};

use super::homology::Cycle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} refers to unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown edge id {0:?}")]
    UnknownEdge(String),
    #[error("edge {edge:?} has length {length}: lengths must lie in M \\ {{0}}")]
    ZeroLength { edge: String, length: LatticeVector },
    #[error("edge {edge:?} has length {length} outside the monoid")]
    LengthOutsideMonoid { edge: String, length: LatticeVector },
    #[error("graph is disconnected: vertex {0:?} is unreachable")]
    Disconnected(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("coefficient vector has {found} entries, graph has {expected} edges")]
    CycleShape { expected: usize, found: usize },
    #[error("not a cycle: boundary is nonzero at vertex {0:?}")]
    NotACycle(String),
    #[error("subdivision needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("subdivision parts sum to {sum}, edge {edge:?} has length {length}")]
    PartsDoNotSum {
        edge: String,
        sum: LatticeVector,
        length: LatticeVector,
    },
    #[error("subdivision part {index} ({part}) must lie in M \\ {{0}}")]
    BadPart { index: usize, part: LatticeVector },
    #[error("hom source monoid differs from the graph's monoid")]
    MonoidMismatch,
    #[error("monoid hom does not map the source monoid into the target")]
    InvalidHom,
    #[error("operation requires the monoid N")]
    NotOverN,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub length: LatticeVector,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A finite connected graph whose edges carry lengths in `M \ {0}`.
///
/// Each edge is stored with one chosen orientation (tail to head); the
/// opposite half-edge is implicit, and a coefficient on it is the negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricGraph {
    monoid: SharpFsMonoid,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Edge-level input to [`MetricGraph::new`]: `(id, tail id, head id, length)`.
pub type EdgeSpec = (String, String, String, LatticeVector);

impl MetricGraph {
    pub fn new(monoid: SharpFsMonoid, vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for (id, tail, head, length) in edges {
            if !seen.insert(id.clone()) {
                return Err(GraphError::DuplicateEdge(id));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| GraphError::UnknownVertex {
                    edge: id.clone(),
                    vertex: v.to_string(),
                })
            };
            let (t, h) = (lookup(&tail)?, lookup(&head)?);
            if !monoid.contains(&length)? {
                return Err(GraphError::LengthOutsideMonoid { edge: id, length });
            }
            if length.is_zero() {
                return Err(GraphError::ZeroLength { edge: id, length });
            }
            built.push(Edge {
                id,
                tail: t,
                head: h,
                length,
            });
        }
        let g = MetricGraph {
            monoid,
            vertices,
            edges: built,
        };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(GraphError::Disconnected(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    /// For each vertex, the incident `(edge index, other endpoint)` pairs in edge order.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((i, e.head));
            if !e.is_loop() {
                adj[e.head].push((i, e.tail));
            }
        }
        adj
    }

    pub fn monoid(&self) -> &SharpFsMonoid {
        &self.monoid
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Vertices and edges sorted by id.
    pub fn canonical(&self) -> MetricGraph {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        let mut relabel = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: relabel[e.tail],
                head: relabel[e.head],
                ..e.clone()
            })
            .collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        MetricGraph {
            monoid: self.monoid.clone(),
            vertices: order.iter().map(|&i| self.vertices[i].clone()).collect(),
            edges,
        }
    }

    /// Replaces `edge` by a chain through fresh vertices carrying `parts`,
    /// listed from the tail. The returned map sends a cycle to the cycle with
    /// the same coefficient on every piece of the chain.
    pub fn subdivide(&self, edge: &str, parts: &[LatticeVector]) -> Result<(MetricGraph, CycleMap), GraphError> {
        let ei = self.edge_index(edge).ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
        if parts.len() < 2 {
            return Err(GraphError::TooFewParts(parts.len()));
        }
        let original = &self.edges[ei];
        let mut sum = LatticeVector::zero(self.monoid.rank());
        for (index, part) in parts.iter().enumerate() {
            if part.dim() != self.monoid.rank() || part.is_zero() || !self.monoid.contains(part)? {
                return Err(GraphError::BadPart {
                    index,
                    part: part.clone(),
                });
            }
            sum = &sum + part;
        }
        if sum != original.length {
            return Err(GraphError::PartsDoNotSum {
                edge: edge.to_string(),
                sum,
                length: original.length.clone(),
            });
        }

        let vertex_names: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        let edge_names: BTreeSet<&str> = self.edges.iter().map(|e| e.id.as_str()).collect();
        let fresh = |base: String, taken: &BTreeSet<&str>| {
            let mut name = base;
            while taken.contains(name.as_str()) {
                name.push('\'');
            }
            name
        };

        let mut vertices = self.vertices.clone();
        let mut chain_vertices = vec![original.tail];
        for i in 1..parts.len() {
            chain_vertices.push(vertices.len());
            vertices.push(fresh(format!("{edge}.v{i}"), &vertex_names));
        }
        chain_vertices.push(original.head);

        let mut edges = Vec::with_capacity(self.edges.len() + parts.len() - 1);
        let mut map = IntMatrix::zeros(self.edges.len() + parts.len() - 1, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            if j != ei {
                map[(edges.len(), j)] = BigInt::one();
                edges.push(e.clone());
                continue;
            }
            for (i, part) in parts.iter().enumerate() {
                map[(edges.len(), j)] = BigInt::one();
                edges.push(Edge {
                    id: fresh(format!("{edge}.{i}"), &edge_names),
                    tail: chain_vertices[i],
                    head: chain_vertices[i + 1],
                    length: part.clone(),
                });
            }
        }
        let g = MetricGraph {
            monoid: self.monoid.clone(),
            vertices,
            edges,
        };
        Ok((g, CycleMap { matrix: map }))
    }

    /// Pushes lengths forward along `h` and contracts the edges whose length
    /// becomes zero (a zero-length loop is deleted).
    ///
    /// Each merged vertex class keeps its lexicographically smallest id;
    /// surviving vertices and edges keep their relative order. The returned
    /// map restricts cycles to the surviving edges.
    pub fn contract(&self, h: &MonoidHom) -> Result<(MetricGraph, CycleMap), GraphError> {
        if *h.source() != self.monoid {
            return Err(GraphError::MonoidMismatch);
        }
        if !h.validate() {
            return Err(GraphError::InvalidHom);
        }
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let new_lengths: Vec<LatticeVector> = self.edges.iter().map(|e| h.apply(&e.length)).collect();
        for (e, len) in self.edges.iter().zip(&new_lengths) {
            if len.is_zero() {
                let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        // representative = smallest id in the class
        let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            let entry = rep.entry(root).or_insert(v);
            if self.vertices[v] < self.vertices[*entry] {
                *entry = v;
            }
        }
        let mut new_index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if rep[&find(&mut parent, v)] == v {
                new_index[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let mut edges = Vec::new();
        let mut kept = Vec::new();
        for (j, (e, len)) in self.edges.iter().zip(new_lengths).enumerate() {
            if len.is_zero() {
                continue;
            }
            let t = new_index[rep[&find(&mut parent, e.tail)]];
            let hd = new_index[rep[&find(&mut parent, e.head)]];
            kept.push(j);
            edges.push((e.id.clone(), vertices[t].clone(), vertices[hd].clone(), len));
        }
        let mut map = IntMatrix::zeros(kept.len(), self.edges.len());
        for (i, &j) in kept.iter().enumerate() {
            map[(i, j)] = BigInt::one();
        }
        let g = MetricGraph::new(h.target().clone(), vertices, edges)?;
        Ok((g, CycleMap { matrix: map }))
    }

    /// Replaces every edge of length `m > 1` by a chain of `m` unit edges.
    pub fn unit_subdivision(&self) -> Result<MetricGraph, GraphError> {
        if !self.is_over_n() {
            return Err(GraphError::NotOverN);
        }
        let mut g = self.clone();
        for e in &self.edges {
            let m = &e.length.coords()[0];
            if m.is_one() {
                continue;
            }
            let count = usize::try_from(m).map_err(|_| GraphError::NotOverN)?;
            let parts = vec![LatticeVector::new(vec![BigInt::one()]); count];
            g = g.subdivide(&e.id, &parts)?.0;
        }
        Ok(g)
    }

    /// True when the monoid is `N` (rank one, containing 1).
    pub fn is_over_n(&self) -> bool {
        self.monoid.rank() == 1 && self.monoid.contains(&LatticeVector::from_i64s(&[1])).unwrap_or(false)
    }
}

/// A linear map between edge-coefficient lattices induced by a graph
/// operation; it carries cycles to cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMap {
    matrix: IntMatrix,
}

impl CycleMap {
    /// Rows index target edges, columns source edges.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, c: &Cycle) -> Cycle {
        Cycle::new(self.matrix.mul_vec(c.coefficients()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CycleMap) -> CycleMap {
        CycleMap {
            matrix: next.matrix.mul(&self.matrix),
        }
    }
}

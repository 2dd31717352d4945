use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::abgroup::IntMatrix;
use crate::monoid::LatticeVector;

use super::graph::{GraphError, MetricGraph};

/// Integer coefficients on the (chosen orientations of the) edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cycle(Vec<BigInt>);

impl Cycle {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Cycle(coefficients)
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Cycle(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(edges: usize) -> Self {
        Cycle(vec![BigInt::zero(); edges])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Cycle {
        Cycle(self.0.iter().map(|a| a * c).collect())
    }

    /// `sum_i coeffs[i] * cycles[i]` over `edges` edges.
    pub fn combination(edges: usize, cycles: &[Cycle], coeffs: &[BigInt]) -> Cycle {
        cycles
            .iter()
            .zip(coeffs)
            .fold(Cycle::zero(edges), |acc, (c, k)| acc.add(&c.scale(k)))
    }
}

/// A lattice basis of `H_1` together with its Gram matrix under the
/// intersection pairing (entries in `M^gp`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyData {
    basis: Vec<Cycle>,
    gram: Vec<Vec<LatticeVector>>,
    non_tree_edges: Vec<usize>,
}

impl HomologyData {
    pub fn basis(&self) -> &[Cycle] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<LatticeVector>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Edges outside the spanning tree; basis cycle `i` is the fundamental
    /// cycle of `non_tree_edges()[i]`.
    pub fn non_tree_edges(&self) -> &[usize] {
        &self.non_tree_edges
    }

    /// Coordinates of a cycle in the fundamental basis: its coefficients on
    /// the non-tree edges.
    pub fn coordinates(&self, c: &Cycle) -> Vec<BigInt> {
        self.non_tree_edges.iter().map(|&e| c.0[e].clone()).collect()
    }

    /// The `|E| x g` matrix whose columns are the basis cycles.
    pub fn basis_matrix(&self, edges: usize) -> IntMatrix {
        IntMatrix::from_columns(edges, &self.basis.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
    }
}

impl MetricGraph {
    /// `head - tail` boundary of an edge-coefficient vector, per vertex.
    pub fn boundary(&self, c: &Cycle) -> Result<Vec<BigInt>, GraphError> {
        self.check_shape(c)?;
        let mut b = vec![BigInt::zero(); self.vertices().len()];
        for (e, x) in self.edges().iter().zip(&c.0) {
            if x.is_zero() {
                continue;
            }
            b[e.head] += x;
            b[e.tail] -= x;
        }
        Ok(b)
    }

    fn check_shape(&self, c: &Cycle) -> Result<(), GraphError> {
        if c.0.len() == self.edges().len() {
            Ok(())
        } else {
            Err(GraphError::CycleShape {
                expected: self.edges().len(),
                found: c.0.len(),
            })
        }
    }

    pub fn check_cycle(&self, c: &Cycle) -> Result<(), GraphError> {
        match self.boundary(c)?.iter().position(|x| !x.is_zero()) {
            Some(v) => Err(GraphError::NotACycle(self.vertices()[v].clone())),
            None => Ok(()),
        }
    }

    /// `sum_e x_e y_e l(e)`.
    pub fn intersection_pairing(&self, x: &Cycle, y: &Cycle) -> Result<LatticeVector, GraphError> {
        self.check_cycle(x)?;
        self.check_cycle(y)?;
        Ok(self.pairing_unchecked(x, y))
    }

    fn pairing_unchecked(&self, x: &Cycle, y: &Cycle) -> LatticeVector {
        let mut acc = LatticeVector::zero(self.monoid().rank());
        for ((e, a), b) in self.edges().iter().zip(&x.0).zip(&y.0) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = &acc + &e.length.scale(&(a * b));
        }
        acc
    }

    /// `sum_e |x_e| l(e)`, an element of `M`.
    pub fn cycle_length(&self, x: &Cycle) -> Result<LatticeVector, GraphError> {
        self.check_shape(x)?;
        let mut acc = LatticeVector::zero(self.monoid().rank());
        for (e, a) in self.edges().iter().zip(&x.0) {
            if !a.is_zero() {
                acc = &acc + &e.length.scale(&a.abs());
            }
        }
        Ok(acc)
    }

    /// Fundamental cycles of a BFS spanning tree rooted at the first vertex,
    /// one per non-tree edge in edge order, with their Gram matrix.
    pub fn cycle_basis(&self) -> HomologyData {
        let n = self.vertices().len();
        let adj = self.adjacency();
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; self.edges().len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = Some(e);
                    depth[w] = depth[v] + 1;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }

        // Coefficient of tree edge `parent_edge[child]` when walking child -> parent.
        let upward = |child: usize| -> (usize, i64) {
            let e = parent_edge[child].expect("root has no parent edge");
            let sign = if self.edges()[e].tail == child { 1 } else { -1 };
            (e, sign)
        };

        let m = self.edges().len();
        let mut basis = Vec::new();
        let mut non_tree = Vec::new();
        for (i, edge) in self.edges().iter().enumerate() {
            if in_tree[i] {
                continue;
            }
            let mut coeffs = vec![BigInt::zero(); m];
            coeffs[i] = BigInt::from(1);
            // close the loop: walk from head back to tail through the tree
            let (mut a, mut b) = (edge.head, edge.tail);
            while a != b {
                if depth[a] >= depth[b] {
                    let (e, s) = upward(a);
                    coeffs[e] += s;
                    a = parent[a];
                } else {
                    let (e, s) = upward(b);
                    coeffs[e] -= s;
                    b = parent[b];
                }
            }
            basis.push(Cycle(coeffs));
            non_tree.push(i);
        }
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.pairing_unchecked(x, y)).collect())
            .collect();
        HomologyData {
            basis,
            gram,
            non_tree_edges: non_tree,
        }
    }
}

/// Free-function form of [`MetricGraph::betti1`].
pub fn betti1(g: &MetricGraph) -> usize {
    g.betti1()
}

/// Free-function form of [`MetricGraph::cycle_basis`].
pub fn cycle_basis(g: &MetricGraph) -> HomologyData {
    g.cycle_basis()
}

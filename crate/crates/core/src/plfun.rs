//! Piecewise-linear functions on metric graphs: vertex values in `M^gp`
//! whose differences along each edge are integer multiples of its length.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::abgroup::{integer_kernel, IntMatrix};
use crate::monoid::LatticeVector;
use crate::tropcurve::MetricGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("expected {expected} vertex values, got {found}")]
    ValueCount { expected: usize, found: usize },
    #[error("value at vertex {vertex:?} has dimension {found}, lattice has rank {expected}")]
    ValueDimension {
        vertex: String,
        expected: usize,
        found: usize,
    },
    #[error("not piecewise linear: difference {difference} along edge {edge:?} is not an integer multiple of its length {length}")]
    NotPL {
        edge: String,
        difference: LatticeVector,
        length: LatticeVector,
    },
    #[error("PL functions live on different graphs")]
    GraphMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    graph: MetricGraph,
    values: Vec<LatticeVector>,
    slopes: Vec<BigInt>,
}

impl PLFunction {
    /// Solves for the integer slopes `values(head) - values(tail) = s * l(e)`.
    pub fn new(graph: &MetricGraph, values: Vec<LatticeVector>) -> Result<Self, PlError> {
        if values.len() != graph.vertices().len() {
            return Err(PlError::ValueCount {
                expected: graph.vertices().len(),
                found: values.len(),
            });
        }
        let k = graph.monoid().rank();
        for (v, x) in graph.vertices().iter().zip(&values) {
            if x.dim() != k {
                return Err(PlError::ValueDimension {
                    vertex: v.clone(),
                    expected: k,
                    found: x.dim(),
                });
            }
        }
        let slopes = graph
            .edges()
            .iter()
            .map(|e| {
                let difference = &values[e.head] - &values[e.tail];
                difference.divide_by(&e.length).ok_or_else(|| PlError::NotPL {
                    edge: e.id.clone(),
                    difference,
                    length: e.length.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PLFunction {
            graph: graph.clone(),
            values,
            slopes,
        })
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn values(&self) -> &[LatticeVector] {
        &self.values
    }

    /// Slope along each edge's stored orientation.
    pub fn slopes(&self) -> &[BigInt] {
        &self.slopes
    }

    /// Sum of slopes exiting each vertex; loops contribute nothing.
    pub fn multidegree(&self) -> Vec<BigInt> {
        let mut deg = vec![BigInt::zero(); self.graph.vertices().len()];
        for (e, s) in self.graph.edges().iter().zip(&self.slopes) {
            if e.is_loop() {
                continue;
            }
            deg[e.tail] += s;
            deg[e.head] -= s;
        }
        deg
    }

    pub fn add(&self, other: &PLFunction) -> Result<PLFunction, PlError> {
        if self.graph != other.graph {
            return Err(PlError::GraphMismatch);
        }
        Ok(PLFunction {
            graph: self.graph.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            slopes: self.slopes.iter().zip(&other.slopes).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// See [`PLFunction::new`].
pub fn make_pl(graph: &MetricGraph, values: Vec<LatticeVector>) -> Result<PLFunction, PlError> {
    PLFunction::new(graph, values)
}

/// Lattice basis of the PL functions with zero multidegree.
///
/// Solved directly as the integer kernel of the joint system in the unknowns
/// (vertex values, edge slopes): compatibility `x_head - x_tail - s_e l(e) = 0`
/// in every coordinate, and zero exiting-slope sum at every vertex.
pub fn harmonic_space(graph: &MetricGraph) -> Vec<PLFunction> {
    let k = graph.monoid().rank();
    let nv = graph.vertices().len();
    let ne = graph.edges().len();
    let unknowns = nv * k + ne;
    let value_col = |v: usize, j: usize| v * k + j;
    let slope_col = |e: usize| nv * k + e;

    let mut system = IntMatrix::zeros(0, unknowns);
    for (i, e) in graph.edges().iter().enumerate() {
        for j in 0..k {
            let mut row = vec![BigInt::zero(); unknowns];
            row[value_col(e.head, j)] += 1;
            row[value_col(e.tail, j)] -= 1;
            row[slope_col(i)] = -e.length.coords()[j].clone();
            system.push_row(row);
        }
    }
    for v in 0..nv {
        let mut row = vec![BigInt::zero(); unknowns];
        for (i, e) in graph.edges().iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            if e.tail == v {
                row[slope_col(i)] += 1;
            }
            if e.head == v {
                row[slope_col(i)] -= 1;
            }
        }
        system.push_row(row);
    }

    integer_kernel(&system)
        .columns()
        .into_iter()
        .map(|x| PLFunction {
            graph: graph.clone(),
            values: (0..nv)
                .map(|v| LatticeVector::new(x[value_col(v, 0)..value_col(v, 0) + k].to_vec()))
                .collect(),
            slopes: x[nv * k..].to_vec(),
        })
        .collect()
}

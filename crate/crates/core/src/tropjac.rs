//! The tropical Jacobian `Hom(H_1, M^gp)† / H_1` of a metric graph, where
//! `†` is the bounded-monodromy sublattice and `H_1` embeds through the
//! intersection pairing.
//!
//! `Hom(H_1, Z^k)` is identified with `Z^(g*k)` by evaluating on the
//! fundamental cycle basis: coordinate `i*k + j` is the `j`-th component of
//! `f(basis_i)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abgroup::{cokernel, integer_kernel, solve_integer, FgAbelianGroup, IntMatrix};
use crate::monoid::{LatticeVector, MonoidHom};
use crate::tropcurve::{Cycle, GraphError, HomologyData, MetricGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error(
        "not bounded monodromy: inequality row {row} vanishes on l(γ) for γ = {cycle} but f(γ) = {value} \
         is not killed by it"
    )]
    NotBoundedMonodromy {
        /// The witness cycle, rendered as `edge:coefficient` pairs.
        cycle: String,
        witness: Cycle,
        row: usize,
        value: LatticeVector,
    },
    #[error("cocycle has {found} values, H_1 has rank {expected}")]
    CocycleShape { expected: usize, found: usize },
    #[error("cocycle value {index} has dimension {found}, lattice has rank {expected}")]
    CocycleDimension { index: usize, expected: usize, found: usize },
    #[error("critical group needs the monoid N with all edge lengths 1")]
    NotUnitOverN,
    #[error("n must be at least 1")]
    NonPositiveN,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal: pairing image of basis cycle {0} lies outside the bounded-monodromy lattice")]
    PairingOutsideBounded(usize),
    #[error("internal: cycle {0} of the contracted graph has no preimage")]
    NoPreimage(usize),
}

impl JacobianError {
    pub fn is_internal(&self) -> bool {
        matches!(self, JacobianError::PairingOutsideBounded(_) | JacobianError::NoPreimage(_))
    }
}

fn render_cycle(g: &MetricGraph, c: &Cycle) -> String {
    let terms: Vec<String> = g
        .edges()
        .iter()
        .zip(c.coefficients())
        .filter(|(_, x)| !x.is_zero())
        .map(|(e, x)| format!("{}:{}", e.id, x))
        .collect();
    format!("[{}]", terms.join(", "))
}

/// For each inequality row `v`, a basis of the cycles supported on edges with
/// `<v, l(e)> = 0`. Those are exactly the cycles `γ` with `<v, l(γ)> = 0`.
fn flat_cycles(g: &MetricGraph) -> Vec<(usize, Vec<Cycle>)> {
    let a = g.monoid().inequalities();
    (0..a.rows())
        .filter_map(|row| {
            let v = a.row(row);
            let support: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.length.dot(v).is_zero())
                .map(|(i, _)| i)
                .collect();
            if support.is_empty() {
                return None;
            }
            let mut boundary = IntMatrix::zeros(g.vertices().len(), support.len());
            for (col, &i) in support.iter().enumerate() {
                let e = &g.edges()[i];
                boundary[(e.head, col)] += 1;
                boundary[(e.tail, col)] -= 1;
            }
            let cycles: Vec<Cycle> = integer_kernel(&boundary)
                .columns()
                .into_iter()
                .map(|local| {
                    let mut c = vec![BigInt::zero(); g.edges().len()];
                    for (col, &i) in support.iter().enumerate() {
                        c[i] = local[col].clone();
                    }
                    Cycle::new(c)
                })
                .collect();
            (!cycles.is_empty()).then_some((row, cycles))
        })
        .collect()
}

/// Basis (as columns of a `g*k`-row matrix) of the homomorphisms
/// `H_1 -> Z^k` with bounded monodromy.
pub fn bounded_sublattice(g: &MetricGraph, h: &HomologyData) -> IntMatrix {
    let k = g.monoid().rank();
    let dim = h.rank() * k;
    let a = g.monoid().inequalities();
    let mut conditions = IntMatrix::zeros(0, dim);
    for (row, cycles) in flat_cycles(g) {
        let v = a.row(row);
        for c in cycles {
            // <v, f(c)> = sum_i coord_i <v, f(basis_i)>
            let coords = h.coordinates(&c);
            let mut cond = vec![BigInt::zero(); dim];
            for (i, ci) in coords.iter().enumerate() {
                for j in 0..k {
                    cond[i * k + j] = ci * &v[j];
                }
            }
            conditions.push_row(cond);
        }
    }
    integer_kernel(&conditions)
}

/// An element of `Hom(H_1, M^gp)`, given by its values on the fundamental
/// cycle basis of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropCocycle {
    graph: MetricGraph,
    homology: HomologyData,
    values: Vec<LatticeVector>,
}

impl TropCocycle {
    pub fn new(graph: &MetricGraph, values: Vec<LatticeVector>) -> Result<Self, JacobianError> {
        let homology = graph.cycle_basis();
        if values.len() != homology.rank() {
            return Err(JacobianError::CocycleShape {
                expected: homology.rank(),
                found: values.len(),
            });
        }
        let k = graph.monoid().rank();
        if let Some(index) = values.iter().position(|v| v.dim() != k) {
            return Err(JacobianError::CocycleDimension {
                index,
                expected: k,
                found: values[index].dim(),
            });
        }
        Ok(TropCocycle {
            graph: graph.clone(),
            homology,
            values,
        })
    }

    /// Reads a flattened `g*k` coordinate vector.
    pub fn from_flat(graph: &MetricGraph, flat: &[BigInt]) -> Result<Self, JacobianError> {
        let k = graph.monoid().rank();
        let values = if k == 0 {
            vec![LatticeVector::zero(0); graph.betti1()]
        } else {
            flat.chunks(k).map(|c| LatticeVector::new(c.to_vec())).collect()
        };
        Self::new(graph, values)
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn homology(&self) -> &HomologyData {
        &self.homology
    }

    pub fn values(&self) -> &[LatticeVector] {
        &self.values
    }

    /// `f(c) = sum_i coord_i(c) f(basis_i)`.
    pub fn evaluate(&self, c: &Cycle) -> LatticeVector {
        let k = self.graph.monoid().rank();
        self.homology
            .coordinates(c)
            .iter()
            .zip(&self.values)
            .fold(LatticeVector::zero(k), |acc, (x, v)| &acc + &v.scale(x))
    }

    /// The first flat cycle on which `f` breaks bounded monodromy.
    pub fn monodromy_violation(&self) -> Option<JacobianError> {
        let a = self.graph.monoid().inequalities();
        for (row, cycles) in flat_cycles(&self.graph) {
            for c in cycles {
                let value = self.evaluate(&c);
                if !value.dot(a.row(row)).is_zero() {
                    return Some(JacobianError::NotBoundedMonodromy {
                        cycle: render_cycle(&self.graph, &c),
                        witness: c,
                        row,
                        value,
                    });
                }
            }
        }
        None
    }

    pub fn has_bounded_monodromy(&self) -> bool {
        self.monodromy_violation().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TroJacGroup {
    pub group: FgAbelianGroup,
    /// Columns span the bounded-monodromy lattice inside `Z^(g*k)`.
    pub bounded_basis: IntMatrix,
    /// Column `i` is the pairing image `basis_i . (-)` in `bounded_basis` coordinates.
    pub relation_matrix: IntMatrix,
}

/// Computes the tropical Jacobian as a finitely generated abelian group.
pub fn trojac(g: &MetricGraph) -> Result<TroJacGroup, JacobianError> {
    let h = g.cycle_basis();
    let bounded_basis = bounded_sublattice(g, &h);
    let mut relations = Vec::with_capacity(h.rank());
    for (i, row) in h.gram().iter().enumerate() {
        let flat: Vec<BigInt> = row.iter().flat_map(|v| v.coords().iter().cloned()).collect();
        let x = solve_integer(&bounded_basis, &flat).ok_or(JacobianError::PairingOutsideBounded(i))?;
        relations.push(x);
    }
    let relation_matrix = IntMatrix::from_columns(bounded_basis.cols(), &relations);
    Ok(TroJacGroup {
        group: cokernel(&relation_matrix),
        bounded_basis,
        relation_matrix,
    })
}

/// The `n`-torsion of the tropical Jacobian.
pub fn trojac_torsion(g: &MetricGraph, n: &BigInt) -> Result<FgAbelianGroup, JacobianError> {
    if n < &BigInt::one() {
        return Err(JacobianError::NonPositiveN);
    }
    Ok(trojac(g)?.group.n_torsion(n))
}

/// Pushes a bounded-monodromy cocycle forward along the contraction induced
/// by `h`.
pub fn specialize(f: &TropCocycle, h: &MonoidHom) -> Result<TropCocycle, JacobianError> {
    if let Some(err) = f.monodromy_violation() {
        return Err(err);
    }
    let (target, map) = f.graph.contract(h)?;
    let target_h = target.cycle_basis();
    // image of each source basis cycle, as columns over the target's edges
    let images = map.matrix().mul(&f.homology.basis_matrix(f.graph.edges().len()));
    let mut values = Vec::with_capacity(target_h.rank());
    for (j, c) in target_h.basis().iter().enumerate() {
        let x = solve_integer(&images, c.coefficients()).ok_or(JacobianError::NoPreimage(j))?;
        let preimage = Cycle::combination(f.graph.edges().len(), f.homology.basis(), &x);
        values.push(h.apply(&f.evaluate(&preimage)));
    }
    Ok(TropCocycle {
        graph: target,
        homology: target_h,
        values,
    })
}

/// Critical (sandpile) group: cokernel of the graph Laplacian with the row
/// and column of the lexicographically smallest vertex removed.
pub fn critical_group(g: &MetricGraph) -> Result<FgAbelianGroup, JacobianError> {
    let unit = LatticeVector::from_i64s(&[1]);
    if !g.is_over_n() || g.edges().iter().any(|e| e.length != unit) {
        return Err(JacobianError::NotUnitOverN);
    }
    let n = g.vertices().len();
    let sink = (0..n).min_by(|&a, &b| g.vertices()[a].cmp(&g.vertices()[b])).unwrap();
    let mut laplacian = IntMatrix::zeros(n, n);
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        laplacian[(e.tail, e.tail)] += 1;
        laplacian[(e.head, e.head)] += 1;
        laplacian[(e.tail, e.head)] -= 1;
        laplacian[(e.head, e.tail)] -= 1;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != sink).collect();
    let mut reduced = IntMatrix::zeros(keep.len(), keep.len());
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            reduced[(i, j)] = laplacian[(a, b)].clone();
        }
    }
    Ok(cokernel(&reduced))
}

/// Every edge of length `m` replaced by a chain of `m` unit edges.
pub fn unit_subdivision(g: &MetricGraph) -> Result<MetricGraph, JacobianError> {
    Ok(g.unit_subdivision()?)
}

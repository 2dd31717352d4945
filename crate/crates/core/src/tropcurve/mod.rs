//! Metric graphs over sharp fs monoids: the tropicalizations of log curves.
//!
//! Provides first homology with the monoid-valued intersection pairing,
//! subdivision of edges, and contraction along monoid homomorphisms.

mod graph;
mod homology;

pub use graph::{CycleMap, Edge, EdgeSpec, GraphError, MetricGraph};
pub use homology::{betti1, cycle_basis, Cycle, HomologyData};

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::monoid::{LatticeVector, SharpFsMonoid};

    pub fn n() -> SharpFsMonoid {
        SharpFsMonoid::free(1)
    }

    pub fn len(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    pub fn graph(monoid: SharpFsMonoid, vertices: &[&str], edges: &[(&str, &str, &str, &[i64])]) -> MetricGraph {
        MetricGraph::new(
            monoid,
            vertices.iter().map(|v| v.to_string()).collect(),
            edges
                .iter()
                .map(|(id, t, h, l)| (id.to_string(), t.to_string(), h.to_string(), len(l)))
                .collect(),
        )
        .unwrap()
    }

    /// One vertex with a loop of length `n` over N.
    pub fn nodal_loop(n: i64) -> MetricGraph {
        graph(super::fixtures::n(), &["v0"], &[("e0", "v0", "v0", &[n])])
    }

    /// Two vertices joined by three parallel edges of lengths a, b, c.
    pub fn theta(a: i64, b: i64, c: i64) -> MetricGraph {
        graph(
            n(),
            &["u", "v"],
            &[("e1", "u", "v", &[a]), ("e2", "u", "v", &[b]), ("e3", "u", "v", &[c])],
        )
    }

    /// Cycle on `k` vertices with unit edges `v_i -> v_{i+1}`.
    pub fn unit_cycle(k: usize) -> MetricGraph {
        let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let edges = (0..k)
            .map(|i| (format!("e{i}"), names[i].clone(), names[(i + 1) % k].clone(), len(&[1])))
            .collect();
        MetricGraph::new(n(), names, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::abgroup::IntMatrix;
    use crate::monoid::{MonoidHom, SharpFsMonoid};
    use num_bigint::BigInt;

    fn path3() -> MetricGraph {
        graph(n(), &["a", "b", "c"], &[("x", "a", "b", &[1]), ("y", "b", "c", &[2])])
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(nodal_loop(3).betti1(), 1);
        assert_eq!(path3().betti1(), 0);
        assert_eq!(theta(1, 2, 3).betti1(), 2);
    }

    #[test]
    fn construction_errors() {
        let m = n();
        let two = || vec!["a".to_string(), "b".to_string()];
        let e = |t: &str, h: &str, l: i64| ("e".to_string(), t.to_string(), h.to_string(), len(&[l]));
        assert!(matches!(MetricGraph::new(m.clone(), two(), vec![]), Err(GraphError::Disconnected(_))));
        assert!(matches!(MetricGraph::new(m.clone(), two(), vec![e("a", "b", 0)]), Err(GraphError::ZeroLength { .. })));
        assert!(matches!(
            MetricGraph::new(m.clone(), two(), vec![e("a", "b", -1)]),
            Err(GraphError::LengthOutsideMonoid { .. })
        ));
        assert!(matches!(
            MetricGraph::new(m.clone(), two(), vec![e("a", "z", 1)]),
            Err(GraphError::UnknownVertex { .. })
        ));
        assert!(matches!(
            MetricGraph::new(m.clone(), two(), vec![e("a", "b", 1), e("b", "a", 1)]),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            MetricGraph::new(m, vec!["a".into(), "a".into()], vec![]),
            Err(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn loop_basis_and_gram() {
        let h = nodal_loop(7).cycle_basis();
        assert_eq!(h.basis(), &[Cycle::from_i64s(&[1])]);
        assert_eq!(h.gram(), &[vec![len(&[7])]]);
        assert_eq!(path3().cycle_basis().rank(), 0);
    }

    #[test]
    fn theta_pairing() {
        let (a, b, c) = (2, 3, 5);
        let g = theta(a, b, c);
        let x = Cycle::from_i64s(&[1, -1, 0]);
        let y = Cycle::from_i64s(&[0, 1, -1]);
        assert_eq!(g.intersection_pairing(&x, &x).unwrap(), len(&[a + b]));
        assert_eq!(g.intersection_pairing(&x, &y).unwrap(), len(&[-b]));
        assert_eq!(g.intersection_pairing(&y, &y).unwrap(), len(&[b + c]));
        assert_eq!(g.cycle_length(&x).unwrap(), len(&[a + b]));
        assert!(matches!(
            g.intersection_pairing(&Cycle::from_i64s(&[1, 0, 0]), &x),
            Err(GraphError::NotACycle(_))
        ));
        let h = g.cycle_basis();
        assert_eq!(h.rank(), 2);
        for c in h.basis() {
            g.check_cycle(c).unwrap();
        }
    }

    #[test]
    fn disjoint_cycles_pair_to_zero() {
        // figure eight: two loops at one vertex
        let g = graph(n(), &["v"], &[("p", "v", "v", &[2]), ("q", "v", "v", &[3])]);
        let p = Cycle::from_i64s(&[1, 0]);
        let q = Cycle::from_i64s(&[0, 1]);
        assert_eq!(g.intersection_pairing(&p, &q).unwrap(), len(&[0]));
        assert_eq!(g.cycle_length(&Cycle::zero(2)).unwrap(), len(&[0]));
    }

    #[test]
    fn subdivide_loop_into_five() {
        let (g, map) = nodal_loop(5).subdivide("e0", &vec![len(&[1]); 5]).unwrap();
        assert_eq!(g.vertices().len(), 5);
        assert_eq!(g.edges().len(), 5);
        assert!(g.edges().iter().all(|e| e.length == len(&[1])));
        assert_eq!(g.betti1(), 1);
        let image = map.apply(&Cycle::from_i64s(&[1]));
        g.check_cycle(&image).unwrap();
        assert_eq!(g.intersection_pairing(&image, &image).unwrap(), len(&[5]));
    }

    #[test]
    fn subdivide_over_n2() {
        let g = graph(SharpFsMonoid::free(2), &["a", "b"], &[("e", "a", "b", &[2, 1])]);
        let (s, _) = g.subdivide("e", &[len(&[1, 1]), len(&[1, 0])]).unwrap();
        assert_eq!(s.edges().len(), 2);
        assert_eq!(s.betti1(), g.betti1());
    }

    #[test]
    fn subdivide_rejections() {
        let g = nodal_loop(5);
        assert!(matches!(g.subdivide("e0", &[len(&[3]), len(&[3])]), Err(GraphError::PartsDoNotSum { .. })));
        assert!(matches!(g.subdivide("e0", &[len(&[5]), len(&[0])]), Err(GraphError::BadPart { .. })));
        assert!(matches!(g.subdivide("e0", &[len(&[5])]), Err(GraphError::TooFewParts(1))));
        assert!(matches!(g.subdivide("zz", &[len(&[2]), len(&[3])]), Err(GraphError::UnknownEdge(_))));
    }

    #[test]
    fn contract_identity() {
        let g = theta(1, 2, 3);
        let (c, map) = g.contract(&MonoidHom::identity(g.monoid())).unwrap();
        assert_eq!(c, g);
        assert_eq!(map.matrix(), &IntMatrix::identity(3));
    }

    fn projection(i: usize) -> MonoidHom {
        let row = if i == 0 { vec![1, 0] } else { vec![0, 1] };
        MonoidHom::new(SharpFsMonoid::free(2), SharpFsMonoid::free(1), IntMatrix::from_rows(2, &[row])).unwrap()
    }

    #[test]
    fn contract_two_cycle() {
        let g = graph(
            SharpFsMonoid::free(2),
            &["a", "b"],
            &[("p", "a", "b", &[1, 0]), ("q", "b", "a", &[0, 1])],
        );
        let (c, map) = g.contract(&projection(0)).unwrap();
        assert_eq!(c.vertices(), &["a".to_string()]);
        assert_eq!(c.edges().len(), 1);
        assert!(c.edges()[0].is_loop());
        assert_eq!(c.edges()[0].length, len(&[1]));
        assert_eq!(c.betti1(), 1);
        let image = map.apply(&g.cycle_basis().basis()[0]);
        c.check_cycle(&image).unwrap();
        assert!(!image.is_zero());
    }

    #[test]
    fn contract_deletes_zero_loop() {
        let g = graph(SharpFsMonoid::free(2), &["v"], &[("e", "v", "v", &[1, 0])]);
        let (c, map) = g.contract(&projection(1)).unwrap();
        assert_eq!(c.edges().len(), 0);
        assert_eq!(c.betti1(), 0);
        assert_eq!(map.matrix().rows(), 0);
    }

    #[test]
    fn contract_rejects_bad_hom() {
        let g = nodal_loop(2);
        let neg = MonoidHom::new(n(), n(), IntMatrix::from_rows(1, &[vec![-1]])).unwrap();
        assert_eq!(g.contract(&neg), Err(GraphError::InvalidHom));
        let other = MonoidHom::identity(&SharpFsMonoid::free(2));
        assert_eq!(g.contract(&other), Err(GraphError::MonoidMismatch));
    }

    #[test]
    fn unit_subdivision_of_theta_pair() {
        let g = graph(n(), &["a", "b"], &[("p", "a", "b", &[2]), ("q", "a", "b", &[3])]);
        let u = g.unit_subdivision().unwrap();
        assert_eq!(u.vertices().len(), 5);
        assert_eq!(u.edges().len(), 5);
        assert!(u.edges().iter().all(|e| e.length.coords() == [BigInt::from(1)]));
        assert_eq!(unit_cycle(4).unit_subdivision().unwrap(), unit_cycle(4));
    }

    #[test]
    fn canonical_sorts_ids() {
        let g = graph(n(), &["b", "a"], &[("y", "b", "a", &[1]), ("x", "a", "a", &[2])]);
        let c = g.canonical();
        assert_eq!(c.vertices(), &["a".to_string(), "b".to_string()]);
        assert_eq!(c.edges()[0].id, "x");
        assert_eq!(c.edges()[1].tail, 1);
    }
}

//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropjac::{IntMatrix, LatticeVector, MetricGraph, SharpFsMonoid};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

/// Connected graph: a random spanning tree plus a few extra edges and
/// loops, with lengths drawn by `length`.
pub fn random_graph_with(
    rng: &mut TestRng,
    monoid: SharpFsMonoid,
    max_vertices: usize,
    mut length: impl FnMut(&mut TestRng) -> LatticeVector,
) -> MetricGraph {
    let n = rng.gen_range(1..=max_vertices);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (t, h) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        edges.push((t, h));
    }
    for _ in 0..rng.gen_range(0..=4) {
        let t = rng.gen_range(0..n);
        let h = if rng.gen_bool(0.2) { t } else { rng.gen_range(0..n) };
        edges.push((t, h));
    }
    let specs = edges
        .into_iter()
        .enumerate()
        .map(|(i, (t, h))| (format!("e{i}"), vertices[t].clone(), vertices[h].clone(), length(rng)))
        .collect();
    MetricGraph::new(monoid, vertices, specs).expect("generator builds valid graphs")
}

/// Connected graph over N with at most 8 vertices and lengths at most 9.
pub fn random_graph_n(rng: &mut TestRng) -> MetricGraph {
    random_graph_with(rng, SharpFsMonoid::free(1), 8, |r| lv(&[r.gen_range(1..=9)]))
}

/// Nonzero element of N^k with small coordinates.
pub fn random_free_length(rng: &mut TestRng, k: usize, max: i64) -> LatticeVector {
    loop {
        let c: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=max)).collect();
        if c.iter().any(|&x| x != 0) {
            return lv(&c);
        }
    }
}

pub fn random_graph_free(rng: &mut TestRng, k: usize, max_vertices: usize) -> MetricGraph {
    random_graph_with(rng, SharpFsMonoid::free(k), max_vertices, |r| random_free_length(r, k, 3))
}

/// Splits `total` (a nonzero element of N^k) into two nonzero elements of
/// N^k, if possible.
fn split_free(rng: &mut TestRng, total: &[BigInt]) -> Option<(LatticeVector, LatticeVector)> {
    let t: Vec<i64> = total.iter().map(|x| i64::try_from(x).unwrap()).collect();
    if t.iter().sum::<i64>() < 2 {
        return None;
    }
    loop {
        let a: Vec<i64> = t.iter().map(|&x| rng.gen_range(0..=x)).collect();
        let b: Vec<i64> = t.iter().zip(&a).map(|(x, y)| x - y).collect();
        if a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0) {
            return Some((lv(&a), lv(&b)));
        }
    }
}

/// Up to three random subdivisions of edges of a graph over N^k. Each
/// subdivision splits one edge into two or more nonzero pieces.
pub fn random_subdivision(rng: &mut TestRng, g: &MetricGraph) -> MetricGraph {
    let mut g = g.clone();
    for _ in 0..rng.gen_range(1..=3) {
        let candidates: Vec<usize> = (0..g.edges().len())
            .filter(|&i| g.edges()[i].length.coords().iter().map(|x| i64::try_from(x).unwrap()).sum::<i64>() >= 2)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let e = g.edges()[candidates[rng.gen_range(0..candidates.len())]].clone();
        let mut parts = Vec::new();
        let mut rest = e.length.coords().to_vec();
        // peel off pieces while the remainder can still be split
        loop {
            match split_free(rng, &rest) {
                Some((a, b)) if parts.len() < 3 => {
                    parts.push(a);
                    rest = b.into_coords();
                    if rng.gen_bool(0.5) {
                        break;
                    }
                }
                _ => break,
            }
        }
        parts.push(LatticeVector::new(rest));
        if parts.len() < 2 {
            continue;
        }
        g = g.subdivide(&e.id, &parts).expect("admissible subdivision").0;
    }
    g
}

/// A sharp fs monoid of rank `k` in 1..=3: either N^k or a random
/// simplicial cone, occasionally a non-simplicial cone of rank 3.
pub fn random_monoid(rng: &mut TestRng, k: usize) -> SharpFsMonoid {
    if k == 1 || rng.gen_bool(0.25) {
        return SharpFsMonoid::free(k);
    }
    if k == 3 && rng.gen_bool(0.2) {
        // cone over a square
        let rays = vec![lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[-1, 0, 1]), lv(&[0, -1, 1])];
        let a = IntMatrix::from_rows(3, &[vec![1, 1, 1], vec![-1, 1, 1], vec![-1, -1, 1], vec![1, -1, 1]]);
        return SharpFsMonoid::new(3, a, rays).unwrap();
    }
    loop {
        let rays: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let normals: Vec<Vec<i64>> = if k == 2 {
            let (r1, r2) = (&rays[0], &rays[1]);
            vec![vec![r2[1], -r2[0]], vec![-r1[1], r1[0]]]
        } else {
            let cross = |a: &[i64], b: &[i64]| vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            vec![cross(&rays[1], &rays[2]), cross(&rays[2], &rays[0]), cross(&rays[0], &rays[1])]
        };
        let det: i64 = normals[0].iter().zip(&rays[0]).map(|(a, b)| a * b).sum();
        if det == 0 {
            continue;
        }
        let sign = det.signum();
        let rows: Vec<Vec<i64>> = normals
            .iter()
            .map(|v| {
                let g = v.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
                v.iter().map(|x| sign * x / g.max(1)).collect()
            })
            .collect();
        let rays: Vec<Vec<i64>> = rays
            .iter()
            .map(|r| {
                let g = r.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
                r.iter().map(|x| x / g.max(1)).collect()
            })
            .collect();
        let a = IntMatrix::from_rows(k, &rows);
        return SharpFsMonoid::new(k, a, rays.iter().map(|r| lv(r)).collect()).expect("simplicial cone is sharp");
    }
}

/// Random element of the monoid: a nonnegative combination of a random
/// subset of its rays (so it often lies on a proper face).
pub fn random_element(rng: &mut TestRng, m: &SharpFsMonoid, max_coeff: i64) -> LatticeVector {
    let mut x = LatticeVector::zero(m.rank());
    for r in m.rays() {
        if rng.gen_bool(0.6) {
            x = &x + &r.scale(&int(rng.gen_range(0..=max_coeff)));
        }
    }
    x
}

pub fn random_vector(rng: &mut TestRng, k: usize, bound: i64) -> LatticeVector {
    lv(&(0..k).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// `-N l <= x <= N l` for some `0 <= N <= limit`, checked one N at a time.
pub fn bounded_brute_force(m: &SharpFsMonoid, x: &LatticeVector, ell: &LatticeVector, limit: i64) -> bool {
    (0..=limit).any(|n| {
        let nl = ell.scale(&int(n));
        m.contains(&(&nl - x)).unwrap() && m.contains(&(&nl + x)).unwrap()
    })
}

/// Number of spanning trees weighted by products of complementary edge
/// lengths is the order of the Jacobian; computed here by brute-force
/// enumeration of edge subsets (small graphs only).
pub fn weighted_spanning_tree_sum(g: &MetricGraph) -> BigInt {
    let n = g.vertices().len();
    let edges: Vec<usize> = (0..g.edges().len()).filter(|&i| !g.edges()[i].is_loop()).collect();
    let loops: Vec<usize> = (0..g.edges().len()).filter(|&i| g.edges()[i].is_loop()).collect();
    let len = |i: usize| g.edges()[i].length.coords()[0].clone();
    let loop_product: BigInt = loops.iter().map(|&i| len(i)).product();
    let mut total = BigInt::from(0);
    let m = edges.len();
    assert!(m <= 20, "too many edges for subset enumeration");
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut ok = true;
        for (bit, &ei) in edges.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let e = &g.edges()[ei];
                let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
                if a == b {
                    ok = false;
                    break;
                }
                parent[a] = b;
            }
        }
        if ok {
            let comp: BigInt = edges
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 0)
                .map(|(_, &ei)| len(ei))
                .product();
            total += comp;
        }
    }
    total * loop_product
}

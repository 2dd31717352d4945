//! Smith and Hermite normal forms over the integers.
//!
//! The Smith reduction uses the smallest nonzero entry (in absolute value) as
//! pivot, clears its row and column by Euclidean division, and repeats until
//! the pivot divides every remaining entry. Transforms are tracked only when
//! requested, so the cokernel computation pays for nothing it does not use.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `left * input * right = diagonal`, with `left` and `right` unimodular and
/// the diagonal entries nonnegative and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n)
            .map(|i| self.diagonal[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().len()
    }
}

struct Reducer {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.left.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.right.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(u) = self.left.as_mut() {
            u.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(v) = self.right.as_mut() {
            v.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = self.left.as_mut() {
            u.negate_row(i);
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| x.magnitude() < b.magnitude()) {
                    if x.magnitude().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j, x.clone()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` below/right of the pivot. Returns false if a
    /// nonzero remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }

    /// Moves the smallest nonzero entry of row/column `t` onto the pivot.
    fn repivot(&mut self, t: usize) {
        let mut best = (t, t, self.a[(t, t)].magnitude().clone());
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].magnitude();
            if !x.is_zero() && *x < best.2 {
                best = (i, t, x.clone());
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].magnitude();
            if !x.is_zero() && *x < best.2 {
                best = (t, j, x.clone());
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                let x = &self.a[(i, j)];
                if !x.is_zero() && !x.is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((i, j)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                if !self.clear_cross(t) {
                    self.repivot(t);
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        left: Some(IntMatrix::identity(m.rows())),
        right: Some(IntMatrix::identity(m.cols())),
    };
    r.run();
    SmithForm {
        left: r.left.unwrap(),
        diagonal: r.a,
        right: r.right.unwrap(),
    }
}

/// Nonzero Smith diagonal without computing transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        a: m.clone(),
        left: None,
        right: None,
    };
    r.run();
    let n = m.rows().min(m.cols());
    (0..n)
        .map(|i| r.a[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_diagonal(m).len()
}

fn right_transform_only(m: &IntMatrix) -> (IntMatrix, usize) {
    let mut r = Reducer {
        a: m.clone(),
        left: None,
        right: Some(IntMatrix::identity(m.cols())),
    };
    r.run();
    let n = m.rows().min(m.cols());
    let rank = (0..n).take_while(|&i| !r.a[(i, i)].is_zero()).count();
    (r.right.unwrap(), rank)
}

/// Column-style Hermite normal form of the lattice spanned by the columns.
///
/// The result is lower echelon: each column has a positive leading entry in a
/// strictly later row than the previous column's, entries to the left of a
/// leading entry are reduced into `[0, lead)`, and zero columns are dropped.
/// Two matrices span the same lattice iff their Hermite forms are equal.
pub fn hermite_column_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut cur = 0;
    let mut pivots = Vec::new();
    for i in 0..a.rows() {
        if cur == a.cols() {
            break;
        }
        for j in cur + 1..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            let x = a[(i, cur)].clone();
            let y = a[(i, j)].clone();
            let e = x.extended_gcd(&y);
            let (p, q) = (e.x, e.y);
            let r = -(&y / &e.gcd);
            let s = &x / &e.gcd;
            a.combine_cols(cur, j, [&p, &q, &r, &s]);
        }
        if a[(i, cur)].is_zero() {
            continue;
        }
        if a[(i, cur)].is_negative() {
            a.negate_col(cur);
        }
        let lead = a[(i, cur)].clone();
        for k in 0..cur {
            let q = a[(i, k)].div_floor(&lead);
            if !q.is_zero() {
                a.add_col_multiple(k, cur, &-q);
            }
        }
        pivots.push(cur);
        cur += 1;
    }
    a.select_columns(&pivots)
}

/// Lattice basis (as columns) of `{x in Z^cols : m x = 0}`, in Hermite form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (right, rank) = right_transform_only(m);
    let kernel_cols: Vec<usize> = (rank..m.cols()).collect();
    hermite_column_form(&right.select_columns(&kernel_cols))
}

/// An integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(m);
    let ub = snf.left.mul_vec(b);
    let diag = snf.nonzero_diagonal();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) => {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !c.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.right.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows)
    }

    fn check(input: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(input);
        assert_eq!(s.left.mul(input).mul(&s.right), s.diagonal);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        assert!(s.diagonal.is_diagonal());
        let d = s.nonzero_diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&m(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, m(2, &[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diagonal, IntMatrix::identity(3));
        let z = check(&IntMatrix::zeros(2, 2));
        assert!(z.diagonal.is_zero());
    }

    #[test]
    fn rectangular_and_empty() {
        check(&m(3, &[vec![4, 6, 8], vec![2, -2, 10]]));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        assert_eq!(smith_diagonal(&m(2, &[vec![4, 6], vec![6, 4]])), vec![2.into(), 10.into()]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&m(2, &[vec![1, 1]])), m(1, &[vec![1], vec![-1]]));
        assert_eq!(integer_kernel(&IntMatrix::identity(2)).cols(), 0);
        assert_eq!(integer_kernel(&m(2, &[vec![2, 4]])), m(1, &[vec![2], vec![-1]]));
        assert_eq!(integer_kernel(&IntMatrix::zeros(0, 2)), IntMatrix::identity(2));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(2, &[vec![2, 0], vec![1, 3]]);
        let b = m(2, &[vec![2, 4], vec![1, 5]]); // second column = 2*first + (0,3)
        assert_eq!(hermite_column_form(&a), hermite_column_form(&b));
    }

    #[test]
    fn solving() {
        let a = m(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &[4.into(), 9.into()]), Some(vec![2.into(), 3.into()]));
        assert_eq!(solve_integer(&a, &[1.into(), 0.into()]), None);
        let tall = m(1, &[vec![1], vec![1]]);
        assert_eq!(solve_integer(&tall, &[1.into(), 2.into()]), None);
    }
}

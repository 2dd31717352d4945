use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::matrix::IntMatrix;
use super::normal_form::smith_diagonal;

/// A finitely generated abelian group `Z^r x Z/d1 x ... x Z/dk` with
/// `d1 | d2 | ... | dk` and every `di >= 2`.
///
/// The representation is canonical, so derived equality is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupParseError {
    #[error("empty group expression")]
    Empty,
    #[error("unrecognized group term {0:?} (expected 0, Z, Z^r or Z/d)")]
    BadTerm(String),
    #[error("cyclic order must be at least 1, got {0}")]
    BadOrder(String),
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors(0, &[n.into()])
    }

    /// Normalizes `Z^free_rank x Z/c1 x ... x Z/cm` for arbitrary orders.
    /// A zero order contributes a free summand.
    pub fn from_cyclic_factors(free_rank: usize, orders: &[BigInt]) -> Self {
        let extra_free = orders.iter().filter(|c| c.is_zero()).count();
        let mut chain: Vec<BigInt> = orders
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.abs())
            .filter(|c| !c.is_one())
            .collect();
        // Z/a x Z/b = Z/gcd x Z/lcm; one sweep over all pairs yields a divisibility chain.
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                let g = chain[i].gcd(&chain[j]);
                let l = &chain[i] / &g * &chain[j];
                chain[i] = g;
                chain[j] = l;
            }
        }
        chain.retain(|d| !d.is_one());
        FgAbelianGroup {
            free_rank: free_rank + extra_free,
            invariant_factors: chain,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_subgroup(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &orders)
    }

    /// The `n`-torsion subgroup: `Z/gcd(n, di)` for each factor; free summands vanish.
    ///
    /// Panics if `n < 1`.
    pub fn n_torsion(&self, n: &BigInt) -> Self {
        assert!(n.is_positive(), "n-torsion needs n >= 1");
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(n)).collect();
        Self::from_cyclic_factors(0, &orders)
    }
}

/// `Z^rows / column span of m`.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let diag = smith_diagonal(m);
    FgAbelianGroup {
        free_rank: m.rows() - diag.len(),
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// See [`FgAbelianGroup::n_torsion`].
pub fn torsion_part(g: &FgAbelianGroup, n: &BigInt) -> FgAbelianGroup {
    g.n_torsion(n)
}

/// `Hom(a, b)`, assembled from `Hom(Z, Z) = Z`, `Hom(Z, Z/d) = Z/d`,
/// `Hom(Z/c, Z) = 0` and `Hom(Z/c, Z/d) = Z/gcd(c, d)`.
///
/// This is well defined for every pair; the result is finite exactly when
/// `a` or `b` is finite and `a` has no free part against a free `b`.
pub fn hom_group(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for _ in 0..a.free_rank {
        orders.extend(b.invariant_factors.iter().cloned());
    }
    for c in &a.invariant_factors {
        for d in &b.invariant_factors {
            orders.push(c.gcd(d));
        }
    }
    FgAbelianGroup::from_cyclic_factors(a.free_rank * b.free_rank, &orders)
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&terms.join(" x "))
    }
}

impl FromStr for FgAbelianGroup {
    type Err = GroupParseError;

    /// Accepts the rendered form, plus unnormalized factor lists such as
    /// `Z/4 x Z/6`, which are brought into normal form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GroupParseError::Empty);
        }
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut free_rank = 0usize;
        let mut orders = Vec::new();
        for term in s.split(" x ") {
            let term = term.trim();
            if term == "Z" {
                free_rank = free_rank.checked_add(1).ok_or_else(|| GroupParseError::BadTerm(term.into()))?;
            } else if let Some(r) = term.strip_prefix("Z^") {
                let r: usize = r
                    .parse()
                    .map_err(|_| GroupParseError::BadTerm(term.into()))?;
                free_rank = free_rank.checked_add(r).ok_or_else(|| GroupParseError::BadTerm(term.into()))?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                    return Err(GroupParseError::BadTerm(term.into()));
                }
                let d: BigInt = d.parse().map_err(|_| GroupParseError::BadTerm(term.into()))?;
                if d.is_zero() {
                    return Err(GroupParseError::BadOrder(d.to_string()));
                }
                orders.push(d);
            } else {
                return Err(GroupParseError::BadTerm(term.into()));
            }
        }
        Ok(Self::from_cyclic_factors(free_rank, &orders))
    }
}

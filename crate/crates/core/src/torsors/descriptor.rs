use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("order of {0} must be at least 1")]
    ZeroOrder(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("local-local part: homDim {hom_dim} disagrees with alphaPower {alpha_power}")]
    HomDimMismatch { hom_dim: u64, alpha_power: u64 },
    #[error("residue characteristic must be 0 or a prime, got {0}")]
    BadResidueChar(u64),
    #[error("BT1 local-local part has p = {found}, expected {expected}")]
    PrimeMismatch { expected: u64, found: u64 },
    #[error("n must be at least 1")]
    ZeroModulus,
    #[error("component count overflows")]
    Overflow,
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The local-local part `I` of a BT1: connected with connected dual.
///
/// `hom_dim` is the dimension of `Hom(α_p, I)`; `alpha_power = Some(d)` marks
/// `I ≅ α_p^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalLocal {
    pub p: u64,
    pub hom_dim: u64,
    pub alpha_power: Option<u64>,
}

impl LocalLocal {
    pub fn new(p: u64, hom_dim: u64, alpha_power: Option<u64>) -> Result<Self, DescriptorError> {
        if !is_prime(p) {
            return Err(DescriptorError::NotPrime(p));
        }
        if let Some(d) = alpha_power {
            if d != hom_dim {
                return Err(DescriptorError::HomDimMismatch {
                    hom_dim,
                    alpha_power: d,
                });
            }
        }
        Ok(LocalLocal { p, hom_dim, alpha_power })
    }

    /// `I = 0`.
    pub fn trivial(p: u64) -> Result<Self, DescriptorError> {
        Self::new(p, 0, Some(0))
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha_power == Some(0)
    }
}

/// One factor of a finite flat commutative group descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Mu(u64),
    Zmod(u64),
    AlphaP(u64),
    LocalLocal(LocalLocal),
}

impl Atom {
    pub fn validate(&self) -> Result<(), DescriptorError> {
        match *self {
            Atom::Mu(0) => Err(DescriptorError::ZeroOrder("μ_n")),
            Atom::Zmod(0) => Err(DescriptorError::ZeroOrder("Z/m")),
            Atom::AlphaP(p) if !is_prime(p) => Err(DescriptorError::NotPrime(p)),
            Atom::LocalLocal(ll) => LocalLocal::new(ll.p, ll.hom_dim, ll.alpha_power).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Cartier dual: `μ_n ↔ Z/n`; `α_p` and local-local parts are self-dual.
    pub fn dual(&self) -> Atom {
        match *self {
            Atom::Mu(n) => Atom::Zmod(n),
            Atom::Zmod(n) => Atom::Mu(n),
            other => other,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Mu(n) => write!(f, "μ_{n}"),
            Atom::Zmod(m) => write!(f, "Z/{m}"),
            Atom::AlphaP(p) => write!(f, "α_{p}"),
            Atom::LocalLocal(ll) => match ll.alpha_power {
                Some(d) => write!(f, "I(α_{}^{})", ll.p, d),
                None => write!(f, "I(p={}, homDim={})", ll.p, ll.hom_dim),
            },
        }
    }
}

/// A finite flat commutative group as a multiset of atoms, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupDescriptor {
    factors: Vec<Atom>,
}

impl GroupDescriptor {
    pub fn new(mut factors: Vec<Atom>) -> Result<Self, DescriptorError> {
        for a in &factors {
            a.validate()?;
        }
        factors.sort();
        Ok(GroupDescriptor { factors })
    }

    pub fn factors(&self) -> &[Atom] {
        &self.factors
    }

    pub fn cartier_dual(&self) -> GroupDescriptor {
        let mut factors: Vec<Atom> = self.factors.iter().map(Atom::dual).collect();
        factors.sort();
        GroupDescriptor { factors }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" × "))
    }
}

/// Free-function form of [`GroupDescriptor::cartier_dual`].
pub fn cartier_dual(g: &GroupDescriptor) -> GroupDescriptor {
    g.cartier_dual()
}

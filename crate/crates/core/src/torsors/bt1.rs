use std::fmt;

use super::descriptor::{Atom, DescriptorError, GroupDescriptor, LocalLocal};

/// A BT1 given by its p-rank and local-local part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bt1Descriptor {
    pub p_rank: u64,
    pub local_local: LocalLocal,
}

impl Bt1Descriptor {
    pub fn new(p_rank: u64, local_local: LocalLocal) -> Self {
        Bt1Descriptor { p_rank, local_local }
    }

    pub fn p(&self) -> u64 {
        self.local_local.p
    }
}

/// `(μ_p × Z/p)^r × I`.
pub fn bt1_decompose(b: &Bt1Descriptor) -> Result<GroupDescriptor, DescriptorError> {
    let p = b.p();
    let mut atoms = Vec::new();
    for _ in 0..b.p_rank {
        atoms.push(Atom::Mu(p));
        atoms.push(Atom::Zmod(p));
    }
    atoms.push(Atom::LocalLocal(b.local_local));
    GroupDescriptor::new(atoms)
}

/// The unipotent group classifying `α_p`-torsors:
/// `α_p^(h1 + r) × Hom(α_p, I)`, where `Hom(α_p, α_p^d) = G_a^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnipotentDescriptor {
    pub p: u64,
    pub alpha_p: u64,
    /// Copies of `G_a`, present when `I` is a known power of `α_p`.
    pub g_a: u64,
    /// Dimension of `Hom(α_p, I)` for an opaque `I`; reported symbolically.
    pub opaque_hom_dim: u64,
}

impl UnipotentDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.alpha_p == 0 && self.g_a == 0 && self.opaque_hom_dim == 0
    }
}

pub fn alpha_p_torsor_group(h1: u64, b: &Bt1Descriptor) -> Result<UnipotentDescriptor, DescriptorError> {
    let (g_a, opaque_hom_dim) = match b.local_local.alpha_power {
        Some(d) => (d, 0),
        None => (0, b.local_local.hom_dim),
    };
    Ok(UnipotentDescriptor {
        p: b.p(),
        alpha_p: h1.checked_add(b.p_rank).ok_or(DescriptorError::Overflow)?,
        g_a,
        opaque_hom_dim,
    })
}

impl fmt::Display for UnipotentDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let power = |base: String, e: u64| if e == 1 { base } else { format!("{base}^{e}") };
        let mut parts = Vec::new();
        if self.alpha_p > 0 {
            parts.push(power(format!("α_{}", self.p), self.alpha_p));
        }
        if self.g_a > 0 {
            parts.push(power("G_a".to_string(), self.g_a));
        }
        if self.opaque_hom_dim > 0 {
            parts.push(format!("Hom(α_{}, I) [dim {}]", self.p, self.opaque_hom_dim));
        }
        f.write_str(&parts.join(" × "))
    }
}

use std::fmt;

use num_bigint::BigInt;

use crate::abgroup::FgAbelianGroup;
use crate::tropcurve::MetricGraph;
use crate::tropjac::{trojac, JacobianError};

use super::descriptor::{is_prime, Atom, DescriptorError, GroupDescriptor};

/// The closed point of the base: its residue characteristic and the rank of
/// the characteristic monoid there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseDescriptor {
    residue_char: u64,
    log_rank: u64,
}

impl BaseDescriptor {
    pub fn new(residue_char: u64, log_rank: u64) -> Result<Self, DescriptorError> {
        if residue_char != 0 && !is_prime(residue_char) {
            return Err(DescriptorError::BadResidueChar(residue_char));
        }
        Ok(BaseDescriptor { residue_char, log_rank })
    }

    pub fn residue_char(&self) -> u64 {
        self.residue_char
    }

    pub fn log_rank(&self) -> u64 {
        self.log_rank
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// A connected factor of `G^D` (some `μ_p` in residue characteristic `p`)
    /// that a discrete target cannot receive.
    ConnectedToDiscrete,
    /// Outside the cases the classification decides.
    Undecided,
}

impl Obstruction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Obstruction::ConnectedToDiscrete => "connected-to-discrete",
            Obstruction::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub factor: Atom,
    pub obstruction: Obstruction,
}

/// Whether torsors on the generic fibre extend to klf torsors over the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every factor has étale Cartier dual: extension exists and is unique.
    GuaranteedUnique,
    /// klf torsors coincide with fppf torsors; extension itself not implied.
    GuaranteedEquivFppf,
    NotGuaranteed(Witness),
    Unknown(Witness),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::GuaranteedUnique => "GuaranteedUnique",
            Verdict::GuaranteedEquivFppf => "GuaranteedEquivFppf",
            Verdict::NotGuaranteed(_) => "NotGuaranteed",
            Verdict::Unknown(_) => "Unknown",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotGuaranteed(w) | Verdict::Unknown(w) => Some(w),
            _ => None,
        }
    }

    fn severity(&self) -> u8 {
        match self {
            Verdict::GuaranteedUnique => 0,
            Verdict::GuaranteedEquivFppf => 1,
            Verdict::Unknown(_) => 2,
            Verdict::NotGuaranteed(_) => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            Some(w) => write!(f, "{} ({}: {})", self.name(), w.factor, w.obstruction.as_str()),
            None => f.write_str(self.name()),
        }
    }
}

fn atom_verdict(atom: Atom, base: &BaseDescriptor) -> Verdict {
    let p = base.residue_char;
    match atom {
        // dual Z/n is constant, hence étale
        Atom::Mu(_) => Verdict::GuaranteedUnique,
        Atom::Zmod(m) if p == 0 || !m.is_multiple_of(p) => Verdict::GuaranteedUnique,
        Atom::Zmod(_) => Verdict::NotGuaranteed(Witness {
            factor: atom,
            obstruction: Obstruction::ConnectedToDiscrete,
        }),
        Atom::AlphaP(q) if q == p => Verdict::GuaranteedEquivFppf,
        Atom::LocalLocal(ll) if ll.p == p && ll.alpha_power.is_some() => Verdict::GuaranteedEquivFppf,
        _ => Verdict::Unknown(Witness {
            factor: atom,
            obstruction: Obstruction::Undecided,
        }),
    }
}

/// Combines per-factor verdicts, reporting the most severe one (the first
/// such factor in descriptor order).
pub fn extendability(g: &GroupDescriptor, base: &BaseDescriptor) -> Verdict {
    g.factors()
        .iter()
        .map(|&a| atom_verdict(a, base))
        .fold(Verdict::GuaranteedUnique, |acc, v| {
            if v.severity() > acc.severity() {
                v
            } else {
                acc
            }
        })
}

/// `Hom(G^D, TroJac)` on its discrete part: each `Z/m` factor of `G^D`
/// contributes `TroJac[m]`; connected factors of `G^D` contribute nothing.
pub fn discrete_invariant(g: &GroupDescriptor, graph: &MetricGraph) -> Result<FgAbelianGroup, JacobianError> {
    let dual = g.cartier_dual();
    let orders: Vec<u64> = dual
        .factors()
        .iter()
        .filter_map(|a| match a {
            Atom::Zmod(m) => Some(*m),
            _ => None,
        })
        .collect();
    if orders.is_empty() {
        return Ok(FgAbelianGroup::trivial());
    }
    let jac = trojac(graph)?.group;
    Ok(orders
        .iter()
        .map(|&m| jac.n_torsion(&BigInt::from(m)))
        .fold(FgAbelianGroup::trivial(), |acc, t| acc.direct_sum(&t)))
}

pub const PIC0_LAYER: &str = "Pic⁰-layer: Hom(G^D, Pic⁰) — not computed";

/// The computable part of the torsor classification, with the abelian part
/// stated symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub group: GroupDescriptor,
    pub dual: GroupDescriptor,
    pub discrete: FgAbelianGroup,
    pub pic0_layer: &'static str,
}

pub fn classify(g: &GroupDescriptor, graph: &MetricGraph) -> Result<Classification, JacobianError> {
    Ok(Classification {
        group: g.clone(),
        dual: g.cartier_dual(),
        discrete: discrete_invariant(g, graph)?,
        pic0_layer: PIC0_LAYER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsors::LocalLocal;
    use crate::tropcurve::fixtures::*;

    fn desc(atoms: &[Atom]) -> GroupDescriptor {
        GroupDescriptor::new(atoms.to_vec()).unwrap()
    }

    #[test]
    fn mu_n_always_extends() {
        for p in [0, 2, 3, 5] {
            let base = BaseDescriptor::new(p, 1).unwrap();
            assert_eq!(extendability(&desc(&[Atom::Mu(10)]), &base), Verdict::GuaranteedUnique);
        }
    }

    #[test]
    fn z_mod_p_in_char_p() {
        let base = BaseDescriptor::new(3, 1).unwrap();
        let v = extendability(&desc(&[Atom::Zmod(3)]), &base);
        assert_eq!(
            v,
            Verdict::NotGuaranteed(Witness {
                factor: Atom::Zmod(3),
                obstruction: Obstruction::ConnectedToDiscrete
            })
        );
        assert_eq!(v.witness().unwrap().obstruction.as_str(), "connected-to-discrete");
    }

    #[test]
    fn invertible_order_extends() {
        let base = BaseDescriptor::new(2, 1).unwrap();
        assert_eq!(extendability(&desc(&[Atom::Zmod(15)]), &base), Verdict::GuaranteedUnique);
        let char0 = BaseDescriptor::new(0, 1).unwrap();
        assert_eq!(extendability(&desc(&[Atom::Zmod(4)]), &char0), Verdict::GuaranteedUnique);
    }

    #[test]
    fn alpha_p_and_local_local() {
        let base = BaseDescriptor::new(5, 1).unwrap();
        assert_eq!(extendability(&desc(&[Atom::AlphaP(5)]), &base), Verdict::GuaranteedEquivFppf);
        assert!(matches!(extendability(&desc(&[Atom::AlphaP(3)]), &base), Verdict::Unknown(_)));
        let opaque = Atom::LocalLocal(LocalLocal::new(5, 2, None).unwrap());
        assert!(matches!(extendability(&desc(&[opaque, Atom::Mu(5)]), &base), Verdict::Unknown(_)));
        let mixed = desc(&[Atom::Mu(5), Atom::AlphaP(5), Atom::Zmod(5)]);
        assert!(matches!(extendability(&mixed, &base), Verdict::NotGuaranteed(_)));
        assert!(BaseDescriptor::new(4, 0).is_err());
    }

    #[test]
    fn discrete_invariants() {
        assert_eq!(discrete_invariant(&desc(&[Atom::Mu(7)]), &nodal_loop(7)).unwrap(), FgAbelianGroup::cyclic(7));
        assert!(discrete_invariant(&desc(&[Atom::Zmod(7)]), &nodal_loop(7)).unwrap().is_trivial());
        let g = discrete_invariant(&desc(&[Atom::Mu(4), Atom::Mu(6)]), &nodal_loop(12)).unwrap();
        let expected = FgAbelianGroup::cyclic(4).direct_sum(&FgAbelianGroup::cyclic(6));
        assert_eq!(g, expected);
        assert_eq!(g.to_string(), "Z/2 x Z/12");
        let c = classify(&desc(&[Atom::Mu(3)]), &nodal_loop(6)).unwrap();
        assert_eq!(c.discrete, FgAbelianGroup::cyclic(3));
        assert_eq!(c.pic0_layer, PIC0_LAYER);
    }
}

//! Finite flat commutative group descriptors and the discrete side of the
//! torsor classification on log curves.

mod bt1;
mod descriptor;
mod extension;
mod weil;

pub use bt1::{alpha_p_torsor_group, bt1_decompose, Bt1Descriptor, UnipotentDescriptor};
pub use descriptor::{cartier_dual, is_prime, Atom, DescriptorError, GroupDescriptor, LocalLocal};
pub use extension::{
    classify, discrete_invariant, extendability, BaseDescriptor, Classification, Obstruction, Verdict, Witness,
    PIC0_LAYER,
};
pub use weil::weil_pairing_split;

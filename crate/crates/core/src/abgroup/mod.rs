//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod matrix;
mod normal_form;

pub use group::{cokernel, hom_group, torsion_part, FgAbelianGroup, GroupParseError};
pub use matrix::IntMatrix;
pub use normal_form::{
    hermite_column_form, integer_kernel, rank, smith_diagonal, smith_normal_form, solve_integer,
    SmithForm,
};

use thiserror::Error;

use crate::abgroup::GroupParseError;
use crate::json::ParseError;
use crate::monoid::MonoidError;
use crate::plfun::PlError;
use crate::torsors::DescriptorError;
use crate::tropcurve::GraphError;
use crate::tropjac::JacobianError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupParseError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Jacobian(e) if e.is_internal())
    }
}

use crate::census::CensusError;
use crate::families::{BuildError, CheckError, NormalFormError, ParamError, ScopeError};
use crate::fpgroups::{EnumerationError, ParseError};
use crate::graphs::GraphError;
use crate::maps::MapError;
use crate::numtheory::NumError;
use crate::permgroup::PermError;

/// Any error the library can produce.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    #[error("invalid label: {0}")]
    Label(String),
    #[error("unphysical parameter: {0}")]
    Unphysical(String),
    #[error("unsupported dimension D={0}: {1}")]
    UnsupportedDimension(usize, String),
    #[error("operator {0:?} is not available in the {1} picture")]
    Catalogue(String, String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("derivative order {0} exceeds 2")]
    DerivativeOrder(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

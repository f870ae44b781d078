use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("square does not commute")]
    NotCommutative,
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(&'static str),
    #[error("square is not cartesian")]
    NotCartesian,
    #[error("mismatch: {0}")]
    Mismatch(&'static str),
    #[error("factor {index} does not target the base group")]
    TargetMismatch { index: usize },
    #[error("index {index} out of range for {len} factors")]
    BadIndex { index: usize, len: usize },
    #[error("factor list is empty")]
    EmptyFactorList,
    #[error("incompatible maps: {0}")]
    Incompatible(&'static str),
    #[error("subgroup is not inside the kernel")]
    NotInsideKernel,
    #[error("subgroup is not central in the kernel")]
    NotCentralInKernel,
    #[error("subgroup is not elementary abelian")]
    NotElementaryAbelian,
    #[error("module is not simple")]
    NotSimple,
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("module is not generated by the simple module")]
    NotAGenerated,
    #[error("subspace is not a submodule")]
    NotSubmodule,
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("kernel is not abelian")]
    KernelNotAbelian,
    #[error("map is not an isomorphism")]
    NotIsomorphism,
    #[error("classes live in different cohomology spaces")]
    SpaceMismatch,
    #[error("cover is not fundamental")]
    NotFundamental,
    #[error("covers have different base groups")]
    BaseMismatch,
    #[error("stage {index} of the chain is not fundamental")]
    NotFundamentalStage { index: usize },
    #[error("invalid module: {0}")]
    InvalidModule(&'static str),
}

pub mod cohomology;
pub mod differential;
pub mod enumerate;
pub mod graph;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod rep;
pub mod stable;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Enum(#[from] enumerate::EnumError),
    #[error(transparent)]
    Diff(#[from] differential::DiffError),
    #[error(transparent)]
    Rank(#[from] linalg::RankError),
    #[error(transparent)]
    Stable(#[from] stable::StableError),
    #[error(transparent)]
    Rep(#[from] rep::RepError),
    #[error(transparent)]
    Lie(#[from] lie::LieError),
}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod chapter1 {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod chapter2 {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod chapter3 {}
#[doc = include_str!("../../../book/src/representations.md")]
pub mod chapter4 {}
#[doc = include_str!("../../../book/src/lie.md")]
pub mod chapter5 {}
#[doc = include_str!("../../../book/src/stable.md")]
pub mod chapter6 {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod chapter7 {}

pub mod check;
pub mod corpus;
pub mod eqcomplex;
pub mod exactla;
pub mod grpring;
pub mod obstruction;
pub mod problem;
pub mod realizable;
pub mod serde_util;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/group-rings.md")]
    mod group_rings {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/obstruction.md")]
    mod obstruction {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

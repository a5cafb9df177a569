pub mod analysis;
pub mod config;
pub mod corpus;
pub mod error;
pub mod exponent;
mod hull;
pub mod ideal;
pub mod lct;
pub mod monomial;
pub mod mora;
mod modp;
pub mod multiplicity;
pub mod newton;
pub mod ops;
pub mod oracle;
pub mod order;
pub mod poly;
pub mod rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ideal-files.md")]
    mod ideal_files {}
    #[doc = include_str!("../../../book/src/newton-polyhedra.md")]
    mod newton_polyhedra {}
    #[doc = include_str!("../../../book/src/standard-bases.md")]
    mod standard_bases {}
    #[doc = include_str!("../../../book/src/multiplicities.md")]
    mod multiplicities {}
    #[doc = include_str!("../../../book/src/thresholds.md")]
    mod thresholds {}
    #[doc = include_str!("../../../book/src/diagonality.md")]
    mod diagonality {}
    #[doc = include_str!("../../../book/src/convergence.md")]
    mod convergence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Chromatic graph cohomology with exact arithmetic.
//!
//! The crate builds the bigraded chromatic cochain complex of a simple graph
//! over the algebra `ℤ[x]/(x²)`, in its standard form and in the reduced form
//! where the component of a chosen base vertex is always colored `x`. It
//! computes Betti tables and Poincaré polynomials exactly, checks integral
//! torsion with Smith normal forms, and relates everything to the chromatic
//! polynomial.
//!
//! ```
//! use chroma::complex::Theory;
//! use chroma::graph::families::complete;
//! use chroma::{chromatic, homology};
//!
//! let k4 = complete(4);
//! let betti = homology::betti_table(&k4, Theory::Reduced).unwrap();
//! let h = chromatic::h_vector(&k4).unwrap();
//! for i in 0..4 {
//!     assert_eq!(betti.get(i, 3 - i), u64::try_from(h.get(i)).unwrap());
//! }
//! ```

pub mod chromatic;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod poly;
pub mod table;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/chromatic.md")]
    pub struct Chromatic;
    #[doc = include_str!("../../../book/src/complex.md")]
    pub struct Complex;
    #[doc = include_str!("../../../book/src/cohomology.md")]
    pub struct Cohomology;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}

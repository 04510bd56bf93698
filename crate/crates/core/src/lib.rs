//! Reduction trees of directed multigraphs, flow polytopes, left-degree
//! polynomials as generalized permutahedra, and pipe-dream Schubert and
//! Grothendieck polynomials.

pub mod arrays;
pub mod error;
pub mod flow;
pub mod genperm;
pub mod graph;
pub mod hull;
pub mod newton;
pub mod poly;
pub mod reduction;
pub mod scan;
pub mod schubert;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSubset, MultiGraph};
pub use poly::{QPoly, SparsePolynomial};
pub use schubert::Permutation;

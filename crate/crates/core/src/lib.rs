//! Uniform triangulations of simplicial complexes: f-triangles, the linear
//! map they induce on h-vectors, explicit subdivision oracles, and exact
//! real-rootedness certificates.

pub mod colored;
pub mod numbers;
pub mod poly;
pub mod rootcert;
pub mod scomplex;
pub mod transform;
pub mod triangles;

pub use poly::{Polynomial, Rational};
pub use rootcert::{interlaces, is_real_rooted, RootCertificate};
pub use scomplex::{SimplicialComplex, Subdivision};
pub use transform::{apply_h, coeff_table, CoeffTable};
pub use triangles::{derive, validate, Catalog, DerivedTriangles, FTriangle};

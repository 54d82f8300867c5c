//! Composition-monoid calculus for representations of acyclic quivers.
//!
//! - [`quiver`]: quivers, dimension vectors, the Euler form.
//! - [`schofield`]: generic ext/hom, Schur roots, canonical decomposition.
//! - [`normal_form`]: rewriting products of full spaces.
//! - [`oracle`]: brute-force point sets over small prime fields.
//! - [`qalgebra`]: quantum Serre relations and their `q = 0` degeneration.
//! - [`word`]: words as composition types, zero patterns, the swap order.

pub mod error;
pub mod fp;
pub mod normal_form;
pub mod oracle;
pub mod qalgebra;
pub mod quiver;
pub mod schofield;
pub mod word;

pub use error::{Error, Result};
pub use normal_form::{NormalForms, ProductForm, Verdict};
pub use oracle::{FamilySet, FqRep, Oracle};
pub use qalgebra::{NCPoly, QPoly};
pub use quiver::{DimVector, Quiver, Vertex, VertexOrder};
pub use schofield::{drel3_threshold, Decomposition, ExtRoute, Schofield};
pub use word::{Hasse, Word, ZeroPattern};

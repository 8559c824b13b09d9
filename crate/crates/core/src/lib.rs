//! Exact combinatorics of `μ`-admissible sets in extended affine Weyl groups.
//!
//! The crate builds root data, finite and extended affine Weyl groups, the
//! admissible set `Adm(μ)`, the face poset of the coweight polytope `P_μ`,
//! the faces `Adm(μ)_F` with their interiors and centers, and the face map
//! sending `w` to the smallest face containing `Λ(w)`. The [`verify`] module
//! turns the structural theorems about these objects into exhaustive checks.

pub mod admissible;
pub mod affine;
pub mod error;
pub mod face_map;
pub mod finite_weyl;
pub mod linalg;
pub mod polytope;
pub mod root_datum;
pub mod verify;

mod case;

pub use admissible::{AdmissibleSet, SubRootSystem};
pub use affine::{AffineRoot, AffineSystem, ExtAffineElt, RationalPoint};
pub use case::{parse_coweight, Case};
pub use error::{Error, Result};
pub use face_map::{AdmFace, FaceDecomposition};
pub use finite_weyl::{FiniteWeylElt, WeylGroup};
pub use polytope::{FaceHandle, FacePoset};
pub use root_datum::{CartanType, Coweight, Family, NodeSet, Root, RootDatum};

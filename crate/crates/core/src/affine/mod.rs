//! The extended affine Weyl group: elements, affine roots, lengths, the
//! Bruhat order, lower ideals and combinatorial obtuse cones.

mod element;
mod obtuse;
mod system;

pub use element::{AffineRoot, ExtAffineElt, RationalPoint};
pub use obtuse::default_depth;
pub use system::{base_alcove_barycenter, AffineSystem};

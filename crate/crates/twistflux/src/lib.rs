//! Exact combinatorial geometry on square-tiled surfaces built from filling
//! pairs of multicurves: affine Dehn twists, pseudo-Anosov certificates, the
//! induced action on first homology, and the flux of area-preserving twist
//! compositions. All arithmetic is exact; the only floating point anywhere
//! is the reported approximation of a dilatation.
//!
//! Start with the [`builders`] for ready-made surfaces, or parse one from
//! the line-oriented surface file format via [`SquareComplex::parse`]. The
//! runnable examples under `examples/` walk through each capability.

pub mod builders;
pub mod cli;
pub mod curves;
pub mod error;
pub mod flux;
pub mod homology;
pub mod surface;
pub mod twists;

pub use curves::{polyline_from_traversal, traversal_of, Polyline, Traversal};
pub use error::{Error, Result};
pub use flux::{flux, flux_hom, winding_oracle, FluxReport, FluxValue};
pub use homology::{build_frame, twist_action, HomologyFrame};
pub use surface::{CurveRef, Family, SquareComplex};
pub use twists::{apply_twist, apply_word, pa_certificate, PAResult, TwistWord};

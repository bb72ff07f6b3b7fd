//! Light-field compression laboratory.
//!
//! * [`field`], [`ppm`], [`manifest`]: 4D light fields of 8-bit RGB views and their on-disk form.
//! * [`refocus`]: shift-sum rendering of virtual focal planes.
//! * [`codec`]: a JPEG-style lossy codec whose DCT runs over 2, 3 or 4 dimensions.
//! * [`metrics`]: direct and focal-stack PSNR.
//! * [`harness`]: rate-distortion sweeps and Y4M pseudo-sequence interchange.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the codec and harness use.

pub mod codec;
pub mod error;
pub mod field;
pub mod harness;
pub mod manifest;
pub mod metrics;
pub mod ppm;
pub mod refocus;
pub mod scalar;
pub mod synthetic;

pub use codec::{decode, encode, CodecConfig, EncodedStream};
pub use error::{Error, Result};
pub use field::{Dims, LightField, Planar, View};
pub use manifest::{load_light_field, save_light_field, Manifest};
pub use metrics::{direct_psnr, mean_focal_psnr, psnr, RdPoint};
pub use refocus::{make_alpha_sweep, render_focal_stack, render_refocused, RefocusParams, Rendered, Stack};
pub use scalar::Real;

pub type PlanarField = Planar<f64>;
pub type PlanarField32 = Planar<f32>;
pub type RenderedView = Rendered<f64>;
pub type FocalStack = Stack<f64>;

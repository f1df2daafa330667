//! Polar encoder and exact-LLR successive-cancellation decoder.
//!
//! Input bits `u` live in the index space produced by the reliability
//! computations. The encoder bit-reverses `u` into `v` and applies the
//! Kronecker butterfly, so the decoder walks `v` in natural order, which is
//! `u` in bit-reversed order.

mod decoder;
mod encoder;
mod llr;

pub use decoder::{ScDecoder, ScOutput};
pub use encoder::{bit_reverse, encode, polar_transform};
pub use llr::{boxplus, boxplus_tanh, channel_llr, min_sum, Llr};

/// One bit per byte, values 0 or 1.
pub type BitVector = Vec<u8>;

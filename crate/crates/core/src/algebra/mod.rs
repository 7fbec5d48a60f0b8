mod element;
mod genpower;
pub mod mono;
mod radial;
mod signature;

pub use element::{accumulate, SuperElement};
pub use genpower::{compose_scalar, compose_scalar_split, scalar_power, TaylorProvider};
pub use mono::Mono;
pub use signature::{Block, BlockId, Frame, RadialSpec, Sig, Signature, SignatureBuilder, SignatureError};

#[cfg(test)]
mod tests;

//! Optimal decomposable entanglement witnesses on two qutrits, their
//! structural physical approximation (SPA), and tools showing that the SPA
//! can be an entangled PPT state.
//!
//! * [`linalg`]: dense complex kernel (Kronecker product, partial transpose,
//!   realignment, Jacobi eigensolver, singular values).
//! * [`weyl`]: Weyl operators and the generalized Bell basis.
//! * [`witness`]: `B_gamma`, `W_gamma`, the SPA state and the PPT check.
//! * [`realignment`]: the realignment criterion, numerically and in closed form.
//! * [`optimality`]: product-vector zero set, span ranks, see-saw overlap.
//! * [`exact`]: exact Eisenstein-rational certificate at `gamma = 3/4`.
//! * [`scan`]: the gamma sweep behind the margin curve.

pub mod error;
pub mod exact;
pub mod linalg;
pub mod optimality;
pub mod realignment;
pub mod sampling;
pub mod scan;
pub mod weyl;
pub mod witness;

pub use error::{Error, Result};

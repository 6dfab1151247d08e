//! Computer-generated holography engine: complex fields, propagation,
//! hologram optimisation algorithms, a typed parameter tree, persistence
//! and batch control.

pub mod algorithms;
pub mod controller;
pub mod hierarchy;
pub mod image;
pub mod propagation;
pub mod serialio;

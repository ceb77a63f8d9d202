//! Polarity graphs of algebraically defined geometries over finite fields,
//! their closed-form complete partitions, and exact or sampled verification
//! of the resulting achromatic and pseudo-achromatic bounds.

pub mod adg;
pub mod cli;
pub mod gf;
pub mod graphs;
pub mod partitions;
pub mod verify;

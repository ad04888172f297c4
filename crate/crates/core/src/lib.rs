//! Sampling and reconstruction of band-limited signals on weighted graphs,
//! and of solutions of the graph Schrödinger equation `i ∂_t g = Δ g`.
//!
//! The numerical core is generic over the scalar type through [`scalar::Real`]
//! (implemented for `f32` and `f64`); the `*64` aliases below fix `f64`.

pub mod error;
pub mod evolution;
pub mod generators;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod spacetime;
pub mod spectral;

pub use error::{Error, ErrorClass, Result};
pub use graph::{build_graph, Graph, GraphId, MeasureMode, Signal, VertexSet};
pub use scalar::Real;
pub use spectral::{eigendecompose, Spectrum};

pub type Graph64 = graph::Graph<f64>;
pub type Signal64 = graph::Signal<f64>;
pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Certificate64 = sampling::SamplingCertificate<f64>;
pub type DualFrame64 = sampling::DualFrame<f64>;
pub type TimeSamples64 = evolution::TimeSamples<f64>;
pub type SpaceTimeSamples64 = spacetime::SpaceTimeSamples<f64>;
pub type Complex64 = num_complex::Complex<f64>;

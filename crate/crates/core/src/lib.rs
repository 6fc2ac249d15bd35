//! Energy spectrum and wavefunctions of a charged particle on a sphere in the
//! field of a magnetic monopole, repelled by a point charge at the north pole.
//!
//! The angular equation reduces to a Heun equation whose accessory parameter
//! is quantized by a continued-fraction condition. The crate solves that
//! condition ([`spectrum`]), rebuilds the eigenfunctions ([`wavefunction`]),
//! and carries three independent cross-checks: a finite-difference
//! Sturm–Liouville solver ([`oracle`]), semiclassical quantization
//! ([`classical`]) and analytic limits ([`limits`]).
//!
//! Energies are dimensionless, in units of `ħ²/(2MR²)`.

pub mod classical;
pub mod contfrac;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod recursion;
pub mod spectrum;
pub mod sweep;
pub mod wavefunction;

pub use error::{Error, Result};
pub use params::{Exponents, HeunParams, PhysicalConfig};


pub use spectrum::{spectrum, EnergyLevel, ScanSettings};
pub use wavefunction::WaveFunction;

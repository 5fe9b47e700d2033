//! Periods, L² energies, pairings and the classical partition function.

pub mod energy;
pub mod pairing;
pub mod partition;
pub mod periods;
pub mod quadrature;
pub mod quantization;

pub use energy::{energy_boundary, energy_direct, BoundaryEnergy, DirectEnergy, HarmonicPotential};
pub use pairing::{gram_matrix, intersection_matrix, stokes_crosscheck, GramMatrix, IntersectionMatrix, StokesCheck};
pub use partition::{partition_classical, PartitionResult};
pub use periods::{period_direct, period_localized, period_table, OrientationRegistry, PeriodTable};
pub use quadrature::QuadratureSpec;
pub use quantization::{instanton_curvature, quantization_check, Quantization};

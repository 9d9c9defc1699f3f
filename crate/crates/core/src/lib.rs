//! Numerical toolkit for free-fermion chains: ground-state correlation
//! matrices, entanglement (modular) Hamiltonians and temperatures, mutual
//! information and Schmidt-basis conditioning, a brute-force many-body
//! oracle, and evaluators for entropic forces and local-temperature
//! kinematics.

pub mod csv;
pub mod ed;
pub mod error;
pub mod gaussian;
pub mod info;
pub mod lattice;
mod linalg;
pub mod region;
pub mod semiclassics;

pub use error::{Error, Result};
pub use gaussian::{
    entanglement_spectrum, entanglement_temperature, entropy, modular_hamiltonian, relative_entropy, restrict,
    von_neumann_entropy, EntanglementHamiltonian, EntanglementSpectrum, EntanglementTemperature,
};
pub use info::{
    conditional_entropy, conditioned_statistics, energy_mean_variance, mutual_information, projected_energy_width,
    region_energy_operator, ConditionedStats, EnergyStats, InfoReport, SchmidtBasis, SchmidtOutcome, Strategy,
};
pub use lattice::{
    build_single_particle_hamiltonian, ground_state_correlations, Boundary, CorrelationMatrix, LatticeSpec,
    SingleParticleMatrix,
};
pub use region::Region;

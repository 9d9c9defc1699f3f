//! Tight-binding chain and its ground-state correlation matrix.
//!
//! The single-particle Hamiltonian is `H = -t Σ (c†_{i+1} c_i + h.c.) - μ Σ n_i`,
//! so positive `μ` favours occupation.

use nalgebra::{DMatrix, DVector};

use crate::csv::matrix_csv;
use crate::error::{Error, Result};
use crate::linalg::sym_eigen;

/// Fermi-level gap below which the ground state is considered ill-defined.
pub const FERMI_GAP_TOL: f64 = 1e-9;

/// Boundary condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    /// Ring with a `-t` bond between the last and first site.
    Periodic,
    /// Ring with the sign of the closing bond flipped (`+t`). At half filling
    /// with `N ≡ 0 (mod 4)` this is the closed-shell ring.
    Antiperiodic,
}

impl Boundary {
    pub fn is_ring(self) -> bool {
        !matches!(self, Boundary::Open)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub n_sites: usize,
    pub hopping: f64,
    pub chem_potential: f64,
    pub boundary: Boundary,
    pub n_particles: usize,
}

impl LatticeSpec {
    /// Chain at half filling (`n_sites / 2` particles).
    pub fn new(n_sites: usize, hopping: f64, chem_potential: f64, boundary: Boundary) -> Result<Self> {
        let spec = LatticeSpec {
            n_sites,
            hopping,
            chem_potential,
            boundary,
            n_particles: n_sites / 2,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_particles(mut self, n_particles: usize) -> Result<Self> {
        self.n_particles = n_particles;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::InvalidLattice(format!("n_sites = {} < 2", self.n_sites)));
        }
        if self.boundary.is_ring() && self.n_sites < 3 {
            return Err(Error::InvalidLattice("a ring needs at least 3 sites".into()));
        }
        if self.n_particles > self.n_sites {
            return Err(Error::InvalidLattice(format!(
                "{} particles on {} sites",
                self.n_particles, self.n_sites
            )));
        }
        if !self.hopping.is_finite() || !self.chem_potential.is_finite() {
            return Err(Error::InvalidLattice("non-finite hopping or chemical potential".into()));
        }
        Ok(())
    }

    /// Nearest-neighbour bonds `(i, j, amplitude)` with `i < j`; the amplitude is
    /// the matrix element `H_ij`.
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n_sites;
        let mut bonds: Vec<_> = (0..n - 1).map(|i| (i, i + 1, -self.hopping)).collect();
        match self.boundary {
            Boundary::Open => {}
            Boundary::Periodic => bonds.push((0, n - 1, -self.hopping)),
            Boundary::Antiperiodic => bonds.push((0, n - 1, self.hopping)),
        }
        bonds
    }
}

/// Real symmetric single-particle operator `Σ K_ij c†_i c_j` (energy units).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleParticleMatrix {
    pub sites: Vec<usize>,
    pub matrix: DMatrix<f64>,
}

impl SingleParticleMatrix {
    pub fn new(sites: Vec<usize>, matrix: DMatrix<f64>) -> Result<Self> {
        check_square(&sites, &matrix)?;
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::InvalidArgument(format!("matrix not symmetric (|A - Aᵀ| = {asym:e})")));
        }
        Ok(SingleParticleMatrix { sites, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        crate::linalg::sym_eigenvalues(&self.matrix)
    }
}

/// Occupied and empty single-particle orbitals of a pure Slater determinant,
/// rows aligned with the sites of the owning correlation matrix:
/// `C = Φ Φᵀ` and `1 - C = Ψ Ψᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbitals {
    pub filled: DMatrix<f64>,
    pub empty: DMatrix<f64>,
}

impl Orbitals {
    fn rows(&self, pos: &[usize]) -> Orbitals {
        Orbitals {
            filled: self.filled.select_rows(pos),
            empty: self.empty.select_rows(pos),
        }
    }
}

/// `C_ij = ⟨c†_i c_j⟩` on an ordered list of lattice sites.
///
/// Ground states also carry their orbitals, from which occupations extremely
/// close to 0 or 1 can be resolved far below the rounding level of `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    sites: Vec<usize>,
    matrix: DMatrix<f64>,
    orbitals: Option<Orbitals>,
}

impl CorrelationMatrix {
    /// Wraps a symmetric matrix. `sites` must be strictly increasing.
    pub fn new(sites: Vec<usize>, matrix: DMatrix<f64>) -> Result<Self> {
        check_square(&sites, &matrix)?;
        if sites.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidRegion("site list must be strictly increasing".into()));
        }
        Ok(CorrelationMatrix {
            sites,
            matrix,
            orbitals: None,
        })
    }

    /// Pure state `C = Φ Φᵀ` from occupied and empty orbitals which together
    /// form an orthonormal basis.
    pub fn from_orbitals(sites: Vec<usize>, orbitals: Orbitals) -> Result<Self> {
        if orbitals.filled.nrows() != sites.len() || orbitals.empty.nrows() != sites.len() {
            return Err(Error::DimensionMismatch(sites.len(), orbitals.filled.nrows()));
        }
        let c = crate::linalg::symmetrize(&(&orbitals.filled * orbitals.filled.transpose()));
        let mut out = Self::new(sites, c)?;
        out.orbitals = Some(orbitals);
        Ok(out)
    }

    pub fn orbitals(&self) -> Option<&Orbitals> {
        self.orbitals.as_ref()
    }

    /// Principal submatrix at the given positions (not sites).
    pub(crate) fn select(&self, pos: &[usize]) -> Result<Self> {
        let sites = pos.iter().map(|&p| self.sites[p]).collect();
        let m = DMatrix::from_fn(pos.len(), pos.len(), |i, j| self.matrix[(pos[i], pos[j])]);
        let mut out = Self::new(sites, m)?;
        out.orbitals = self.orbitals.as_ref().map(|o| o.rows(pos));
        Ok(out)
    }

    /// `C = U diag(p) Uᵀ` from orthonormal mode columns and occupations.
    pub fn from_modes(sites: Vec<usize>, modes: &DMatrix<f64>, occupations: &[f64]) -> Result<Self> {
        if modes.ncols() != occupations.len() {
            return Err(Error::DimensionMismatch(modes.ncols(), occupations.len()));
        }
        let p = DVector::from_column_slice(occupations);
        let scaled = modes * DMatrix::from_diagonal(&p);
        Self::new(sites, &scaled * modes.transpose())
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.sites.len()
    }

    /// Expected particle number in the site set.
    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Position of a lattice site within this matrix.
    pub fn position(&self, site: usize) -> Option<usize> {
        self.sites.binary_search(&site).ok()
    }

    pub fn to_csv(&self) -> String {
        matrix_csv(&self.matrix)
    }
}

fn check_square(sites: &[usize], m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
    }
    if sites.len() != m.nrows() {
        return Err(Error::DimensionMismatch(sites.len(), m.nrows()));
    }
    Ok(())
}

pub fn build_single_particle_hamiltonian(spec: &LatticeSpec) -> SingleParticleMatrix {
    let n = spec.n_sites;
    let mut h = DMatrix::from_diagonal_element(n, n, -spec.chem_potential);
    for (i, j, amp) in spec.bonds() {
        h[(i, j)] += amp;
        h[(j, i)] += amp;
    }
    SingleParticleMatrix {
        sites: (0..n).collect(),
        matrix: h,
    }
}

/// Ground state with `n_particles` fermions filling the lowest orbitals.
pub fn ground_state_correlations(spec: &LatticeSpec) -> Result<CorrelationMatrix> {
    spec.validate()?;
    let h = build_single_particle_hamiltonian(spec);
    let (energies, orbitals) = sym_eigen(&h.matrix);
    let n = spec.n_sites;
    let nf = spec.n_particles;
    if nf > 0 && nf < n && energies[nf] - energies[nf - 1] <= FERMI_GAP_TOL {
        return Err(Error::DegenerateFermiLevel {
            n_particles: nf,
            below: energies[nf - 1],
            above: energies[nf],
        });
    }
    CorrelationMatrix::from_orbitals(
        (0..n).collect(),
        Orbitals {
            filled: orbitals.columns(0, nf).into_owned(),
            empty: orbitals.columns(nf, n - nf).into_owned(),
        },
    )
}

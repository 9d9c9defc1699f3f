//! Reduced states of site regions as fermionic Gaussian states.
//!
//! A region's reduced density matrix is `ρ_A = exp(-Σ h_ij a†_i a_j) / Z` where
//! the single-particle matrix `h` shares eigenvectors with the restricted
//! correlation matrix and has eigenvalues `ε_k = ln((1 - p_k) / p_k)`.

use nalgebra::{DMatrix, DVector};

use crate::csv::{column_csv, matrix_csv};
use crate::error::{Error, Result};
use crate::lattice::{CorrelationMatrix, LatticeSpec, SingleParticleMatrix};
use crate::linalg::{binary_entropy, softplus, sym_eigen};
use crate::region::Region;

/// Occupations are clipped into `[CLIP, 1 - CLIP]` before taking the log.
pub const OCCUPATION_CLIP: f64 = 1e-12;
/// Clip for spectra computed from orbitals; `p` is resolved to roughly
/// `1e-16 · sqrt(p)` there.
pub const ORBITAL_OCCUPATION_CLIP: f64 = 1e-30;
/// Eigenvalues further than this outside `[0, 1]` indicate a broken state.
pub const STATE_TOL: f64 = 1e-6;

/// Principal submatrix of `c` on the region's sites.
pub fn restrict(c: &CorrelationMatrix, region: &Region) -> Result<CorrelationMatrix> {
    let pos = region
        .indices()
        .iter()
        .map(|&s| c.position(s).ok_or(Error::IndexOutOfRange(s)))
        .collect::<Result<Vec<_>>>()?;
    c.select(&pos)
}

#[derive(Debug, Clone)]
pub struct EntanglementSpectrum {
    pub sites: Vec<usize>,
    /// Eigenvalues `p_k` of the correlation matrix, descending.
    pub occupations: Vec<f64>,
    /// `1 - p_k`, resolved independently when orbitals are available.
    pub vacancies: Vec<f64>,
    /// Orthonormal single-particle modes, one column per occupation.
    pub modes: DMatrix<f64>,
    /// `ln((1-p)/p)` of the clipped occupations; ascending.
    pub modular_energies: Vec<f64>,
    /// Floor applied to `p` and `1-p` before taking logs.
    pub clip: f64,
}

impl EntanglementSpectrum {
    pub fn len(&self) -> usize {
        self.occupations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupations.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = column_csv("occupation", &self.occupations);
        out.push_str(&column_csv("modular_energy", &self.modular_energies));
        out
    }
}

/// `ln((1-p)/p)` with both `p` and `1-p` floored at [`OCCUPATION_CLIP`].
pub fn modular_energy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    clipped_log_ratio(p, 1.0 - p, OCCUPATION_CLIP)
}

fn clipped_log_ratio(p: f64, q: f64, clip: f64) -> f64 {
    q.max(clip).ln() - p.max(clip).ln()
}

/// Diagonalizes `g`. Plain matrices go through a symmetric eigensolver and
/// occupations are clipped at [`OCCUPATION_CLIP`]; matrices carrying orbitals
/// use singular values of the restricted orbitals instead, which resolve `p`
/// and `1 - p` down to [`ORBITAL_OCCUPATION_CLIP`].
pub fn entanglement_spectrum(g: &CorrelationMatrix) -> Result<EntanglementSpectrum> {
    if let Some(orb) = g.orbitals() {
        return spectrum_from_orbitals(g.sites(), orb);
    }
    let n = g.dim();
    let (values, vectors) = sym_eigen(g.matrix());
    if let Some(&bad) = values
        .iter()
        .find(|&&p| !(-STATE_TOL..=1.0 + STATE_TOL).contains(&p) || !p.is_finite())
    {
        return Err(Error::NotAState(bad));
    }
    let occupations: Vec<f64> = values.iter().rev().copied().collect();
    let mut modes = DMatrix::zeros(n, n);
    for k in 0..n {
        modes.set_column(k, &vectors.column(n - 1 - k));
    }
    let vacancies: Vec<f64> = occupations.iter().map(|&p| 1.0 - p.clamp(0.0, 1.0)).collect();
    let modular_energies = occupations.iter().map(|&p| modular_energy(p)).collect();
    Ok(EntanglementSpectrum {
        sites: g.sites().to_vec(),
        occupations,
        vacancies,
        modes,
        modular_energies,
        clip: OCCUPATION_CLIP,
    })
}

/// Left singular pairs of `m` completed to a square basis (missing singular
/// values are zero), ascending in singular value.
fn left_singular_basis(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    let (mut values, u, _) = crate::linalg::svd(m)?;
    values.resize(n, 0.0);
    values.reverse();
    let order: Vec<usize> = (0..n).rev().collect();
    Ok((values, u.select_columns(&order)))
}

fn spectrum_from_orbitals(sites: &[usize], orb: &crate::lattice::Orbitals) -> Result<EntanglementSpectrum> {
    let n = sites.len();
    // p = σ² of the filled block, 1 - p = τ² of the empty block
    let (sigma, u_filled) = left_singular_basis(&orb.filled)?;
    let (tau, u_empty) = left_singular_basis(&orb.empty)?;
    let n_low = sigma.iter().filter(|&&s| s * s < 0.5).count();
    let mut entries: Vec<(f64, f64, usize, bool)> = Vec::with_capacity(n);
    for k in 0..n - n_low {
        let q = tau[k] * tau[k];
        entries.push((1.0 - q, q, k, false));
    }
    for (k, &s) in sigma.iter().enumerate().take(n_low).rev() {
        let p = s * s;
        entries.push((p, 1.0 - p, k, true));
    }
    let mut modes = DMatrix::zeros(n, n);
    for (col, &(_, _, k, low)) in entries.iter().enumerate() {
        let src = if low { &u_filled } else { &u_empty };
        modes.set_column(col, &src.column(k));
    }
    let clip = ORBITAL_OCCUPATION_CLIP;
    Ok(EntanglementSpectrum {
        sites: sites.to_vec(),
        occupations: entries.iter().map(|e| e.0).collect(),
        vacancies: entries.iter().map(|e| e.1).collect(),
        modes,
        modular_energies: entries.iter().map(|e| clipped_log_ratio(e.0, e.1, clip)).collect(),
        clip,
    })
}

/// `S = -Σ [p ln p + (1-p) ln(1-p)]` over the raw occupations, in nats.
pub fn von_neumann_entropy(spec: &EntanglementSpectrum) -> f64 {
    spec.occupations
        .iter()
        .zip(&spec.vacancies)
        .map(|(&p, &q)| xlogx(p) + xlogx(q))
        .sum()
}

fn xlogx(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Entropy straight from a correlation matrix.
pub fn entropy(c: &CorrelationMatrix) -> Result<f64> {
    let values = crate::linalg::sym_eigenvalues(c.matrix());
    if let Some(&bad) = values.iter().find(|&&p| !(-STATE_TOL..=1.0 + STATE_TOL).contains(&p)) {
        return Err(Error::NotAState(bad));
    }
    Ok(values.into_iter().map(binary_entropy).sum())
}

/// `|h_ij|` on a nearest-neighbour bond inside one block of the region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BondElement {
    pub left_site: usize,
    pub right_site: usize,
    pub magnitude: f64,
}

#[derive(Debug, Clone)]
pub struct EntanglementHamiltonian {
    pub sites: Vec<usize>,
    pub matrix: DMatrix<f64>,
    /// First off-diagonal magnitudes within each contiguous block.
    pub bond_profile: Vec<BondElement>,
}

impl EntanglementHamiltonian {
    pub fn region(&self) -> Region {
        Region::new(self.sites.clone()).expect("sites are sorted")
    }

    pub fn max_bond(&self) -> Option<f64> {
        self.bond_profile.iter().map(|b| b.magnitude).reduce(f64::max)
    }

    pub fn mean_bond(&self) -> Option<f64> {
        if self.bond_profile.is_empty() {
            return None;
        }
        Some(self.bond_profile.iter().map(|b| b.magnitude).sum::<f64>() / self.bond_profile.len() as f64)
    }

    /// Mean `|h_{i,i+d}|` over pairs `d` sites apart within one block.
    pub fn mean_offdiagonal(&self, d: usize) -> f64 {
        let idx = &self.sites;
        let (mut sum, mut count) = (0.0, 0usize);
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                if idx[b] - idx[a] == d && b - a == d {
                    sum += self.matrix[(a, b)].abs();
                    count += 1;
                }
            }
        }
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    pub fn to_csv(&self) -> String {
        matrix_csv(&self.matrix)
    }
}

/// `h = U diag(ε) Uᵀ` with clipped modular energies.
pub fn modular_hamiltonian(spec: &EntanglementSpectrum) -> EntanglementHamiltonian {
    let eps = DVector::from_column_slice(&spec.modular_energies);
    let scaled = &spec.modes * DMatrix::from_diagonal(&eps);
    let matrix = crate::linalg::symmetrize(&(&scaled * spec.modes.transpose()));
    let region = Region::new(spec.sites.clone()).expect("spectrum sites are sorted");
    let bond_profile = region
        .intra_block_bonds()
        .into_iter()
        .map(|(a, b)| BondElement {
            left_site: spec.sites[a],
            right_site: spec.sites[b],
            magnitude: matrix[(a, b)].abs(),
        })
        .collect();
    EntanglementHamiltonian {
        sites: spec.sites.clone(),
        matrix,
        bond_profile,
    }
}

#[derive(Debug, Clone)]
pub struct EntanglementTemperature {
    /// Inverse entanglement temperature: largest intra-block `|h_{i,i+1}|` over `|t|`.
    pub beta: f64,
    pub max_bond: f64,
    pub mean_bond: f64,
    pub bond_profile: Vec<BondElement>,
}

pub fn entanglement_temperature(h: &EntanglementHamiltonian, spec: &LatticeSpec) -> Result<EntanglementTemperature> {
    let max_bond = h.max_bond().ok_or(Error::NoBonds)?;
    if spec.hopping == 0.0 {
        return Err(Error::InvalidArgument("entanglement temperature needs t != 0".into()));
    }
    Ok(EntanglementTemperature {
        beta: max_bond / spec.hopping.abs(),
        max_bond,
        mean_bond: h.mean_bond().unwrap_or(0.0),
        bond_profile: h.bond_profile.clone(),
    })
}

/// Least-squares scale `β` minimising `‖h - β K‖_F`; a diagnostic alternative
/// to the max-bond definition.
pub fn beta_least_squares(h: &EntanglementHamiltonian, k: &SingleParticleMatrix) -> Result<f64> {
    if h.sites != k.sites {
        return Err(Error::DimensionMismatch(h.sites.len(), k.sites.len()));
    }
    let norm = k.matrix.norm_squared();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("zero reference operator".into()));
    }
    Ok(h.matrix.dot(&k.matrix) / norm)
}

/// `D(ρ‖σ) = -S(ρ) - Tr(ρ ln σ)` for Gaussian `ρ`, `σ` on the same sites.
pub fn relative_entropy(rho: &CorrelationMatrix, sigma: &CorrelationMatrix) -> Result<f64> {
    if rho.sites() != sigma.sites() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let s_rho = entropy(rho)?;
    let sigma_spec = entanglement_spectrum(sigma)?;
    let h_sigma = modular_hamiltonian(&sigma_spec);
    let log_z: f64 = sigma_spec.modular_energies.iter().map(|&e| softplus(-e)).sum();
    let tr_rho_log_sigma = -h_sigma.matrix.dot(rho.matrix()) - log_z;
    Ok(-s_rho - tr_rho_log_sigma)
}

//! Brute-force many-body oracle for small chains.
//!
//! Basis states are occupation bitstrings; bit `k` of a state on the ordered
//! site list `sites` is the occupation of `sites[k]`, and the state is
//! `∏_k (c†_{sites[k]})^{n_k} |0⟩` with operators in ascending site order.
//! Annihilating mode `k` picks up `(-1)^{# occupied modes below k}`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lattice::{CorrelationMatrix, LatticeSpec, SingleParticleMatrix};
use crate::linalg::{svd, sym_eigen, sym_eigenvalues};
use crate::region::Region;

pub const MAX_ORACLE_SITES: usize = 12;
pub const MAX_REDUCED_SITES: usize = 10;

/// Gap below which the sector ground state is treated as degenerate.
const GROUND_GAP_TOL: f64 = 1e-9;

/// Pure state in the Fock space of an ordered site list.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub sites: Vec<usize>,
    pub amplitudes: DVector<f64>,
    /// Energy of the state when it came out of a diagonalization.
    pub energy: f64,
}

impl FockVector {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// Density matrix over a region's occupation basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrixDense {
    pub sites: Vec<usize>,
    pub matrix: DMatrix<f64>,
}

impl DensityMatrixDense {
    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        sym_eigenvalues(&self.matrix)
    }

    /// `-Tr ρ ln ρ` in nats.
    pub fn entropy(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .filter(|&l| l > 0.0)
            .map(|l| -l * l.ln())
            .sum()
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, op: &DMatrix<f64>) -> f64 {
        self.matrix.transpose().dot(op)
    }
}

#[inline]
fn parity_below(state: u64, k: usize) -> f64 {
    if (state & ((1u64 << k) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `c†_i c_j |state⟩` as `(sign, new_state)`, or `None` if it vanishes.
fn hop(state: u64, i: usize, j: usize) -> Option<(f64, u64)> {
    if state >> j & 1 == 0 {
        return None;
    }
    let s1 = state ^ (1 << j);
    let sign1 = parity_below(state, j);
    if s1 >> i & 1 == 1 {
        return None;
    }
    let sign2 = parity_below(s1, i);
    Some((sign1 * sign2, s1 | 1 << i))
}

/// Matrix of `Σ K_ij c†_i c_j` on the full `2^m` Fock space of `m` modes.
pub fn many_body_operator(k: &DMatrix<f64>) -> DMatrix<f64> {
    let m = k.nrows();
    let dim = 1usize << m;
    let mut op = DMatrix::zeros(dim, dim);
    for state in 0..dim as u64 {
        for i in 0..m {
            for j in 0..m {
                let kij = k[(i, j)];
                if kij == 0.0 {
                    continue;
                }
                if let Some((sign, out)) = hop(state, i, j) {
                    op[(out as usize, state as usize)] += sign * kij;
                }
            }
        }
    }
    op
}

/// Annihilation operator of mode `i` among `m` modes.
pub fn annihilation(m: usize, i: usize) -> DMatrix<f64> {
    let dim = 1usize << m;
    let mut op = DMatrix::zeros(dim, dim);
    for state in 0..dim as u64 {
        if state >> i & 1 == 1 {
            op[((state ^ (1 << i)) as usize, state as usize)] = parity_below(state, i);
        }
    }
    op
}

/// Lowest state of the `n_particles` sector of the chain.
pub fn fock_ground_state(spec: &LatticeSpec) -> Result<FockVector> {
    spec.validate()?;
    let n = spec.n_sites;
    if n > MAX_ORACLE_SITES {
        return Err(Error::TooLarge(format!("{n} sites (limit {MAX_ORACLE_SITES})")));
    }
    let sector: Vec<u64> = (0..1u64 << n)
        .filter(|s| s.count_ones() as usize == spec.n_particles)
        .collect();
    let index = |s: u64| sector.binary_search(&s).expect("hopping conserves particle number");
    let dim = sector.len();
    let mut h = DMatrix::from_diagonal_element(dim, dim, -spec.chem_potential * spec.n_particles as f64);
    for (col, &s) in sector.iter().enumerate() {
        for (i, j, amp) in spec.bonds() {
            for (a, b) in [(i, j), (j, i)] {
                if let Some((sign, out)) = hop(s, a, b) {
                    h[(index(out), col)] += sign * amp;
                }
            }
        }
    }
    let (energies, vectors) = sym_eigen(&h);
    if dim > 1 && energies[1] - energies[0] <= GROUND_GAP_TOL {
        return Err(Error::DegenerateGroundState(energies[1] - energies[0]));
    }
    let mut amplitudes = DVector::zeros(1 << n);
    for (row, &s) in sector.iter().enumerate() {
        amplitudes[s as usize] = vectors[(row, 0)];
    }
    Ok(FockVector {
        sites: (0..n).collect(),
        amplitudes,
        energy: energies[0],
    })
}

/// Splits `psi` into a matrix `Ψ[x_first, x_rest]` with the `first` sites
/// reordered to the front, including the reordering sign.
fn bipartite_matrix(psi: &FockVector, first: &Region) -> Result<(DMatrix<f64>, Vec<usize>)> {
    let pos: Vec<usize> = first
        .indices()
        .iter()
        .map(|&s| psi.sites.binary_search(&s).map_err(|_| Error::IndexOutOfRange(s)))
        .collect::<Result<_>>()?;
    let rest: Vec<usize> = (0..psi.sites.len()).filter(|k| !pos.contains(k)).collect();
    let mut m = DMatrix::zeros(1 << pos.len(), 1 << rest.len());
    for (state, &amp) in psi.amplitudes.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let state = state as u64;
        let mut x = 0usize;
        let mut r = 0usize;
        let mut crossings = 0u32;
        for (k, &p) in pos.iter().enumerate() {
            if state >> p & 1 == 1 {
                x |= 1 << k;
                // rest modes sitting in front of this one must be passed
                crossings += rest.iter().filter(|&&q| q < p && state >> q & 1 == 1).count() as u32;
            }
        }
        for (k, &q) in rest.iter().enumerate() {
            if state >> q & 1 == 1 {
                r |= 1 << k;
            }
        }
        let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
        m[(x, r)] = sign * amp;
    }
    let rest_sites = rest.iter().map(|&k| psi.sites[k]).collect();
    Ok((m, rest_sites))
}

/// `ρ_A = Tr_{rest} |ψ⟩⟨ψ|` in the occupation basis of `a` (ascending sites).
pub fn reduced_density_matrix(psi: &FockVector, a: &Region) -> Result<DensityMatrixDense> {
    if a.len() > MAX_REDUCED_SITES {
        return Err(Error::TooLarge(format!("region of {} sites", a.len())));
    }
    let (m, _) = bipartite_matrix(psi, a)?;
    Ok(DensityMatrixDense {
        sites: a.indices().to_vec(),
        matrix: &m * m.transpose(),
    })
}

/// One Schmidt component of a `B | rest` split.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    /// Particle number of the Schmidt state in `B`.
    pub b_particles: usize,
    pub probability: f64,
    pub rest_state: FockVector,
}

/// Schmidt decomposition across `b | rest`, computed by SVD separately in each
/// particle-number sector of `b`.
///
/// Degenerate Schmidt coefficients leave the basis undetermined, so within
/// each degenerate block the vectors are rotated to diagonalize the number
/// operators of the eigenmodes of `b`'s one-body density matrix (taken from
/// `ρ_B` itself), weighted `2^k` so every occupation pattern is separated.
pub fn schmidt_decomposition(psi: &FockVector, b: &Region) -> Result<Vec<OracleOutcome>> {
    let (m, rest_sites) = bipartite_matrix(psi, b)?;
    let mode_weights = mode_pattern_operator(&m, b.len());
    let mut outcomes = Vec::new();
    for nb in 0..=b.len() {
        let rows: Vec<usize> = (0..m.nrows()).filter(|x| x.count_ones() as usize == nb).collect();
        let block = DMatrix::from_fn(rows.len(), m.ncols(), |i, j| m[(rows[i], j)]);
        if block.amax() == 0.0 {
            continue;
        }
        let (singular_values, u, vt) = svd(&block)?;
        let order: Vec<usize> = (0..singular_values.len())
            .filter(|&i| singular_values[i].powi(2) >= 1e-300)
            .collect();
        let mut start = 0;
        while start < order.len() {
            let p0 = singular_values[order[start]].powi(2);
            let mut end = start + 1;
            while end < order.len() && (p0 - singular_values[order[end]].powi(2)).abs() < DEGENERACY_TOL {
                end += 1;
            }
            let group = &order[start..end];
            let sub_w = DMatrix::from_fn(rows.len(), group.len(), |r, g| u[(r, group[g])]);
            let local = DMatrix::from_fn(rows.len(), rows.len(), |r, s| mode_weights[(rows[r], rows[s])]);
            let (_, rot) = sym_eigen(&(sub_w.transpose() * local * &sub_w));
            let rest_rows = DMatrix::from_fn(group.len(), m.ncols(), |g, j| vt[(group[g], j)]);
            let rotated = rot.transpose() * rest_rows;
            for (g, &i) in group.iter().enumerate() {
                let sigma = singular_values[i];
                outcomes.push(OracleOutcome {
                    b_particles: nb,
                    probability: sigma * sigma,
                    rest_state: FockVector {
                        sites: rest_sites.clone(),
                        amplitudes: rotated.row(g).transpose(),
                        energy: f64::NAN,
                    },
                });
            }
            start = end;
        }
    }
    Ok(outcomes)
}

/// Probability gap below which Schmidt coefficients count as degenerate.
const DEGENERACY_TOL: f64 = 1e-10;

/// `Σ_k 2^k n̂_k` on the Fock space of the first `m` modes of the bipartite
/// matrix, with `n̂_k` the number operators of the eigenmodes of `⟨c†_i c_j⟩`.
fn mode_pattern_operator(psi: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let rho = psi * psi.transpose();
    let ann: Vec<DMatrix<f64>> = (0..m).map(|i| annihilation(m, i)).collect();
    let corr = DMatrix::from_fn(m, m, |i, j| rho.dot(&(ann[i].transpose() * &ann[j])));
    let (_, modes) = sym_eigen(&corr);
    let weights = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(m, |k, _| (1u64 << k) as f64));
    many_body_operator(&(&modes * weights * modes.transpose()))
}

/// Conditioned reduced state of `a` for one Schmidt component.
#[derive(Debug, Clone)]
pub struct ConditionedOracleState {
    pub b_particles: usize,
    pub probability: f64,
    pub rho_a: DensityMatrixDense,
}

#[derive(Debug, Clone)]
pub struct OracleMeasures {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_ab: f64,
    pub mutual_information: f64,
    pub conditional_entropy_j: f64,
    pub mean_energy: f64,
    pub variance: f64,
    pub theta_bar: f64,
    pub conditioned: Vec<ConditionedOracleState>,
}

/// Every information and energy quantity for regions `a`, `b` of `psi`, from
/// dense density matrices and explicit Schmidt projections of `b`.
pub fn oracle_measures(
    psi: &FockVector,
    a: &Region,
    b: &Region,
    k_a: Option<&SingleParticleMatrix>,
) -> Result<OracleMeasures> {
    if let Some(s) = a.overlap(b) {
        return Err(Error::OverlappingRegions(s));
    }
    let rho_a = reduced_density_matrix(psi, a)?;
    let rho_b = reduced_density_matrix(psi, b)?;
    let rho_ab = reduced_density_matrix(psi, &a.union(b))?;
    let h_a = match k_a {
        Some(k) => {
            if k.sites != a.indices() {
                return Err(Error::DimensionMismatch(a.len(), k.dim()));
            }
            Some(many_body_operator(&k.matrix))
        }
        None => None,
    };
    let stats = |rho: &DensityMatrixDense| match &h_a {
        Some(h) => {
            let e = rho.expectation(h) / rho.trace();
            let e2 = rho.expectation(&(h * h)) / rho.trace();
            (e, e2 - e * e)
        }
        None => (0.0, 0.0),
    };
    let (mean_energy, variance) = stats(&rho_a);

    let mut conditioned = Vec::new();
    let mut avg_entropy = 0.0;
    let mut theta_bar = 0.0;
    for o in schmidt_decomposition(psi, b)? {
        let mut rho = reduced_density_matrix(&o.rest_state, a)?;
        rho.matrix /= rho.trace();
        avg_entropy += o.probability * rho.entropy();
        theta_bar += o.probability * stats(&rho).1.max(0.0).sqrt();
        conditioned.push(ConditionedOracleState {
            b_particles: o.b_particles,
            probability: o.probability,
            rho_a: rho,
        });
    }

    let (s_a, s_b, s_ab) = (rho_a.entropy(), rho_b.entropy(), rho_ab.entropy());
    Ok(OracleMeasures {
        entropy_a: s_a,
        entropy_b: s_b,
        entropy_ab: s_ab,
        mutual_information: s_a + s_b - s_ab,
        conditional_entropy_j: s_a - avg_entropy,
        mean_energy,
        variance,
        theta_bar,
        conditioned,
    })
}

/// Dense many-body density matrix of the Gaussian state `c`, built as the
/// product over eigenmodes of `p n̂_k + (1 - p)(1 - n̂_k)`.
pub fn gaussian_density_matrix(c: &CorrelationMatrix) -> Result<DensityMatrixDense> {
    let m = c.dim();
    if m > MAX_REDUCED_SITES {
        return Err(Error::TooLarge(format!("{m} modes")));
    }
    let (p, u) = sym_eigen(c.matrix());
    let dim = 1usize << m;
    let ann: Vec<DMatrix<f64>> = (0..m).map(|i| annihilation(m, i)).collect();
    let identity = DMatrix::<f64>::identity(dim, dim);
    let mut rho = identity.clone();
    for k in 0..m {
        let mut alpha = DMatrix::zeros(dim, dim);
        for (i, a) in ann.iter().enumerate() {
            alpha += a * u[(i, k)];
        }
        let number = alpha.transpose() * &alpha;
        let pk = p[k].clamp(0.0, 1.0);
        let factor = &number * pk + (&identity - &number) * (1.0 - pk);
        rho = rho * factor;
    }
    Ok(DensityMatrixDense {
        sites: c.sites().to_vec(),
        matrix: crate::linalg::symmetrize(&rho),
    })
}

/// `Tr ρ ln ρ - Tr ρ ln σ` from dense matrices; `σ` must be full rank.
pub fn dense_relative_entropy(rho: &DensityMatrixDense, sigma: &DensityMatrixDense) -> Result<f64> {
    if rho.matrix.shape() != sigma.matrix.shape() {
        return Err(Error::DimensionMismatch(rho.matrix.nrows(), sigma.matrix.nrows()));
    }
    let (vals, vecs) = sym_eigen(&sigma.matrix);
    if let Some(&bad) = vals.iter().find(|&&l| l <= 0.0) {
        return Err(Error::InvalidArgument(format!("σ has eigenvalue {bad:e}")));
    }
    let log_vals = DMatrix::from_diagonal(&vals.map(f64::ln));
    let log_sigma = &vecs * log_vals * vecs.transpose();
    Ok(-rho.entropy() - rho.expectation(&log_sigma))
}

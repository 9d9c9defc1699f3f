//! Mutual information, Schmidt-basis conditioning and energy statistics.
//!
//! Conditioning on region `B` is done through the entanglement modes of the
//! complement of `B`. For a pure Gaussian state every non-frozen mode of `B`
//! has a partner mode in the complement, and a Schmidt outcome `{n_k}` leaves
//! the complement in the Slater determinant `C' = V diag(n) Vᵀ`, occurring
//! with probability `∏ π(n_k, p_k)`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{entanglement_spectrum, entropy, restrict, EntanglementSpectrum};
use crate::lattice::{CorrelationMatrix, LatticeSpec, SingleParticleMatrix};
use crate::region::Region;

/// Modes with occupation inside `[δ, 1 - δ]` branch; the rest are pinned.
pub const ACTIVE_THRESHOLD: f64 = 1e-8;
pub const MAX_ENUMERATED_MODES: usize = 20;
pub const DEFAULT_SAMPLES: usize = 10_000;

/// How Schmidt outcomes are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// All `2^n_active` outcomes; fails above [`MAX_ENUMERATED_MODES`].
    Enumerate,
    /// `samples` i.i.d. outcomes; sample `i` uses seed `seed ^ i`.
    Sample { samples: usize, seed: u64 },
    /// Enumerate when possible, otherwise sample.
    Auto { samples: usize, seed: u64 },
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::Auto {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Occupation pattern of the active modes and its probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtOutcome {
    /// Bit `k` is the occupation of active mode `k`.
    pub bits: u64,
    pub n_active: usize,
    pub probability: f64,
}

impl SchmidtOutcome {
    pub fn occupation(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn occupations(&self) -> Vec<u8> {
        (0..self.n_active).map(|k| self.occupation(k) as u8).collect()
    }

    pub fn filled(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

/// Entanglement modes of a region split into branching and frozen ones.
#[derive(Debug, Clone)]
pub struct SchmidtBasis {
    spectrum: EntanglementSpectrum,
    active: Vec<usize>,
    filled: Vec<usize>,
}

impl SchmidtBasis {
    pub fn new(g: &CorrelationMatrix) -> Result<Self> {
        let spectrum = entanglement_spectrum(g)?;
        let mut active = Vec::new();
        let mut filled = Vec::new();
        for (k, &p) in spectrum.occupations.iter().enumerate() {
            if (ACTIVE_THRESHOLD..=1.0 - ACTIVE_THRESHOLD).contains(&p) {
                active.push(k);
            } else if p > 0.5 {
                filled.push(k);
            }
        }
        if active.len() > 63 {
            return Err(Error::TooManyModes {
                n_active: active.len(),
                limit: 63,
            });
        }
        Ok(SchmidtBasis {
            spectrum,
            active,
            filled,
        })
    }

    pub fn spectrum(&self) -> &EntanglementSpectrum {
        &self.spectrum
    }

    pub fn n_active(&self) -> usize {
        self.active.len()
    }

    /// Number of frozen modes pinned to occupation one.
    pub fn n_frozen_filled(&self) -> usize {
        self.filled.len()
    }

    pub fn active_occupations(&self) -> Vec<f64> {
        self.active.iter().map(|&k| self.spectrum.occupations[k]).collect()
    }

    fn probability(&self, bits: u64) -> f64 {
        self.active
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                let p = self.spectrum.occupations[k];
                if bits >> j & 1 == 1 {
                    p
                } else {
                    1.0 - p
                }
            })
            .product()
    }

    fn outcome(&self, bits: u64) -> SchmidtOutcome {
        SchmidtOutcome {
            bits,
            n_active: self.n_active(),
            probability: self.probability(bits),
        }
    }

    /// Every occupation pattern of the active modes.
    pub fn enumerate(&self) -> Result<Vec<SchmidtOutcome>> {
        let n = self.n_active();
        if n > MAX_ENUMERATED_MODES {
            return Err(Error::TooManyModes {
                n_active: n,
                limit: MAX_ENUMERATED_MODES,
            });
        }
        Ok((0..1u64 << n).map(|bits| self.outcome(bits)).collect())
    }

    /// Draws `samples` outcomes; sample `i` is generated from seed `seed ^ i`
    /// so the result does not depend on evaluation order.
    pub fn sample(&self, samples: usize, seed: u64) -> Vec<SchmidtOutcome> {
        let occ = self.active_occupations();
        (0..samples as u64)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i);
                let bits = occ
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &p)| if rng.random::<f64>() < p { acc | 1 << j } else { acc });
                self.outcome(bits)
            })
            .collect()
    }

    pub fn outcomes(&self, strategy: Strategy) -> Result<Vec<SchmidtOutcome>> {
        match strategy {
            Strategy::Enumerate => self.enumerate(),
            Strategy::Sample { samples, seed } => Ok(self.sample(samples, seed)),
            Strategy::Auto { samples, seed } => {
                if self.n_active() <= MAX_ENUMERATED_MODES {
                    self.enumerate()
                } else {
                    Ok(self.sample(samples, seed))
                }
            }
        }
    }

    fn check(&self, outcome: &SchmidtOutcome) -> Result<()> {
        if outcome.n_active != self.n_active() {
            return Err(Error::ModeMismatch {
                expected: self.n_active(),
                got: outcome.n_active,
            });
        }
        Ok(())
    }

    /// Pure conditioned state `V diag(n) Vᵀ` on the basis' sites.
    pub fn conditioned(&self, outcome: &SchmidtOutcome) -> Result<CorrelationMatrix> {
        let all = Region::new(self.spectrum.sites.clone())?;
        let proj = self.projector(&all)?;
        CorrelationMatrix::new(all.indices().to_vec(), proj.correlation(outcome)?)
    }

    /// Prepares evaluation of conditioned states restricted to `region`.
    pub fn projector(&self, region: &Region) -> Result<RegionProjector<'_>> {
        let sites = &self.spectrum.sites;
        let rows = region
            .indices()
            .iter()
            .map(|&s| sites.binary_search(&s).map_err(|_| Error::IndexOutOfRange(s)))
            .collect::<Result<Vec<_>>>()?;
        let modes = &self.spectrum.modes;
        let pick = |cols: &[usize]| DMatrix::from_fn(rows.len(), cols.len(), |i, j| modes[(rows[i], cols[j])]);
        let filled = pick(&self.filled);
        Ok(RegionProjector {
            basis: self,
            sites: region.indices().to_vec(),
            base: &filled * filled.transpose(),
            active_rows: pick(&self.active),
        })
    }
}

/// Conditioned correlation matrices of one basis, restricted to a sub-region.
#[derive(Debug, Clone)]
pub struct RegionProjector<'a> {
    basis: &'a SchmidtBasis,
    sites: Vec<usize>,
    base: DMatrix<f64>,
    active_rows: DMatrix<f64>,
}

impl RegionProjector<'_> {
    pub fn correlation(&self, outcome: &SchmidtOutcome) -> Result<DMatrix<f64>> {
        self.basis.check(outcome)?;
        let mut c = self.base.clone();
        for j in 0..outcome.n_active {
            if outcome.occupation(j) {
                let v = self.active_rows.column(j);
                c.ger(1.0, &v, &v, 1.0);
            }
        }
        Ok(c)
    }

    pub fn conditioned(&self, outcome: &SchmidtOutcome) -> Result<CorrelationMatrix> {
        CorrelationMatrix::new(self.sites.clone(), self.correlation(outcome)?)
    }
}

/// Outcomes over the entanglement modes of `g`.
pub fn schmidt_outcomes(g: &CorrelationMatrix, strategy: Strategy) -> Result<Vec<SchmidtOutcome>> {
    SchmidtBasis::new(g)?.outcomes(strategy)
}

/// Basis for conditioning on `b`: the entanglement modes of its complement
/// within `c`.
pub fn conditioning_basis(c: &CorrelationMatrix, b: &Region) -> Result<SchmidtBasis> {
    for &s in b.indices() {
        c.position(s).ok_or(Error::IndexOutOfRange(s))?;
    }
    let rest = Region::new(c.sites().iter().copied().filter(|&s| !b.contains(s)).collect())?;
    SchmidtBasis::new(&restrict(c, &rest)?)
}

/// State of the complement of `b` after projecting `b` onto the Schmidt state
/// labelled by `outcome`.
pub fn condition_on_outcome(c: &CorrelationMatrix, b: &Region, outcome: &SchmidtOutcome) -> Result<CorrelationMatrix> {
    conditioning_basis(c, b)?.conditioned(outcome)
}

pub fn mutual_information(c: &CorrelationMatrix, a: &Region, b: &Region) -> Result<f64> {
    if let Some(s) = a.overlap(b) {
        return Err(Error::OverlappingRegions(s));
    }
    let s_a = entropy(&restrict(c, a)?)?;
    let s_b = entropy(&restrict(c, b)?)?;
    let s_ab = entropy(&restrict(c, &a.union(b))?)?;
    Ok(s_a + s_b - s_ab)
}

/// Energy operator of region `a`: on-site `-μ` and `-t` on bonds with both
/// ends inside `a`.
pub fn region_energy_operator(spec: &LatticeSpec, a: &Region) -> Result<SingleParticleMatrix> {
    if let Some(&bad) = a.indices().iter().find(|&&s| s >= spec.n_sites) {
        return Err(Error::IndexOutOfRange(bad));
    }
    let idx = a.indices();
    let mut k = DMatrix::from_diagonal_element(idx.len(), idx.len(), -spec.chem_potential);
    for (i, j, amp) in spec.bonds() {
        if let (Ok(p), Ok(q)) = (idx.binary_search(&i), idx.binary_search(&j)) {
            k[(p, q)] += amp;
            k[(q, p)] += amp;
        }
    }
    SingleParticleMatrix::new(idx.to_vec(), k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyStats {
    pub mean_energy: f64,
    pub variance: f64,
    pub width: f64,
}

/// Mean and variance of `Σ K_ij c†_i c_j` in the Gaussian state `g`, via Wick:
/// `⟨H⟩ = Σ K_ij C_ij`, `Var = Σ K_ij K_kl C_il (δ_jk - C_kj)`.
pub fn energy_mean_variance(g: &CorrelationMatrix, k: &SingleParticleMatrix) -> Result<EnergyStats> {
    if g.sites() != k.sites.as_slice() {
        return Err(Error::DimensionMismatch(g.dim(), k.dim()));
    }
    Ok(energy_stats_dense(g.matrix(), &k.matrix))
}

fn energy_stats_dense(c: &DMatrix<f64>, k: &DMatrix<f64>) -> EnergyStats {
    let n = c.nrows();
    let hole = DMatrix::identity(n, n) - c.transpose();
    let mean_energy = k.dot(c);
    let variance = c.dot(&(k * hole * k));
    EnergyStats {
        mean_energy,
        variance,
        width: variance.max(0.0).sqrt(),
    }
}

/// Outcome-averaged statistics of region `a` after projecting `b` on its
/// Schmidt basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionedStats {
    pub entropy_a: f64,
    /// `S(A) - Σ prob · S(A | outcome)`.
    pub conditional_entropy_j: f64,
    pub std_error_j: f64,
    pub theta_uncond: f64,
    /// `Σ prob · sqrt(Var_outcome(K_A))`.
    pub theta_bar: f64,
    pub std_error_theta: f64,
    pub n_active: usize,
    pub n_outcomes: usize,
    pub enumerated: bool,
}

pub fn conditioned_statistics(
    c: &CorrelationMatrix,
    a: &Region,
    b: &Region,
    k_a: Option<&SingleParticleMatrix>,
    strategy: Strategy,
) -> Result<ConditionedStats> {
    if let Some(s) = a.overlap(b) {
        return Err(Error::OverlappingRegions(s));
    }
    if let Some(k) = k_a {
        if k.sites != a.indices() {
            return Err(Error::DimensionMismatch(a.len(), k.dim()));
        }
    }
    let c_a = restrict(c, a)?;
    let entropy_a = entropy(&c_a)?;
    let theta_uncond = k_a.map_or(0.0, |k| energy_stats_dense(c_a.matrix(), &k.matrix).width);

    let basis = conditioning_basis(c, b)?;
    let outcomes = basis.outcomes(strategy)?;
    let enumerated = outcomes.len() as u64 == 1u64 << basis.n_active() && !matches!(strategy, Strategy::Sample { .. });
    let proj = basis.projector(a)?;

    let per_outcome: Vec<(f64, f64)> = outcomes
        .par_iter()
        .map(|o| {
            let ca = proj.conditioned(o)?;
            let s = entropy(&ca)?;
            let w = k_a.map_or(0.0, |k| energy_stats_dense(ca.matrix(), &k.matrix).width);
            Ok((s, w))
        })
        .collect::<Result<_>>()?;

    let (mean_s, err_s, mean_w, err_w) = if enumerated {
        let mut ms = 0.0;
        let mut mw = 0.0;
        for (o, (s, w)) in outcomes.iter().zip(&per_outcome) {
            ms += o.probability * s;
            mw += o.probability * w;
        }
        (ms, 0.0, mw, 0.0)
    } else {
        let (ms, es) = mean_and_error(per_outcome.iter().map(|x| x.0));
        let (mw, ew) = mean_and_error(per_outcome.iter().map(|x| x.1));
        (ms, es, mw, ew)
    };

    Ok(ConditionedStats {
        entropy_a,
        conditional_entropy_j: entropy_a - mean_s,
        std_error_j: err_s,
        theta_uncond,
        theta_bar: mean_w,
        std_error_theta: err_w,
        n_active: basis.n_active(),
        n_outcomes: outcomes.len(),
        enumerated,
    })
}

fn mean_and_error(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// `(J, std_error)` for region `a` after projecting `b` on its Schmidt basis.
pub fn conditional_entropy(c: &CorrelationMatrix, a: &Region, b: &Region, strategy: Strategy) -> Result<(f64, f64)> {
    let st = conditioned_statistics(c, a, b, None, strategy)?;
    Ok((st.conditional_entropy_j, st.std_error_j))
}

/// `(Θ̄, std_error)`: outcome-averaged energy width of `k_a` on region `a`.
pub fn projected_energy_width(
    c: &CorrelationMatrix,
    a: &Region,
    b: &Region,
    k_a: &SingleParticleMatrix,
    strategy: Strategy,
) -> Result<(f64, f64)> {
    let st = conditioned_statistics(c, a, b, Some(k_a), strategy)?;
    Ok((st.theta_bar, st.std_error_theta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoReport {
    pub mutual_information: f64,
    pub conditional_entropy_j: f64,
    /// `I - J` for the Schmidt-basis measurement.
    pub discord_upper_bound: f64,
    pub std_error_j: f64,
}

pub fn info_report(c: &CorrelationMatrix, a: &Region, b: &Region, strategy: Strategy) -> Result<InfoReport> {
    let i = mutual_information(c, a, b)?;
    let (j, err) = conditional_entropy(c, a, b, strategy)?;
    Ok(InfoReport {
        mutual_information: i,
        conditional_entropy_j: j,
        discord_upper_bound: i - j,
        std_error_j: err,
    })
}

/// Missing entropy `I = S0 - S` and the probability ratio `e^{-I}`.
pub fn information_from_entropy(s0: f64, s: f64) -> (f64, f64) {
    let info = s0 - s;
    (info, (-info).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ground_state_correlations, Boundary};
    use std::f64::consts::LN_2;

    fn cm(n: usize, data: &[f64]) -> CorrelationMatrix {
        CorrelationMatrix::new((0..n).collect(), DMatrix::from_row_slice(n, n, data)).unwrap()
    }

    fn bonding() -> CorrelationMatrix {
        cm(2, &[0.5, 0.5, 0.5, 0.5])
    }

    fn site(i: usize) -> Region {
        Region::interval(i, 1)
    }

    #[test]
    fn single_mode_outcomes() {
        let out = schmidt_outcomes(&cm(1, &[0.5]), Strategy::Enumerate).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|o| o.probability == 0.5));
        let frozen = schmidt_outcomes(&cm(2, &[1.0, 0.0, 0.0, 0.0]), Strategy::Enumerate).unwrap();
        assert_eq!(frozen.len(), 1);
        assert_eq!(frozen[0].probability, 1.0);
    }

    #[test]
    fn too_many_modes() {
        let c = CorrelationMatrix::new((0..21).collect(), DMatrix::from_diagonal_element(21, 21, 0.5)).unwrap();
        assert!(matches!(
            schmidt_outcomes(&c, Strategy::Enumerate),
            Err(Error::TooManyModes { n_active: 21, .. })
        ));
        let sampled = schmidt_outcomes(&c, Strategy::Auto { samples: 5, seed: 1 }).unwrap();
        assert_eq!(sampled.len(), 5);
    }

    #[test]
    fn sampling_is_seeded_per_index() {
        let c = cm(3, &[0.3, 0.0, 0.0, 0.0, 0.6, 0.1, 0.0, 0.1, 0.5]);
        let basis = SchmidtBasis::new(&c).unwrap();
        let a = basis.sample(50, 42);
        let b = basis.sample(80, 42);
        assert_eq!(a[..], b[..50]);
        assert_ne!(basis.sample(50, 43), a);
    }

    #[test]
    fn two_site_collapse() {
        let c = bonding();
        let basis = conditioning_basis(&c, &site(0)).unwrap();
        assert_eq!(basis.n_active(), 1);
        let filled = SchmidtOutcome {
            bits: 1,
            n_active: 1,
            probability: 0.5,
        };
        let cond = condition_on_outcome(&c, &site(0), &filled).unwrap();
        assert_eq!(cond.sites(), &[1]);
        assert!((cond.matrix()[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(entropy(&cond).unwrap().abs() < 1e-12);

        let wrong = SchmidtOutcome { n_active: 2, ..filled };
        assert!(matches!(
            condition_on_outcome(&c, &site(0), &wrong),
            Err(Error::ModeMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn product_state_conditioning_is_inert() {
        // sites {0,1} entangled with each other, site 2 frozen, site 3 half-filled alone
        let c = cm(
            4,
            &[
                0.5, 0.5, 0.0, 0.0, //
                0.5, 0.5, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        );
        let b = Region::interval(2, 2);
        let basis = conditioning_basis(&c, &b).unwrap();
        let out = basis.enumerate().unwrap();
        assert_eq!(out.len(), 1);
        let cond = basis.conditioned(&out[0]).unwrap();
        let rest = restrict(&c, &Region::interval(0, 2)).unwrap();
        assert!((cond.matrix() - rest.matrix()).amax() < 1e-12);
        let a = Region::interval(0, 2);
        let (j, err) = conditional_entropy(&c, &a, &b, Strategy::Enumerate).unwrap();
        assert!(j.abs() < 1e-12);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn trace_bookkeeping() {
        let spec = LatticeSpec::new(8, 1.0, 0.0, Boundary::Open).unwrap().with_particles(3).unwrap();
        let c = ground_state_correlations(&spec).unwrap();
        let b = Region::interval(2, 3);
        let basis = conditioning_basis(&c, &b).unwrap();
        for o in basis.enumerate().unwrap() {
            let cond = basis.conditioned(&o).unwrap();
            let expected = (o.filled() + basis.n_frozen_filled()) as f64;
            assert!((cond.trace() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn two_site_information() {
        let c = bonding();
        let i = mutual_information(&c, &site(1), &site(0)).unwrap();
        assert!((i - 2.0 * LN_2).abs() < 1e-12);
        let rep = info_report(&c, &site(1), &site(0), Strategy::Enumerate).unwrap();
        assert!((rep.conditional_entropy_j - LN_2).abs() < 1e-12);
        assert!((rep.discord_upper_bound - LN_2).abs() < 1e-12);
        assert!(matches!(
            mutual_information(&c, &site(0), &Region::all(2)),
            Err(Error::OverlappingRegions(0))
        ));
    }

    #[test]
    fn four_site_mutual_information() {
        let spec = LatticeSpec::new(4, 1.0, 0.0, Boundary::Open).unwrap();
        let c = ground_state_correlations(&spec).unwrap();
        let i = mutual_information(&c, &Region::interval(0, 2), &Region::interval(2, 2)).unwrap();
        let s = entropy(&restrict(&c, &Region::interval(0, 2)).unwrap()).unwrap();
        assert!((i - 2.0 * s).abs() < 1e-12);
        assert!((i - 0.826_557_255_539_936_2).abs() < 1e-12);
    }

    #[test]
    fn product_mutual_information_vanishes() {
        let c = cm(3, &[0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.3]);
        let i = mutual_information(&c, &Region::interval(0, 2), &site(2)).unwrap();
        assert!(i.abs() < 1e-12);
    }

    #[test]
    fn energy_operator_examples() {
        let spec = LatticeSpec::new(5, 1.0, 1.0, Boundary::Open).unwrap();
        let k = region_energy_operator(&spec, &site(3)).unwrap();
        assert_eq!(k.matrix, DMatrix::from_element(1, 1, -1.0));
        let full = region_energy_operator(&spec, &Region::all(5)).unwrap();
        assert_eq!(full, crate::lattice::build_single_particle_hamiltonian(&spec));
        let split = region_energy_operator(&spec, &Region::new(vec![0, 1, 3, 4]).unwrap()).unwrap();
        assert_eq!(split.matrix[(1, 2)], 0.0);
        assert_eq!(split.matrix[(0, 1)], -1.0);
        assert!(region_energy_operator(&spec, &Region::interval(4, 2)).is_err());
    }

    #[test]
    fn energy_stats_examples() {
        let k = SingleParticleMatrix::new(vec![0], DMatrix::from_element(1, 1, -1.0)).unwrap();
        let st = energy_mean_variance(&cm(1, &[0.5]), &k).unwrap();
        assert!((st.mean_energy + 0.5).abs() < 1e-15);
        assert!((st.variance - 0.25).abs() < 1e-15);

        let spec = LatticeSpec::new(6, 1.0, 0.3, Boundary::Open).unwrap();
        let k = crate::lattice::build_single_particle_hamiltonian(&spec);
        let c = ground_state_correlations(&spec).unwrap();
        assert!(energy_mean_variance(&c, &k).unwrap().variance.abs() < 1e-12);

        let small = region_energy_operator(&spec, &Region::interval(0, 2)).unwrap();
        assert!(matches!(
            energy_mean_variance(&c, &small),
            Err(Error::DimensionMismatch(6, 2))
        ));
    }

    #[test]
    fn two_site_projected_width() {
        let spec = LatticeSpec::new(2, 1.0, 1.0, Boundary::Open).unwrap();
        let c = bonding();
        let k = region_energy_operator(&spec, &site(1)).unwrap();
        let st = conditioned_statistics(&c, &site(1), &site(0), Some(&k), Strategy::Enumerate).unwrap();
        assert!((st.theta_uncond - 0.5).abs() < 1e-12);
        assert!(st.theta_bar.abs() < 1e-7);
    }

    #[test]
    fn entropy_information() {
        assert_eq!(information_from_entropy(1.3, 1.3), (0.0, 1.0));
        let (i, r) = information_from_entropy(LN_2, 0.0);
        assert!((i - LN_2).abs() < 1e-15 && (r - 0.5).abs() < 1e-15);
    }
}

//! Experiment pipelines. Each returns its tables already stamped with the
//! config header; parameter points run on the ambient rayon pool and are
//! collected in order, so output does not depend on the thread count.

use std::path::{Path, PathBuf};

use qent_core::gaussian::beta_least_squares;
use qent_core::semiclassics::{
    acceleration, integrate_wavepacket, potential_from_temperature, redshift_ratio, tolman_ratio, PhysicalConstants,
    TemperatureProfile, UniformGrid, WavepacketState,
};
use qent_core::{
    conditioned_statistics, entanglement_spectrum, entanglement_temperature, ground_state_correlations,
    modular_hamiltonian, mutual_information, region_energy_operator, restrict, von_neumann_entropy, CorrelationMatrix,
    LatticeSpec, Region,
};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::config::{hex, ExperimentConfig, ExperimentKind, ProfileSource, WavepacketConfig};
use crate::error::{CliError, CliResult};
use crate::table::{fit_residual, linear_fit, ResultTable};

/// Runs whichever experiment `config` selects. Relative profile paths are
/// resolved against `base_dir`.
pub fn run_experiment(config: &ExperimentConfig, base_dir: &Path) -> CliResult<Vec<ResultTable>> {
    match config.experiment {
        ExperimentKind::BlockScaling => Ok(vec![run_block_scaling(config)?]),
        ExperimentKind::CompositeRegion => run_composite_region(config),
        ExperimentKind::DistanceScan => Ok(vec![run_distance_scan(config)?]),
        ExperimentKind::WavepacketDemo => run_wavepacket_demo(config, base_dir),
    }
}

struct BlockPoint {
    entropy: f64,
    beta: f64,
    max_bond: f64,
    beta_lsq: f64,
}

fn block_point(c: &CorrelationMatrix, spec: &LatticeSpec, region: &Region) -> qent_core::Result<BlockPoint> {
    let spectrum = entanglement_spectrum(&restrict(c, region)?)?;
    let h = modular_hamiltonian(&spectrum);
    let temp = entanglement_temperature(&h, spec)?;
    let k = region_energy_operator(spec, region)?;
    Ok(BlockPoint {
        entropy: von_neumann_entropy(&spectrum),
        beta: temp.beta,
        max_bond: temp.max_bond,
        beta_lsq: beta_least_squares(&h, &k)?,
    })
}

pub fn run_block_scaling(config: &ExperimentConfig) -> CliResult<ResultTable> {
    let spec = config.lattice.spec()?;
    let bs = config.block_scaling.clone().unwrap_or_default();
    if bs.l_min < 2 {
        return Err(CliError::Config("block_scaling needs l_min >= 2 to have a bond".into()));
    }
    let c = ground_state_correlations(&spec)?;
    let sizes: Vec<usize> = (bs.l_min..=bs.l_max).collect();
    let points: Vec<BlockPoint> = sizes
        .par_iter()
        .map(|&l| block_point(&c, &spec, &Region::interval(bs.start, l)))
        .collect::<qent_core::Result<_>>()?;

    let mut table =
        ResultTable::new("block_scaling", &["L", "S", "beta", "max_offdiag", "beta_lsq"]).integer_columns(&["L"]);
    for (&l, p) in sizes.iter().zip(&points) {
        table.push_row(vec![l as f64, p.entropy, p.beta, p.max_bond, p.beta_lsq]);
    }
    let ls: Vec<f64> = sizes.iter().map(|&l| l as f64).collect();
    let log_l: Vec<f64> = ls.iter().map(|l| l.ln()).collect();
    let s = table.column("S").expect("column exists");
    let beta = table.column("beta").expect("column exists");
    if sizes.len() >= 2 {
        let (slope, intercept, _) = linear_fit(&log_l, &s);
        table.meta_f64("fit.entropy_slope", slope);
        table.meta_f64("fit.entropy_intercept", intercept);
        let (slope, intercept, r) = linear_fit(&ls, &beta);
        table.meta_f64("fit.beta_slope", slope);
        table.meta_f64("fit.beta_intercept", intercept);
        table.meta_f64("fit.beta_r", r);
    }
    table.meta("beta_definition", "max intra-block |h_(i,i+1)| / |t|");
    table.stamp(config);
    Ok(table)
}

pub fn run_composite_region(config: &ExperimentConfig) -> CliResult<Vec<ResultTable>> {
    let spec = config.lattice.spec()?;
    let cr = config.composite_region.clone().unwrap_or_default();
    let r = cr.separation.resolve(spec.n_sites, cr.block_len, spec.boundary.is_ring());
    let a = Region::interval(cr.start, cr.block_len);
    let b = Region::interval(cr.start + cr.block_len + r, cr.block_len);
    let ab = a.union(&b);
    let c = ground_state_correlations(&spec)?;

    let (single, joint) = rayon::join(
        || -> qent_core::Result<_> {
            let spectrum = entanglement_spectrum(&restrict(&c, &a)?)?;
            let h = modular_hamiltonian(&spectrum);
            Ok((von_neumann_entropy(&spectrum), entanglement_temperature(&h, &spec)?))
        },
        || -> qent_core::Result<_> {
            let spectrum = entanglement_spectrum(&restrict(&c, &ab)?)?;
            let h = modular_hamiltonian(&spectrum);
            let temp = entanglement_temperature(&h, &spec)?;
            Ok((von_neumann_entropy(&spectrum), temp, h))
        },
    );
    let (s_a, temp_a) = single?;
    let (s_ab, temp_ab, h_ab) = joint?;

    let mut summary = ResultTable::new(
        "composite_region",
        &["R", "beta_A", "beta_AB", "ratio", "mean_bond_A", "mean_bond_AB", "S_A", "S_AB"],
    )
    .integer_columns(&["R"]);
    summary.push_row(vec![
        r as f64,
        temp_a.beta,
        temp_ab.beta,
        temp_ab.beta / temp_a.beta,
        temp_a.mean_bond,
        temp_ab.mean_bond,
        s_a,
        s_ab,
    ]);
    summary.meta("region_A", &a);
    summary.meta("region_AB", &ab);
    summary.stamp(config);

    let mut bonds = ResultTable::new("composite_region_bonds", &["left_site", "right_site", "magnitude"])
        .integer_columns(&["left_site", "right_site"]);
    for e in &temp_ab.bond_profile {
        bonds.push_row(vec![e.left_site as f64, e.right_site as f64, e.magnitude]);
    }
    bonds.stamp(config);

    let labels: Vec<String> = std::iter::once("site".to_string())
        .chain(h_ab.sites.iter().map(|s| format!("h_{s}")))
        .collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut matrix = ResultTable::new("composite_region_h", &label_refs).integer_columns(&["site"]);
    for (i, &site) in h_ab.sites.iter().enumerate() {
        let mut row = vec![site as f64];
        row.extend(h_ab.matrix.row(i).iter());
        matrix.push_row(row);
    }
    matrix.stamp(config);

    Ok(vec![summary, bonds, matrix])
}

pub fn run_distance_scan(config: &ExperimentConfig) -> CliResult<ResultTable> {
    let spec = config.lattice.spec()?;
    let ds = config.distance_scan.clone().unwrap_or_default();
    let strategy = config.sampling.strategy();
    let c = ground_state_correlations(&spec)?;
    let a = Region::interval(ds.start, ds.block_len);
    let k_a = region_energy_operator(&spec, &a)?;
    let separations = ds.separations();

    let rows: Vec<Vec<f64>> = separations
        .par_iter()
        .map(|&r| -> qent_core::Result<Vec<f64>> {
            let b = Region::interval(ds.start + ds.block_len + r, ds.block_len);
            let info = mutual_information(&c, &a, &b)?;
            let st = conditioned_statistics(&c, &a, &b, Some(&k_a), strategy)?;
            let h = modular_hamiltonian(&entanglement_spectrum(&restrict(&c, &a.union(&b))?)?);
            let beta_ab = entanglement_temperature(&h, &spec)?.beta;
            Ok(vec![
                r as f64,
                info,
                st.conditional_entropy_j,
                st.std_error_j,
                beta_ab,
                st.theta_uncond,
                st.theta_bar,
                st.std_error_theta,
                st.theta_uncond - st.theta_bar,
                st.n_active as f64,
                if st.enumerated { 1.0 } else { 0.0 },
            ])
        })
        .collect::<qent_core::Result<_>>()?;

    let mut table = ResultTable::new(
        "distance_scan",
        &[
            "R",
            "I",
            "J",
            "std_err_J",
            "beta_AB",
            "Theta_uncond",
            "Theta_bar",
            "std_err_Theta",
            "Theta_drop",
            "n_active",
            "enumerated",
        ],
    )
    .integer_columns(&["R", "n_active", "enumerated"]);
    for row in rows {
        table.push_row(row);
    }

    let r_max = *separations.last().expect("non-empty range") as f64;
    let tail: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|row| row[0] >= r_max / 10.0 && row[0] > 0.0 && row[1] > 0.0)
        .map(|row| (row[0], row[1].ln()))
        .collect();
    if tail.len() >= 3 {
        let rs: Vec<f64> = tail.iter().map(|t| t.0).collect();
        let log_r: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
        let log_i: Vec<f64> = tail.iter().map(|t| t.1).collect();
        let power = fit_residual(&log_r, &log_i);
        let exponential = fit_residual(&rs, &log_i);
        table.meta_f64("tail.power_law_residual", power);
        table.meta_f64("tail.exponential_residual", exponential);
        table.meta_f64("tail.power_law_exponent", linear_fit(&log_r, &log_i).0);
        table.meta("tail.model", if power < exponential { "power_law" } else { "exponential" });
    }
    table.meta("region_A", &a);
    table.meta("separation", "sites strictly between the blocks");
    table.stamp(config);
    Ok(table)
}

struct LoadedProfile {
    profile: TemperatureProfile,
    source: String,
    file_sha256: Option<String>,
}

fn resolve(base_dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base_dir.join(path)
    }
}

fn read_profile_file(path: &Path) -> CliResult<(String, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read profile {}: {e}", path.display())))?;
    let digest = hex(&Sha256::digest(text.as_bytes()));
    Ok((text, digest))
}

fn grid_profile(xs: &[f64], values: Vec<f64>, what: &str) -> CliResult<TemperatureProfile> {
    let grid = UniformGrid::from_points(xs, values).map_err(|e| CliError::Config(format!("{what}: {e}")))?;
    TemperatureProfile::sampled(grid).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn load_profile(source: &ProfileSource, base_dir: &Path) -> CliResult<LoadedProfile> {
    Ok(match source {
        ProfileSource::Constant { theta } => LoadedProfile {
            profile: TemperatureProfile::Constant(*theta),
            source: format!("constant Theta = {theta}"),
            file_sha256: None,
        },
        ProfileSource::Exponential { theta0, rate } => LoadedProfile {
            profile: TemperatureProfile::Exponential {
                theta0: *theta0,
                rate: *rate,
            },
            source: format!("exponential Theta = {theta0} exp({rate} x)"),
            file_sha256: None,
        },
        ProfileSource::Csv { path } => {
            let full = resolve(base_dir, path);
            let (text, digest) = read_profile_file(&full)?;
            let mut xs = Vec::new();
            let mut values = Vec::new();
            for line in text.lines().map(str::trim) {
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let cells: Vec<&str> = line.split(',').map(str::trim).collect();
                match cells.as_slice() {
                    [x, theta] => match (x.parse::<f64>(), theta.parse::<f64>()) {
                        (Ok(x), Ok(theta)) => {
                            xs.push(x);
                            values.push(theta);
                        }
                        _ if xs.is_empty() => continue,
                        _ => return Err(CliError::Config(format!("profile {}: bad row `{line}`", full.display()))),
                    },
                    _ => return Err(CliError::Config(format!("profile {}: expected two columns", full.display()))),
                }
            }
            LoadedProfile {
                profile: grid_profile(&xs, values, &full.display().to_string())?,
                source: format!("two-column file {}, linear interpolation", path.display()),
                file_sha256: Some(digest),
            }
        }
        ProfileSource::DistanceScan { path, column } => {
            let full = resolve(base_dir, path);
            let (text, digest) = read_profile_file(&full)?;
            let table = ResultTable::parse(&full.display().to_string(), &text)?;
            let missing = |c: &str| CliError::Config(format!("{} has no column {c}", full.display()));
            let rs = table.column("R").ok_or_else(|| missing("R"))?;
            let values = table.column(column).ok_or_else(|| missing(column))?;
            LoadedProfile {
                profile: grid_profile(&rs, values, &full.display().to_string())?,
                source: format!(
                    "distance_scan column {column} of {} as Theta(x) with x = R, linear interpolation",
                    path.display()
                ),
                file_sha256: Some(digest),
            }
        }
    })
}

fn default_x0(profile: &TemperatureProfile) -> f64 {
    match profile {
        TemperatureProfile::Field(qent_core::semiclassics::ScalarField::Sampled(g)) => 0.5 * (g.x0() + g.x_max()),
        _ => 0.0,
    }
}

fn default_range(profile: &TemperatureProfile) -> [f64; 2] {
    match profile {
        TemperatureProfile::Field(qent_core::semiclassics::ScalarField::Sampled(g)) => {
            [g.x0() + g.spacing(), g.x_max() - g.spacing()]
        }
        _ => [-1.0, 1.0],
    }
}

pub fn run_wavepacket_demo(config: &ExperimentConfig, base_dir: &Path) -> CliResult<Vec<ResultTable>> {
    let wp: WavepacketConfig = config.wavepacket_demo.clone().unwrap_or_default();
    let consts = PhysicalConstants::new(wp.c, wp.hbar).map_err(|e| CliError::Config(e.to_string()))?;
    let loaded = load_profile(&wp.profile, base_dir)?;
    let profile = &loaded.profile;
    let x0 = wp.x0.unwrap_or_else(|| default_x0(profile));
    let init = WavepacketState::new(x0, wp.v0, wp.e_int, &consts);
    let traj = integrate_wavepacket(profile, init, wp.dt, wp.n_steps, &consts)?;

    let mut trajectory =
        ResultTable::new("wavepacket_trajectory", &["step", "t", "x", "v", "P", "E_int", "conserved_ratio"])
            .integer_columns(&["step"]);
    let last = traj.points.len() - 1;
    for (step, p) in traj.points.iter().enumerate() {
        if step % wp.record_every == 0 || step == last {
            trajectory.push_row(vec![step as f64, p.t, p.x, p.v, p.momentum, p.e_int, p.conserved_ratio]);
        }
    }
    let end = traj.last();
    trajectory.meta("profile_source", &loaded.source);
    if let Some(d) = &loaded.file_sha256 {
        trajectory.meta("profile_sha256", d);
    }
    trajectory.meta_f64("x0", x0);
    trajectory.meta_f64("max_ratio_drift", traj.max_ratio_drift());
    trajectory.meta_f64("momentum_change", end.momentum - init.momentum);
    trajectory.meta_f64("displacement", end.x - x0);
    trajectory.meta_f64("acceleration_at_x0", acceleration(profile, x0, &consts)?);
    if let TemperatureProfile::Exponential { rate, .. } = profile {
        let g = wp.c * wp.c * rate;
        let t = end.t;
        let parabola = x0 + wp.v0 * t - 0.5 * g * t * t;
        trajectory.meta_f64("uniform_acceleration_x", parabola);
        trajectory.meta_f64("uniform_acceleration_deviation", end.x - parabola);
    }
    trajectory.stamp(config);

    let [lo, hi] = wp.redshift_range.unwrap_or_else(|| default_range(profile));
    let n = wp.redshift_points;
    let mut redshift = ResultTable::new(
        "wavepacket_redshift",
        &["x", "Theta", "phi", "redshift_ratio", "tolman_ratio", "acceleration"],
    );
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        redshift.push_row(vec![
            x,
            profile.theta(x)?,
            potential_from_temperature(profile, x, &consts)?,
            redshift_ratio(profile, x0, x)?,
            tolman_ratio(wp.t_global, profile, x, x0)?,
            acceleration(profile, x, &consts)?,
        ]);
    }
    redshift.meta("profile_source", &loaded.source);
    redshift.meta_f64("reference_x", x0);
    redshift.meta("redshift_ratio", "nu(x0)/nu(x) = Theta(x)/Theta(x0)");
    redshift.meta("tolman_ratio", "T_phys(x)/T_phys(x0) with T_phys = T/Theta");
    redshift.stamp(config);

    Ok(vec![trajectory, redshift])
}

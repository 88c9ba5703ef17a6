use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use confpot::deconfinement::{
    alpha_s_compactified, coulomb_collapse_report, curved_vs_flat_spectrum, temperature_from_radius,
    walking_literal, walking_samples, x_from_radius, CouplingParams, CurvedTemplate,
};
use confpot::deformation::{
    induced_potential_with, ColorDipole, CotFactor, DeformationProfile, PotentialModel, ProfileTerm,
};
use confpot::eigensolver::{reference_spectrum, solve, SpectralProblem};
use confpot::output::{to_json_string, write_atomic, Cell, Table};
use confpot::reproduction::reproduce;
use confpot::spectroscopy::{
    energy_squared, fit_levels_with, synthetic_levels, FitMode, FitResult, LevelDataset, PhysicalParams,
    PredictionGroup, SyntheticNoise,
};
use confpot::verification::{default_profiles, run_suite, CheckStatus, SuiteConfig};

use crate::config::Config;
use crate::{
    Basis, Cli, Command, CouplingArgs, DeconfineArgs, DeconfineTable, FitArgs, FitModeArg, Format, PhysicsArgs,
    PotentialArgs, ProfileArgs, SolveArgs, VerifyArgs,
};

/// Sine-basis size used when `--grid-points` is not given.
const DEFAULT_SINE_BASIS: usize = 128;

pub enum Outcome {
    Success,
    ChecksFailed(usize),
}

/// Where and how a command's main result is written.
struct Sink {
    format: Format,
    path: Option<PathBuf>,
}

impl Sink {
    fn new(cli: &Cli, default_stem: &str) -> Self {
        let path = match (&cli.output, &cli.output_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(format!("{default_stem}.{}", cli.format.extension()))),
            (None, None) => None,
        };
        Self { format: cli.format, path }
    }

    fn to_stdout(&self) -> bool {
        self.path.is_none()
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn table(&self, table: &Table) -> Result<()> {
        let text = match self.format {
            Format::Csv => table.to_csv()?,
            Format::Json => to_json_string(&table.to_json_value())?,
        };
        self.write(&text)
    }
}

pub fn run(cli: &Cli, config: &Config) -> Result<Outcome> {
    match &cli.command {
        Command::Potential(a) => potential(cli, config, a),
        Command::Solve(a) => solve_cmd(cli, config, a),
        Command::Verify(a) => verify(cli, config, a),
        Command::Fit(a) => fit(cli, config, a),
        Command::Coupling(a) => coupling(cli, config, a),
        Command::Deconfine(a) => deconfine(cli, config, a),
        Command::ReproducePaper => reproduce_paper(cli),
    }
}

/// A `--f-spec` file: `[[term]]` tables with a `kind` key.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FSpec {
    term: Vec<ProfileTerm<f64>>,
}

fn load_f_spec(path: &Path) -> Result<DeformationProfile<f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: FSpec = toml::from_str(&text).with_context(|| format!("invalid profile spec {}", path.display()))?;
    if spec.term.is_empty() {
        bail!("profile spec {} has no terms", path.display());
    }
    Ok(DeformationProfile::from_terms(spec.term))
}

enum Model {
    Induced(PotentialModel<f64>),
    Dipole(ColorDipole<f64>),
}

impl Model {
    fn potential(&self) -> PotentialModel<f64> {
        match self {
            Model::Induced(v) => v.clone(),
            Model::Dipole(d) => d.potential(),
        }
    }
}

fn build_model(config: &Config, a: &ProfileArgs) -> Result<Model> {
    let p = &config.profile;
    let family = a.family.clone().unwrap_or_else(|| p.family.clone()).to_ascii_lowercase();
    let ell = a.ell.unwrap_or(p.ell);
    if family == "dipole" {
        let lambda = a.lambda.unwrap_or(config.dipole.lambda);
        let alphas_nc = a.alphas_nc.unwrap_or(config.dipole.alphas_nc);
        return Ok(Model::Dipole(ColorDipole::new(alphas_nc, 0.0, lambda, ell)?));
    }
    let profile = if family == "custom" {
        let Some(path) = &a.f_spec else {
            bail!("--family custom needs --f-spec FILE");
        };
        load_f_spec(path)?
    } else {
        DeformationProfile::from_name(
            &family,
            a.alpha.unwrap_or(p.alpha),
            a.alpha_k.unwrap_or(p.alpha_k),
            a.beta.unwrap_or(p.beta),
        )?
    };
    let k = a.k.unwrap_or(p.k.max(ell));
    for w in profile.warnings(k) {
        eprintln!("warning: {w}");
    }
    let factor = if a.ell_cot_factor { CotFactor::EllPlusOne } else { CotFactor::KPlusOne };
    Ok(Model::Induced(induced_potential_with(&profile, ell, k, factor)?))
}

fn potential(cli: &Cli, config: &Config, a: &PotentialArgs) -> Result<Outcome> {
    let model = build_model(config, &a.profile)?;
    let samples = a.samples.unwrap_or(config.grid.samples);
    if samples < 2 {
        bail!("need at least 2 samples");
    }
    let v = model.potential();
    let nodes = v.sample(samples, config.grid.margin);
    let table = match &model {
        Model::Induced(_) => {
            let mut t = Table::new(["chi", "V"]);
            for (x, y) in nodes {
                t.push(vec![x.into(), y.into()]);
            }
            t
        }
        Model::Dipole(d) => {
            let mut t = Table::new(["chi", "Gamma_N", "Gamma_S", "V_CED"]);
            for (x, _) in nodes {
                t.push(vec![x.into(), d.gamma_n(x).into(), d.gamma_s(x).into(), d.v_ced(x).into()]);
            }
            t
        }
    };
    Sink::new(cli, "potential").table(&table)?;
    Ok(Outcome::Success)
}

fn solve_cmd(cli: &Cli, config: &Config, a: &SolveArgs) -> Result<Outcome> {
    let v = build_model(config, &a.profile)?.potential();
    let levels = a.levels.unwrap_or(config.grid.levels);
    let problem = match a.basis {
        Basis::Fd => SpectralProblem::new(v.clone(), a.grid_points.unwrap_or(config.grid.points)),
        Basis::Sine => SpectralProblem::sine(v.clone(), a.grid_points.unwrap_or(DEFAULT_SINE_BASIS)),
    };
    let result = solve(&problem, levels)?;
    let reference = reference_spectrum(&v).map(|r| r.levels(levels));
    let mut table = Table::new(["index", "eigenvalue", "analytic_reference", "abs_error"]);
    for (i, &e) in result.eigenvalues.iter().enumerate() {
        let t = reference.as_ref().map(|r| r[i]);
        table.push(vec![i.into(), e.into(), t.into(), t.map(|t| (e - t).abs()).into()]);
    }
    Sink::new(cli, "spectrum").table(&table)?;
    if let Some(path) = &a.eigenvectors {
        let mut header = vec!["chi".to_string()];
        header.extend((0..levels).map(|i| format!("psi_{i}")));
        let mut t = Table::new(header);
        for (j, &x) in result.grid.iter().enumerate() {
            let mut row: Vec<Cell> = vec![x.into()];
            row.extend(result.eigenvectors.iter().map(|psi| Cell::from(psi[j])));
            t.push(row);
        }
        let path = match &cli.output_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.clone(),
        };
        write_atomic(&path, t.to_csv()?.as_bytes()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome::Success)
}

fn verify(cli: &Cli, config: &Config, a: &VerifyArgs) -> Result<Outcome> {
    let mut suite = SuiteConfig {
        grid_points: a.grid_points.unwrap_or(config.grid.points),
        ..SuiteConfig::default()
    };
    if let Some(name) = &a.family {
        let p = &config.profile;
        let named = DeformationProfile::from_name(
            name,
            a.alpha.unwrap_or(p.alpha),
            a.alpha_k.unwrap_or(p.alpha_k),
            a.beta.unwrap_or(p.beta),
        )?;
        // without explicit parameters use the suite's representative of the family
        let explicit = a.alpha.is_some() || a.alpha_k.is_some() || a.beta.is_some();
        let profile = if explicit {
            named
        } else {
            default_profiles()
                .into_iter()
                .find(|d| d.family.name() == named.family.name())
                .unwrap_or(named)
        };
        suite.profiles = vec![profile];
        suite.include_global = false;
    }
    if let Some(k) = a.k {
        suite.k_values = vec![k];
        suite.include_global = false;
    }
    let outcomes = run_suite(&suite);
    let sink = Sink::new(cli, "verify");
    if !(sink.to_stdout() && cli.format == Format::Json) {
        for o in &outcomes {
            println!("{} {}: {}", o.status, o.name, o.detail);
        }
    }
    let failed = outcomes.iter().filter(|o| o.status == CheckStatus::Fail).count();
    let skipped = outcomes.iter().filter(|o| o.status == CheckStatus::Skip).count();
    match (sink.to_stdout(), cli.format) {
        (true, Format::Csv) => {
            println!("{} checks: {} passed, {failed} failed, {skipped} skipped", outcomes.len(), outcomes.len() - failed - skipped)
        }
        (true, Format::Json) => sink.write(&to_json_string(&outcomes)?)?,
        (false, Format::Json) => sink.write(&to_json_string(&outcomes)?)?,
        (false, Format::Csv) => {
            let mut t = Table::new(["check", "status", "value", "tolerance", "detail"]);
            for o in &outcomes {
                let num = |x: f64| if x.is_nan() { Cell::Empty } else { Cell::Float(x) };
                t.push(vec![
                    o.name.as_str().into(),
                    o.status.to_string().into(),
                    num(o.value),
                    num(o.tolerance),
                    o.detail.as_str().into(),
                ]);
            }
            sink.table(&t)?;
        }
    }
    Ok(if failed == 0 { Outcome::Success } else { Outcome::ChecksFailed(failed) })
}

fn physical_params(config: &Config, a: &PhysicsArgs) -> Result<PhysicalParams<f64>> {
    let c = &config.physics;
    let p = PhysicalParams::new(
        a.radius_fm.unwrap_or(c.radius_fm),
        a.lambda_qcd.unwrap_or(c.lambda_qcd_mev),
        a.alpha_s.unwrap_or(c.alpha_s),
        a.nc.unwrap_or(c.nc),
        a.nf.unwrap_or(c.nf),
    )?;
    Ok(match a.mu_q {
        Some(mu) => p.with_mu(mu)?,
        None => p,
    })
}

#[derive(Serialize)]
struct FitReport<'a> {
    source: String,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "C")]
    c: f64,
    std_errors: [f64; 3],
    residuals: &'a [f64],
    covariance: [[f64; 3]; 3],
    mode: FitMode,
    weighted: bool,
    predictions: Vec<PredictionGroup<f64>>,
    /// The same level formula from the physical parameters, without offset.
    physical: PhysicalPrediction,
}

#[derive(Serialize)]
struct PhysicalPrediction {
    params: PhysicalParams<f64>,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    energy_squared_gev2: Vec<f64>,
}

fn fit(cli: &Cli, config: &Config, a: &FitArgs) -> Result<Outcome> {
    let f = &config.fit;
    let (data, source) = match &a.input {
        Some(path) => (LevelDataset::load(path)?, path.display().to_string()),
        None => {
            let noise = a.noise.unwrap_or(f.noise_fraction);
            if !(noise >= 0.0) {
                bail!("--noise must be non-negative");
            }
            let seed = a.seed.unwrap_or(f.seed);
            let ks: Vec<usize> = (0..=f.k_max).collect();
            let noise = (noise > 0.0).then_some(SyntheticNoise { seed, fraction: noise });
            let source = match noise {
                Some(n) => format!("synthetic, noise {} seed {}", n.fraction, n.seed),
                None => "synthetic, exact".to_string(),
            };
            (synthetic_levels(f.a_gev2, f.b_gev2, f.c_gev2, &ks, noise)?, source)
        }
    };
    let mode = match a.mode {
        FitModeArg::Staged => FitMode::Staged,
        FitModeArg::Joint => FitMode::Joint,
    };
    let result: FitResult<f64> = fit_levels_with(&data, mode)?;
    let sink = Sink::new(cli, "fit");
    match cli.format {
        Format::Json => {
            let params = physical_params(config, &a.physics)?;
            let report = FitReport {
                source,
                a: result.a,
                b: result.b,
                c: result.c,
                std_errors: result.std_errors(),
                residuals: &result.residuals,
                covariance: result.covariance,
                mode: result.mode,
                weighted: result.weighted,
                predictions: result.predictions_by_k(&data),
                physical: PhysicalPrediction {
                    a: params.rotor_coefficient_gev2(),
                    b: params.binding_coefficient_gev2(),
                    energy_squared_gev2: data.distinct_k().iter().map(|&k| energy_squared(k, &params)).collect(),
                    params,
                },
            };
            sink.write(&to_json_string(&report)?)?;
        }
        Format::Csv => {
            let mut t = Table::new(["label", "K", "observed_mev", "predicted_mev", "residual_gev2"]);
            for (row, res) in data.rows.iter().zip(&result.residuals) {
                t.push(vec![
                    row.label.as_str().into(),
                    row.k.into(),
                    row.mass_mev.into(),
                    result.predicted_mass_mev(row.k).into(),
                    (*res).into(),
                ]);
            }
            sink.table(&t)?;
        }
    }
    Ok(Outcome::Success)
}

fn coupling(cli: &Cli, config: &Config, a: &CouplingArgs) -> Result<Outcome> {
    let c = &config.coupling;
    let (x_min, x_max) = (a.x_min.unwrap_or(c.x_min), a.x_max.unwrap_or(c.x_max));
    if !(x_min > 0.0 && x_max > x_min) {
        bail!("need 0 < x_min < x_max");
    }
    let nf = a.nf.unwrap_or(config.physics.nf);
    let lambda = a.lambda_qcd.unwrap_or(config.physics.lambda_qcd_mev);
    let (rho, q2) = (a.rho.unwrap_or(c.rho), a.q2.unwrap_or(c.q2_mev2));
    // validates the parameters once before sampling
    CouplingParams::new(nf, q2, lambda, 1.0, rho)?;
    let mut t = Table::new(["x", "alpha_s_walking", "alpha_s_literal", "alpha_s_compactified"]);
    for (x, y) in walking_samples(a.samples.unwrap_or(c.samples), x_min, x_max) {
        let compact = alpha_s_compactified(&CouplingParams::new(nf, q2, lambda, x, rho)?);
        t.push(vec![x.into(), y.into(), walking_literal(x).value().into(), compact.value().into()]);
    }
    Sink::new(cli, "coupling").table(&t)?;
    Ok(Outcome::Success)
}

fn deconfine(cli: &Cli, config: &Config, a: &DeconfineArgs) -> Result<Outcome> {
    let d = &config.deconfine;
    let params = physical_params(config, &a.physics)?;
    let radii = a.r_sequence.clone().unwrap_or_else(|| d.r_sequence_fm.clone());
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        bail!("--r-sequence needs positive radii");
    }
    let sink = Sink::new(cli, "deconfine");
    match a.table {
        DeconfineTable::Temperature => {
            let mut t = Table::new(["radius_fm", "x", "temperature_mev"]);
            for &r in &radii {
                t.push(vec![
                    r.into(),
                    x_from_radius(r, params.lambda_qcd_mev).into(),
                    temperature_from_radius(r, params.lambda_qcd_mev, params.n_c).into(),
                ]);
            }
            sink.table(&t)?;
        }
        DeconfineTable::Collapse => {
            let report =
                coulomb_collapse_report(params.radius_fm, params.alpha_s_nc(), d.collapse_fraction, d.collapse_points)?;
            match cli.format {
                Format::Json => sink.write(&to_json_string(&report)?)?,
                Format::Csv => {
                    let mut t = Table::new(["r_fm", "chi", "v_curved_mev", "v_flat_mev", "relative_deviation"]);
                    for r in &report.rows {
                        t.push(vec![
                            r.r_fm.into(),
                            r.chi.into(),
                            r.v_curved.into(),
                            r.v_flat.into(),
                            r.relative_deviation.into(),
                        ]);
                    }
                    sink.table(&t)?;
                }
            }
            eprintln!(
                "max relative deviation {:.4}%, series bound {:.4}%, monotone {}",
                100.0 * report.max_relative_deviation,
                100.0 * report.series_bound,
                report.monotone
            );
        }
        DeconfineTable::Curved => {
            let template = CurvedTemplate {
                alpha_s_nc: params.alpha_s_nc(),
                mu_q_c2_mev: params.mu_q_c2_mev,
                ell: a.ell.unwrap_or(0),
                levels: a.levels.unwrap_or(config.grid.levels),
                grid_points: a.grid_points.unwrap_or(config.grid.points),
            };
            let rows = curved_vs_flat_spectrum(&radii, &template)?;
            let mut t = Table::new([
                "radius_fm",
                "K",
                "energy_curved_mev",
                "energy_flat_mev",
                "gap_mev",
                "gap_formula_mev",
                "gap_relative_error",
            ]);
            for r in rows {
                t.push(vec![
                    r.radius_fm.into(),
                    r.k.into(),
                    r.energy_curved.into(),
                    r.energy_flat.into(),
                    r.gap.into(),
                    r.gap_formula.into(),
                    r.gap_relative_error.into(),
                ]);
            }
            sink.table(&t)?;
        }
    }
    Ok(Outcome::Success)
}

fn reproduce_paper(cli: &Cli) -> Result<Outcome> {
    let rows = reproduce()?;
    let sink = Sink::new(cli, "reproduction");
    match (sink.to_stdout(), cli.format) {
        (_, Format::Json) => sink.write(&to_json_string(&rows)?)?,
        (true, Format::Csv) => {
            for r in &rows {
                let verdict = if r.pass { "pass" } else { "FAIL" };
                if r.published == 0.0 {
                    println!(
                        "{} | {} {:.2e} | tolerance {:e} | {verdict}",
                        r.quantity, r.unit, r.computed, r.tolerance
                    );
                } else {
                    println!(
                        "{} | published {} {} | computed {:.6} | tolerance {} | {verdict}",
                        r.quantity, r.published, r.unit, r.computed, r.tolerance
                    );
                }
            }
        }
        (false, Format::Csv) => {
            let mut t = Table::new(["quantity", "unit", "published", "computed", "tolerance", "pass"]);
            for r in &rows {
                t.push(vec![
                    r.quantity.as_str().into(),
                    r.unit.as_str().into(),
                    r.published.into(),
                    r.computed.into(),
                    r.tolerance.into(),
                    r.pass.into(),
                ]);
            }
            sink.table(&t)?;
        }
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    Ok(if failed == 0 { Outcome::Success } else { Outcome::ChecksFailed(failed) })
}

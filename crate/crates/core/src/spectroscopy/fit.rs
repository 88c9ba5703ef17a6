use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{level_formula, MEV2_PER_GEV2};
use crate::error::{Error, Result};
use crate::num::{int, lit, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRow<T> {
    pub label: String,
    pub mass_mev: T,
    pub k: usize,
    pub sigma_mev: Option<T>,
}

impl<T: Real> LevelRow<T> {
    /// `M^2` in GeV^2.
    pub fn mass_squared_gev2(&self) -> T {
        self.mass_mev * self.mass_mev / lit::<T>(MEV2_PER_GEV2)
    }

    /// Uncertainty of `M^2` propagated from `sigma_mev`, GeV^2.
    pub fn sigma_m2_gev2(&self) -> Option<T> {
        self.sigma_mev
            .map(|s| lit::<T>(2.0) * self.mass_mev * s / lit::<T>(MEV2_PER_GEV2))
    }
}

/// Meson masses with their level assignments `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelDataset<T> {
    pub rows: Vec<LevelRow<T>>,
    pub source: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    label: String,
    mass_mev: f64,
    #[serde(alias = "k")]
    #[serde(rename = "K")]
    k: i64,
    #[serde(default)]
    sigma_mev: Option<f64>,
}

impl<T: Real> LevelDataset<T> {
    pub fn new(rows: Vec<LevelRow<T>>) -> Result<Self> {
        for r in &rows {
            if !(r.mass_mev > T::zero()) || !r.mass_mev.is_finite() {
                return Err(Error::InvalidDataset(format!(
                    "row {:?}: mass must be positive, got {}",
                    r.label, r.mass_mev
                )));
            }
            if let Some(s) = r.sigma_mev {
                if !(s > T::zero()) {
                    return Err(Error::InvalidDataset(format!(
                        "row {:?}: sigma must be positive, got {s}",
                        r.label
                    )));
                }
            }
        }
        Ok(Self { rows, source: None })
    }

    /// Reads `label,mass_mev,K[,sigma_mev]` with `#` comment lines.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut rows = Vec::new();
        for (i, rec) in rdr.deserialize::<RawRow>().enumerate() {
            let raw = rec?;
            if raw.k < 0 {
                return Err(Error::InvalidDataset(format!(
                    "record {}: K must be non-negative, got {}",
                    i + 1,
                    raw.k
                )));
            }
            rows.push(LevelRow {
                label: raw.label,
                mass_mev: lit(raw.mass_mev),
                k: raw.k as usize,
                sigma_mev: raw.sigma_mev.map(lit),
            });
        }
        Self::new(rows)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        let mut ds = Self::from_reader(file)?;
        ds.source = Some(path.as_ref().to_path_buf());
        Ok(ds)
    }

    pub fn distinct_k(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.rows.iter().map(|r| r.k).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    /// Same masses scaled so that every `M^2` is multiplied by `factor`.
    pub fn scale_mass_squared(&self, factor: T) -> Self {
        let s = factor.sqrt();
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| LevelRow {
                    mass_mev: r.mass_mev * s,
                    sigma_mev: r.sigma_mev.map(|x| x * s),
                    ..r.clone()
                })
                .collect(),
            source: self.source.clone(),
        }
    }
}

/// How the offset `C` is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMode {
    /// `A`, `B` from the level splittings (weighted means removed), then `C`
    /// from the mean offset. Same minimizer as `Joint`.
    #[default]
    Staged,
    /// `A`, `B`, `C` from one 3x3 normal-equation solve.
    Joint,
}

/// Least-squares fit of `M^2 = A (K+1)^2 - B/(K+1)^2 + C` (GeV^2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    /// `observed - predicted` M^2 per row, GeV^2.
    pub residuals: Vec<T>,
    /// `(X^T W X)^-1` in the order (A, B, C); unit weights without sigmas.
    pub covariance: [[T; 3]; 3],
    pub mode: FitMode,
    pub weighted: bool,
}

impl<T: Real> FitResult<T> {
    pub fn predicted_mass_squared(&self, k: usize) -> T {
        level_formula(k, self.a, self.b) + self.c
    }

    /// Predicted mass in MeV, `None` where `M^2 <= 0`.
    pub fn predicted_mass_mev(&self, k: usize) -> Option<T> {
        let m2 = self.predicted_mass_squared(k);
        (m2 > T::zero()).then(|| (m2 * lit::<T>(MEV2_PER_GEV2)).sqrt())
    }

    /// Parameter standard errors from the diagonal of `covariance`.
    pub fn std_errors(&self) -> [T; 3] {
        [0, 1, 2].map(|i| self.covariance[i][i].max(T::zero()).sqrt())
    }

    /// Rows grouped by `K`, each group sharing one predicted mass.
    pub fn predictions_by_k(&self, data: &LevelDataset<T>) -> Vec<PredictionGroup<T>> {
        let mut groups: BTreeMap<usize, Vec<(String, T)>> = BTreeMap::new();
        for r in &data.rows {
            groups.entry(r.k).or_default().push((r.label.clone(), r.mass_mev));
        }
        groups
            .into_iter()
            .map(|(k, members)| PredictionGroup {
                k,
                predicted_mass_mev: self.predicted_mass_mev(k),
                members,
            })
            .collect()
    }
}

/// All rows assigned to one level `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionGroup<T> {
    pub k: usize,
    pub predicted_mass_mev: Option<T>,
    /// `(label, observed mass in MeV)`.
    pub members: Vec<(String, T)>,
}

fn regressors<T: Real>(k: usize) -> [T; 3] {
    let m2 = int::<T>((k + 1) * (k + 1));
    [m2, -m2.recip(), T::one()]
}

/// Solves `m x = rhs` by Gaussian elimination with complete pivoting.
/// Returns `None` when a pivot falls below `tol * max|m|`.
fn solve_full_pivot<T: Real, const N: usize>(mut m: [[T; N]; N], mut rhs: [T; N], tol: T) -> Option<[T; N]> {
    let scale = m.iter().flatten().fold(T::zero(), |s, x| s.max(x.abs()));
    if scale == T::zero() {
        return None;
    }
    let mut col_perm: [usize; N] = std::array::from_fn(|i| i);
    for step in 0..N {
        let (mut pr, mut pc, mut best) = (step, step, T::zero());
        for (r, row) in m.iter().enumerate().skip(step) {
            for (c, v) in row.iter().enumerate().skip(step) {
                if v.abs() > best {
                    (pr, pc, best) = (r, c, v.abs());
                }
            }
        }
        if best <= tol * scale {
            return None;
        }
        m.swap(step, pr);
        rhs.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            col_perm.swap(step, pc);
        }
        for r in step + 1..N {
            let f = m[r][step] / m[step][step];
            for c in step..N {
                let v = m[step][c];
                m[r][c] -= f * v;
            }
            let v = rhs[step];
            rhs[r] -= f * v;
        }
    }
    let mut y = [T::zero(); N];
    for i in (0..N).rev() {
        let mut s = rhs[i];
        for j in i + 1..N {
            s -= m[i][j] * y[j];
        }
        y[i] = s / m[i][i];
    }
    let mut x = [T::zero(); N];
    for (i, &p) in col_perm.iter().enumerate() {
        x[p] = y[i];
    }
    Some(x)
}

fn rank_tol<T: Real>() -> T {
    T::epsilon() * lit(1e3)
}

fn invert3<T: Real>(m: [[T; 3]; 3]) -> Option<[[T; 3]; 3]> {
    let mut inv = [[T::zero(); 3]; 3];
    for j in 0..3 {
        let mut e = [T::zero(); 3];
        e[j] = T::one();
        let col = solve_full_pivot(m, e, rank_tol())?;
        for i in 0..3 {
            inv[i][j] = col[i];
        }
    }
    Some(inv)
}

/// Unweighted (or `1/sigma^2`-weighted when every row carries `sigma_mev`)
/// least-squares fit in the default staged mode.
pub fn fit_levels<T: Real>(data: &LevelDataset<T>) -> Result<FitResult<T>> {
    fit_levels_with(data, FitMode::default())
}

pub fn fit_levels_with<T: Real>(data: &LevelDataset<T>, mode: FitMode) -> Result<FitResult<T>> {
    let ks = data.distinct_k();
    if ks.len() < 3 {
        return Err(Error::RankDeficient(format!(
            "{} rows span only {} distinct K value(s) {:?}; three are needed for A, B, C",
            data.rows.len(),
            ks.len(),
            ks
        )));
    }
    let weighted = data.rows.iter().all(|r| r.sigma_mev.is_some());
    let ys: Vec<T> = data.rows.iter().map(|r| r.mass_squared_gev2()).collect();
    let ws: Vec<T> = data
        .rows
        .iter()
        .map(|r| match (weighted, r.sigma_m2_gev2()) {
            (true, Some(s)) => (s * s).recip(),
            _ => T::one(),
        })
        .collect();
    let xs: Vec<[T; 3]> = data.rows.iter().map(|r| regressors(r.k)).collect();

    let mut normal = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for ((x, &y), &w) in xs.iter().zip(&ys).zip(&ws) {
        for i in 0..3 {
            rhs[i] += w * x[i] * y;
            for j in 0..3 {
                normal[i][j] += w * x[i] * x[j];
            }
        }
    }
    let deficient = || Error::RankDeficient(format!("normal equations are singular for K values {ks:?}"));

    let params = match mode {
        FitMode::Joint => solve_full_pivot(normal, rhs, rank_tol()).ok_or_else(deficient)?,
        FitMode::Staged => {
            let wsum = ws.iter().fold(T::zero(), |s, &w| s + w);
            let mean = |f: &dyn Fn(usize) -> T| (0..ys.len()).fold(T::zero(), |s, i| s + ws[i] * f(i)) / wsum;
            let mx = [mean(&|i| xs[i][0]), mean(&|i| xs[i][1])];
            let my = mean(&|i| ys[i]);
            let mut n2 = [[T::zero(); 2]; 2];
            let mut r2 = [T::zero(); 2];
            for i in 0..ys.len() {
                let dx = [xs[i][0] - mx[0], xs[i][1] - mx[1]];
                let dy = ys[i] - my;
                for a in 0..2 {
                    r2[a] += ws[i] * dx[a] * dy;
                    for b in 0..2 {
                        n2[a][b] += ws[i] * dx[a] * dx[b];
                    }
                }
            }
            let ab = solve_full_pivot(n2, r2, rank_tol()).ok_or_else(deficient)?;
            let c = my - ab[0] * mx[0] - ab[1] * mx[1];
            [ab[0], ab[1], c]
        }
    };
    let covariance = invert3(normal).ok_or_else(deficient)?;
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, &y)| y - (params[0] * x[0] + params[1] * x[1] + params[2]))
        .collect();
    Ok(FitResult {
        a: params[0],
        b: params[1],
        c: params[2],
        residuals,
        covariance,
        mode,
        weighted,
    })
}

/// Gaussian noise on `M^2` with standard deviation `fraction * M^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticNoise {
    pub seed: u64,
    pub fraction: f64,
}

/// Masses `sqrt(A (K+1)^2 - B/(K+1)^2 + C)` for each `K`, optionally perturbed.
pub fn synthetic_levels<T: Real>(
    a: T,
    b: T,
    c: T,
    ks: &[usize],
    noise: Option<SyntheticNoise>,
) -> Result<LevelDataset<T>> {
    let mut rng = noise.map(|n| ChaCha8Rng::seed_from_u64(n.seed));
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let mut m2 = level_formula(k, a, b) + c;
        if let (Some(rng), Some(n)) = (rng.as_mut(), noise) {
            let sd = n.fraction * m2.to_f64().unwrap_or(0.0).abs();
            let dist = Normal::new(0.0, sd)
                .map_err(|e| Error::InvalidParameter(format!("noise distribution: {e}")))?;
            m2 += lit::<T>(dist.sample(rng));
        }
        if !(m2 > T::zero()) {
            return Err(Error::InvalidDataset(format!(
                "level K = {k} has non-positive M^2 = {m2} GeV^2"
            )));
        }
        rows.push(LevelRow {
            label: format!("K{k}"),
            mass_mev: (m2 * lit::<T>(MEV2_PER_GEV2)).sqrt(),
            k,
            sigma_mev: None,
        });
    }
    LevelDataset::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectroscopy::{F0_FIT_A_GEV2 as A, F0_FIT_B_GEV2 as B, F0_FIT_C_GEV2 as C};

    fn ks() -> Vec<usize> {
        (0..6).collect()
    }

    #[test]
    fn exact_round_trip_both_modes() {
        let data = synthetic_levels(A, B, C, &ks(), None).unwrap();
        for mode in [FitMode::Staged, FitMode::Joint] {
            let fit = fit_levels_with(&data, mode).unwrap();
            assert!((fit.a - A).abs() < 1e-10, "{mode:?} {}", fit.a);
            assert!((fit.b - B).abs() < 1e-10);
            assert!((fit.c - C).abs() < 1e-10);
            assert!(fit.residuals.iter().all(|r| r.abs() < 1e-10));
        }
    }

    #[test]
    fn noisy_round_trip() {
        let noise = SyntheticNoise { seed: 7, fraction: 0.01 };
        let data = synthetic_levels(A, B, C, &ks(), Some(noise)).unwrap();
        let fit = fit_levels(&data).unwrap();
        assert!((fit.a / A - 1.0).abs() < 0.05);
        assert!((fit.b / B - 1.0).abs() < 0.05);
        assert!((fit.c / C - 1.0).abs() < 0.05);
        // same seed, same data
        assert_eq!(data, synthetic_levels(A, B, C, &ks(), Some(noise)).unwrap());
    }

    #[test]
    fn rank_deficiency_reported() {
        let rows = (0..4)
            .map(|i| LevelRow { label: format!("m{i}"), mass_mev: 1000.0, k: 2, sigma_mev: None })
            .collect();
        let data = LevelDataset::new(rows).unwrap();
        match fit_levels(&data) {
            Err(Error::RankDeficient(msg)) => assert!(msg.contains("[2]"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn csv_loading() {
        let text = "# f0 levels\nlabel,mass_mev,K,sigma_mev\nf0(500), 500, 0, 50\nf0(980),980,1,\n# trailing comment\nf0(1370),1370,2,20\n";
        let data = LevelDataset::<f64>::from_reader(text.as_bytes()).unwrap();
        assert_eq!(data.rows.len(), 3);
        assert_eq!(data.rows[0].sigma_mev, Some(50.0));
        assert_eq!(data.rows[1].sigma_mev, None);
        assert_eq!(data.distinct_k(), vec![0, 1, 2]);
        let bad = "label,mass_mev,K\nx,-3,0\n";
        assert!(LevelDataset::<f64>::from_reader(bad.as_bytes()).is_err());
        let neg_k = "label,mass_mev,K\nx,3,-1\n";
        assert!(LevelDataset::<f64>::from_reader(neg_k.as_bytes()).is_err());
    }

    #[test]
    fn shared_level_shares_prediction() {
        let mut data = synthetic_levels(A, B, C, &ks(), None).unwrap();
        data.rows.push(LevelRow { label: "partner".into(), mass_mev: 2000.0, k: 3, sigma_mev: None });
        let fit = fit_levels(&data).unwrap();
        let groups = fit.predictions_by_k(&data);
        let g3 = groups.iter().find(|g| g.k == 3).unwrap();
        assert_eq!(g3.members.len(), 2);
        assert!(g3.predicted_mass_mev.is_some());
    }

    #[test]
    fn full_pivot_solver() {
        let m = [[0.0, 2.0, 1.0], [1.0, 0.0, 0.0], [3.0, 1.0, 4.0]];
        let x = solve_full_pivot(m, [5.0, 1.0, 12.5], 1e-14).unwrap();
        for (a, b) in x.iter().zip([1.0_f64, 1.5, 2.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(solve_full_pivot([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0], 1e-12).is_none());
    }
}

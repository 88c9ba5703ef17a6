//! Dirichlet spectra of `-d^2/dchi^2 + V(chi)` on the potential's domain.
//!
//! Two discretizations are offered: second-order finite differences on a
//! uniform interior grid (tridiagonal, solved by implicit QL plus inverse
//! iteration) and a Rayleigh-Ritz sine basis (dense, solved by Householder
//! reduction plus QL).

mod linalg;
mod reference;

use serde::{Deserialize, Serialize};

pub use reference::{reference_spectrum, AnalyticSpectrum};

use crate::deformation::{centrifugal, PotentialModel};
use crate::error::{Error, Result};
use crate::num::{int, lit, Real};

/// Smallest finite-difference grid accepted by [`solve`].
pub const MIN_FD_POINTS: usize = 64;
/// Smallest sine basis accepted by [`solve`].
pub const MIN_SINE_POINTS: usize = 8;
/// Default number of midpoint nodes for sine-basis matrix elements.
pub const DEFAULT_QUADRATURE_NODES: usize = 4096;
/// Default grid size of the verification suites.
pub const DEFAULT_GRID_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discretization {
    #[default]
    FiniteDifference2,
    SineSpectral,
}

#[derive(Debug, Clone)]
pub struct SpectralProblem<T> {
    pub potential: PotentialModel<T>,
    /// Interior grid nodes (finite differences) or basis size (sine).
    pub grid_points: usize,
    /// Amount trimmed from both ends of the potential's domain.
    pub domain_margin: T,
    pub discretization: Discretization,
    /// Midpoint nodes used for sine-basis matrix elements.
    pub quadrature_nodes: usize,
}

impl<T: Real> SpectralProblem<T> {
    pub fn new(potential: PotentialModel<T>, grid_points: usize) -> Self {
        Self {
            potential,
            grid_points,
            domain_margin: T::zero(),
            discretization: Discretization::FiniteDifference2,
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
        }
    }

    pub fn sine(potential: PotentialModel<T>, basis_size: usize) -> Self {
        Self {
            discretization: Discretization::SineSpectral,
            ..Self::new(potential, basis_size)
        }
    }

    pub fn with_grid_points(&self, grid_points: usize) -> Self {
        Self {
            grid_points,
            ..self.clone()
        }
    }

    pub fn with_margin(mut self, margin: T) -> Self {
        self.domain_margin = margin;
        self
    }

    pub fn with_quadrature_nodes(mut self, nodes: usize) -> Self {
        self.quadrature_nodes = nodes;
        self
    }

    /// The interval carrying the Dirichlet conditions.
    pub fn interval(&self) -> (T, T) {
        let (a, b) = self.potential.domain;
        (a + self.domain_margin, b - self.domain_margin)
    }

    fn min_points(&self) -> usize {
        match self.discretization {
            Discretization::FiniteDifference2 => MIN_FD_POINTS,
            Discretization::SineSpectral => MIN_SINE_POINTS,
        }
    }

    /// Uniform interior grid `a + i h`, `i = 1..N`, `h = L / (N + 1)`.
    pub fn grid(&self) -> (Vec<T>, T) {
        let (a, b) = self.interval();
        let n = self.grid_points;
        let h = (b - a) / int::<T>(n + 1);
        ((1..=n).map(|i| a + h * int::<T>(i)).collect(), h)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricMatrix<T> {
    Tridiagonal { diag: Vec<T>, off: Vec<T> },
    Dense(Vec<Vec<T>>),
}

impl<T: Real> SymmetricMatrix<T> {
    pub fn dim(&self) -> usize {
        match self {
            SymmetricMatrix::Tridiagonal { diag, .. } => diag.len(),
            SymmetricMatrix::Dense(a) => a.len(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self {
            SymmetricMatrix::Tridiagonal { diag, off } => {
                if i == j {
                    diag[i]
                } else if i + 1 == j {
                    off[i]
                } else if j + 1 == i {
                    off[j]
                } else {
                    T::zero()
                }
            }
            SymmetricMatrix::Dense(a) => a[i][j],
        }
    }
}

fn checked<T: Real>(v: T, chi: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinitePotential {
            chi: chi.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn validate_size<T: Real>(problem: &SpectralProblem<T>) -> Result<()> {
    let min = problem.min_points();
    if problem.grid_points < min {
        return Err(Error::GridTooSmall {
            got: problem.grid_points,
            min,
        });
    }
    let (a, b) = problem.interval();
    if !(b > a) {
        return Err(Error::InvalidParameter(format!(
            "empty interval after margin: ({a}, {b})"
        )));
    }
    if problem.discretization == Discretization::SineSpectral && problem.quadrature_nodes < 2 * problem.grid_points {
        return Err(Error::InvalidParameter(format!(
            "{} quadrature nodes cannot resolve {} sine modes",
            problem.quadrature_nodes, problem.grid_points
        )));
    }
    Ok(())
}

/// Midpoint nodes of the sine-basis quadrature.
fn quadrature_grid<T: Real>(problem: &SpectralProblem<T>) -> (Vec<T>, T) {
    let (a, b) = problem.interval();
    let m = problem.quadrature_nodes;
    let w = (b - a) / int::<T>(m);
    ((0..m).map(|i| a + w * (int::<T>(i) + lit(0.5))).collect(), w)
}

/// `phi_k(chi) = sqrt(2/L) sin(k pi (chi - a) / L)`, `k = 1..n`, at one point.
fn sine_basis<T: Real>(a: T, len: T, n: usize, chi: T) -> Vec<T> {
    let norm = (lit::<T>(2.0) / len).sqrt();
    let theta = T::PI() * (chi - a) / len;
    (1..=n).map(|k| norm * (int::<T>(k) * theta).sin()).collect()
}

/// Matrix of the operator together with the interior grid it lives on.
pub fn discretize<T: Real>(problem: &SpectralProblem<T>) -> Result<(SymmetricMatrix<T>, Vec<T>)> {
    validate_size(problem)?;
    let (nodes, h) = problem.grid();
    match problem.discretization {
        Discretization::FiniteDifference2 => {
            let inv_h2 = (h * h).recip();
            let two = lit::<T>(2.0);
            let diag = nodes
                .iter()
                .map(|&x| checked(problem.potential.total(x), x).map(|v| two * inv_h2 + v))
                .collect::<Result<Vec<_>>>()?;
            let off = vec![-inv_h2; nodes.len() - 1];
            Ok((SymmetricMatrix::Tridiagonal { diag, off }, nodes))
        }
        Discretization::SineSpectral => {
            let n = problem.grid_points;
            let (a, b) = problem.interval();
            let len = b - a;
            let mut m = vec![vec![T::zero(); n]; n];
            let (qnodes, w) = quadrature_grid(problem);
            for &x in &qnodes {
                let v = checked(problem.potential.total(x), x)? * w;
                let phi = sine_basis(a, len, n, x);
                for i in 0..n {
                    let vi = v * phi[i];
                    for j in i..n {
                        m[i][j] += vi * phi[j];
                    }
                }
            }
            let pl = T::PI() / len;
            for i in 0..n {
                let kk = int::<T>(i + 1) * pl;
                m[i][i] += kk * kk;
                for j in 0..i {
                    m[i][j] = m[j][i];
                }
            }
            Ok((SymmetricMatrix::Dense(m), nodes))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult<T> {
    /// Lowest eigenvalues, ascending.
    pub eigenvalues: Vec<T>,
    /// Eigenfunctions sampled on `grid`, normalized so that
    /// `sum psi^2 * spacing = 1` (trapezoid rule with zero end values).
    pub eigenvectors: Vec<Vec<T>>,
    pub grid: Vec<T>,
    pub spacing: T,
    /// Filled in by [`convergence_study`].
    pub convergence_order: Option<T>,
    pub grid_points: usize,
    pub discretization: Discretization,
    /// Sine-basis expansion coefficients of each eigenvector.
    #[serde(skip)]
    pub coefficients: Option<Vec<Vec<T>>>,
    #[serde(skip)]
    interval: (T, T),
    #[serde(skip)]
    quadrature_nodes: usize,
}

impl<T: Real> SpectrumResult<T> {
    /// Trapezoid inner product of two eigenvectors.
    pub fn overlap(&self, i: usize, j: usize) -> T {
        let s = self.eigenvectors[i]
            .iter()
            .zip(&self.eigenvectors[j])
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        s * self.spacing
    }

    /// `max |Psi^T W Psi - I|`.
    pub fn orthonormality_residual(&self) -> T {
        let n = self.eigenvectors.len();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..=i {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((self.overlap(i, j) - target).abs());
            }
        }
        worst
    }

    /// Interior sign changes of eigenvector `k`, ignoring values below
    /// `1e-10` of its peak.
    pub fn sign_changes(&self, k: usize) -> usize {
        let v = &self.eigenvectors[k];
        let peak = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let floor = peak * lit(1e-10);
        let mut last = T::zero();
        let mut count = 0;
        for &x in v {
            if x.abs() <= floor {
                continue;
            }
            if last != T::zero() && (x > T::zero()) != (last > T::zero()) {
                count += 1;
            }
            last = x;
        }
        count
    }
}

fn check_count<T: Real>(problem: &SpectralProblem<T>, count: usize) -> Result<()> {
    let max = problem.grid_points / 4;
    if count == 0 || count > max {
        return Err(Error::TooManyEigenpairs {
            count,
            max,
            grid_points: problem.grid_points,
        });
    }
    Ok(())
}

/// Lowest `count` eigenpairs of the discretized operator.
///
/// `count` must not exceed `N / 4`.
pub fn solve<T: Real>(problem: &SpectralProblem<T>, count: usize) -> Result<SpectrumResult<T>> {
    validate_size(problem)?;
    check_count(problem, count)?;
    let (matrix, grid) = discretize(problem)?;
    let (_, h) = problem.grid();
    let (eigenvalues, eigenvectors, coefficients) = match matrix {
        SymmetricMatrix::Tridiagonal { diag, off } => {
            let mut vals = linalg::tridiagonal_eigenvalues(&diag, &off)?;
            vals.truncate(count);
            let inv_sqrt_h = h.sqrt().recip();
            let vecs = linalg::tridiagonal_eigenvectors(&diag, &off, &vals)
                .into_iter()
                .map(|v| v.into_iter().map(|x| x * inv_sqrt_h).collect())
                .collect();
            (vals, vecs, None)
        }
        SymmetricMatrix::Dense(m) => {
            let n = m.len();
            let (mut vals, z) = linalg::symmetric_eigen(m)?;
            vals.truncate(count);
            let (a, b) = problem.interval();
            let basis: Vec<Vec<T>> = grid.iter().map(|&x| sine_basis(a, b - a, n, x)).collect();
            let mut coeffs = Vec::with_capacity(count);
            let mut vecs = Vec::with_capacity(count);
            for j in 0..count {
                let mut c: Vec<T> = (0..n).map(|i| z[i][j]).collect();
                let mut psi: Vec<T> = basis
                    .iter()
                    .map(|phi| phi.iter().zip(&c).fold(T::zero(), |s, (&p, &ci)| s + p * ci))
                    .collect();
                let peak = psi.iter().fold(T::zero(), |m, x| m.max(x.abs()));
                if let Some(first) = psi.iter().find(|x| x.abs() > peak * lit(1e-3)) {
                    if *first < T::zero() {
                        c.iter_mut().for_each(|x| *x = -*x);
                        psi.iter_mut().for_each(|x| *x = -*x);
                    }
                }
                coeffs.push(c);
                vecs.push(psi);
            }
            (vals, vecs, Some(coeffs))
        }
    };
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        grid,
        spacing: h,
        convergence_order: None,
        grid_points: problem.grid_points,
        discretization: problem.discretization,
        coefficients,
        interval: problem.interval(),
        quadrature_nodes: problem.quadrature_nodes,
    })
}

/// First-order shift `<psi_k | w | psi_k>` of eigenvalue `k` under `V -> V + delta w`.
///
/// Uses the same quadrature as the discretization, so it is the exact
/// derivative of the discrete eigenvalue.
pub fn first_order_shift<T: Real, W: Fn(T) -> T>(result: &SpectrumResult<T>, k: usize, w: W) -> T {
    match &result.coefficients {
        None => result.eigenvectors[k]
            .iter()
            .zip(&result.grid)
            .fold(T::zero(), |s, (&psi, &x)| s + psi * psi * w(x))
            * result.spacing,
        Some(coeffs) => {
            let c = &coeffs[k];
            let (a, b) = result.interval;
            let m = result.quadrature_nodes;
            let dw = (b - a) / int::<T>(m);
            let mut acc = T::zero();
            for i in 0..m {
                let x = a + dw * (int::<T>(i) + lit(0.5));
                let psi = sine_basis(a, b - a, c.len(), x)
                    .iter()
                    .zip(c)
                    .fold(T::zero(), |s, (&p, &ci)| s + p * ci);
                acc += psi * psi * w(x);
            }
            acc * dw
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyRow<T> {
    pub ell: usize,
    /// Zero-based index of the level that corresponds to `K`, i.e. `K - ell`.
    pub level_index: usize,
    pub eigenvalue: T,
    pub target: T,
    pub relative_error: T,
}

/// For each `ell = 0..=ell_max`, the `(K - ell)`-th free level with the
/// centrifugal term `ell(ell+1)/sin^2`, compared to `(K+1)^2`.
pub fn degeneracy_report<T: Real>(ell_max: usize, k: usize, grid_points: usize) -> Result<Vec<DegeneracyRow<T>>> {
    if ell_max > k {
        return Err(Error::EllExceedsK { ell: ell_max, k });
    }
    let target = int::<T>((k + 1) * (k + 1));
    (0..=ell_max)
        .map(|ell| {
            let idx = k - ell;
            let problem = SpectralProblem::new(centrifugal::<T>(ell), grid_points);
            let count = (idx + 1).max(1);
            let r = solve(&problem, count)?;
            let e = r.eigenvalues[idx];
            Ok(DegeneracyRow {
                ell,
                level_index: idx,
                eigenvalue: e,
                target,
                relative_error: ((e - target) / target).abs(),
            })
        })
        .collect()
}

/// Largest relative spread `(max - min) / mean` of a degeneracy table.
pub fn degeneracy_spread<T: Real>(rows: &[DegeneracyRow<T>]) -> T {
    if rows.is_empty() {
        return T::zero();
    }
    let lo = rows.iter().map(|r| r.eigenvalue).fold(T::infinity(), T::min);
    let hi = rows.iter().map(|r| r.eigenvalue).fold(T::neg_infinity(), T::max);
    let mean = rows.iter().fold(T::zero(), |s, r| s + r.eigenvalue) / int::<T>(rows.len());
    (hi - lo) / mean.abs()
}

/// `(E_f h_c^2 - E_c h_f^2) / (h_c^2 - h_f^2)`, eliminating the `h^2` term.
pub fn richardson<T: Real>(coarse: T, h_coarse: T, fine: T, h_fine: T) -> T {
    let (c2, f2) = (h_coarse * h_coarse, h_fine * h_fine);
    (fine * c2 - coarse * f2) / (c2 - f2)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy<T> {
    pub grid_points: Vec<usize>,
    pub spacings: Vec<T>,
    /// `eigenvalues[g][k]`: level `k` on grid `g`.
    pub eigenvalues: Vec<Vec<T>>,
    /// Richardson limit of each level from the two finest grids.
    pub extrapolated: Vec<T>,
    /// `errors[g][k] = |eigenvalues[g][k] - extrapolated[k]|`.
    pub errors: Vec<Vec<T>>,
    /// Fitted order per level; `None` where the errors are at rounding level.
    pub level_orders: Vec<Option<T>>,
    /// Order of the lowest level, the headline number.
    pub order: Option<T>,
    /// Errors decrease strictly with refinement for every level.
    pub monotone: bool,
    /// Every grid reproduces the limit to rounding.
    pub exact: bool,
}

/// Least-squares slope of `ys` against `xs`.
fn slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = int::<T>(xs.len());
    let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let my = ys.iter().fold(T::zero(), |s, &y| s + y) / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Solves `problem` on each grid size and fits the error order.
///
/// The limit is Richardson-extrapolated from the two finest grids; the order
/// is the slope of `log error` against `log h` over the remaining grids. A
/// non-monotone error sequence is reported through `monotone`, not as an error.
pub fn convergence_study<T: Real>(
    problem: &SpectralProblem<T>,
    count: usize,
    grid_sequence: &[usize],
) -> Result<ConvergenceStudy<T>> {
    if grid_sequence.len() < 3 {
        return Err(Error::InvalidGridSequence(format!(
            "need at least 3 grids, got {}",
            grid_sequence.len()
        )));
    }
    if let Some(w) = grid_sequence.windows(2).find(|w| w[1] < 2 * w[0]) {
        return Err(Error::InvalidGridSequence(format!(
            "{} is less than twice {}",
            w[1], w[0]
        )));
    }
    let mut eigenvalues = Vec::new();
    let mut spacings = Vec::new();
    for &n in grid_sequence {
        let p = problem.with_grid_points(n);
        let r = solve(&p, count)?;
        spacings.push(p.grid().1);
        eigenvalues.push(r.eigenvalues);
    }
    let g = grid_sequence.len();
    let extrapolated: Vec<T> = (0..count)
        .map(|k| match problem.discretization {
            Discretization::FiniteDifference2 => richardson(
                eigenvalues[g - 2][k],
                spacings[g - 2],
                eigenvalues[g - 1][k],
                spacings[g - 1],
            ),
            Discretization::SineSpectral => eigenvalues[g - 1][k],
        })
        .collect();
    let errors: Vec<Vec<T>> = eigenvalues
        .iter()
        .map(|row| row.iter().zip(&extrapolated).map(|(&e, &x)| (e - x).abs()).collect())
        .collect();
    let tol = |k: usize| lit::<T>(64.0) * T::epsilon() * extrapolated[k].abs().max(T::one());
    let level_orders: Vec<Option<T>> = (0..count)
        .map(|k| {
            let pts: Vec<(T, T)> = (0..g - 1)
                .filter(|&i| errors[i][k] > tol(k))
                .map(|i| (spacings[i].ln(), errors[i][k].ln()))
                .collect();
            if pts.len() < 2 {
                return None;
            }
            let (xs, ys): (Vec<T>, Vec<T>) = pts.into_iter().unzip();
            Some(slope(&xs, &ys))
        })
        .collect();
    let monotone = (0..count).all(|k| (1..g - 1).all(|i| errors[i][k] < errors[i - 1][k] || errors[i - 1][k] <= tol(k)));
    let exact = (0..count).all(|k| (0..g).all(|i| errors[i][k] <= tol(k)));
    Ok(ConvergenceStudy {
        grid_points: grid_sequence.to_vec(),
        spacings,
        eigenvalues,
        extrapolated,
        errors,
        order: level_orders.first().copied().flatten(),
        level_orders,
        monotone,
        exact,
    })
}

//! Acceptance criteria 1-12, one PASS/FAIL line each.
//!
//! Every target value is recomputed here from its closed form rather than
//! taken from the library's own reference routines.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use confpot::deconfinement::{
    coulomb_collapse_report, radius_from_temperature, temperature_from_radius, walking_curve, walking_samples,
};
use confpot::deformation::{
    centrifugal, dipole_potential, ground_state_residual, induced_potential, induced_potential_with, ColorDipole,
    CotFactor, DeformationProfile, PotentialKind, PotentialModel,
};
use confpot::eigensolver::{first_order_shift, solve, SpectralProblem};
use confpot::special_functions::{gegenbauer_value, romanovski_coefficients};
use confpot::spectroscopy::{fit_levels, synthetic_levels, LevelDataset, LevelRow, SyntheticNoise};

type Exact = num_rational::Ratio<i128>;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn csc2(x: f64) -> f64 {
    1.0 / x.sin().powi(2)
}

fn interior(a: f64, b: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| a + (b - a) * i as f64 / (n + 1) as f64).collect()
}

fn free_level(k: usize) -> f64 {
    ((k + 1) * (k + 1)) as f64
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let spectra: Vec<(Vec<f64>, f64)> = [1000, 2000, 4000]
        .iter()
        .map(|&n| {
            let p = SpectralProblem::new(centrifugal::<f64>(0), n);
            (solve(&p, 6).unwrap().eigenvalues, PI / (n + 1) as f64)
        })
        .collect();
    let raw = (0..6).map(|k| rel(spectra[1].0[k], free_level(k))).fold(0.0, f64::max);
    // h^2 elimination between N = 2000 and N = 4000, written out
    let (h1, h2) = (spectra[1].1, spectra[2].1);
    let extrapolated = (0..6)
        .map(|k| {
            let e = (spectra[2].0[k] * h1 * h1 - spectra[1].0[k] * h2 * h2) / (h1 * h1 - h2 * h2);
            rel(e, free_level(k))
        })
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        raw < 1e-4 && extrapolated < 1e-6 && secs < 10.0,
        format!("N=2000 max rel err {raw:.2e} (<1e-4), Richardson {extrapolated:.2e} (<1e-6), {secs:.2} s (<10 s)"),
    )
}

fn criterion_2() -> Verdict {
    let k = 3;
    let values: Vec<f64> = (0..=k)
        .map(|ell| {
            let r = solve(&SpectralProblem::new(centrifugal::<f64>(ell), 2000), k - ell + 1).unwrap();
            r.eigenvalues[k - ell]
        })
        .collect();
    let worst = values.iter().map(|&e| rel(e, free_level(k))).fold(0.0, f64::max);
    let (lo, hi) = values.iter().fold((f64::MAX, f64::MIN), |(l, h), &e| (l.min(e), h.max(e)));
    let spread = (hi - lo) / free_level(k);
    verdict(
        worst < 1e-4 && spread < 1e-4,
        format!("K=3 across l=0..3: spread {spread:.2e}, max deviation from 16 {worst:.2e} (<1e-4)"),
    )
}

fn criterion_3() -> Verdict {
    let a = 2.0;
    let v = dipole_potential(a, 0.0, 0.0, 0).unwrap();
    let r = solve(&SpectralProblem::new(v, 2000), 5).unwrap();
    // K = 0 has target 0, so errors are taken relative to max(|target|, 1)
    let worst = (0..5)
        .map(|k| {
            let m2 = free_level(k);
            rel(r.eigenvalues[k], m2 - a * a / 4.0 / m2)
        })
        .fold(0.0, f64::max);
    verdict(worst < 1e-3, format!("lowest 5 levels, max rel err {worst:.2e} (<1e-3)"))
}

/// `[f', f'']` of each family, written independently of the library.
fn family_derivatives(name: &str) -> (DeformationProfile<f64>, Box<dyn Fn(f64) -> (f64, f64)>, (f64, f64)) {
    match name {
        "trm" => (DeformationProfile::linear(-0.8), Box::new(|_| (-0.4, 0.0)), (0.0, PI)),
        "poschl-teller" => (
            DeformationProfile::log_cos(3.0),
            Box::new(|x: f64| (-1.5 * x.tan(), -1.5 / x.cos().powi(2))),
            (0.0, PI / 2.0),
        ),
        "scarf" => (
            DeformationProfile::log_csc_cot(1.0),
            Box::new(|x: f64| (0.5 / x.sin(), -0.5 * x.cos() / x.sin().powi(2))),
            (0.0, PI),
        ),
        "mic-kepler" => (
            DeformationProfile::mic_kepler(2.0, -0.5),
            Box::new(|x: f64| (1.0 / x.tan() - 0.25, -csc2(x))),
            (0.0, PI),
        ),
        "quadratic" => (DeformationProfile::quadratic(-0.5), Box::new(|x: f64| (-0.5 * x, -0.5)), (0.0, PI)),
        _ => unreachable!(),
    }
}

const FAMILIES: [&str; 5] = ["trm", "poschl-teller", "scarf", "mic-kepler", "quadratic"];

fn criterion_4() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut worst_lib: f64 = 0.0;
    for name in FAMILIES {
        let (profile, d, (a, b)) = family_derivatives(name);
        let grid = interior(a, b, 500);
        for k in 0..=5 {
            let m = (k + 1) as f64;
            let v = induced_potential(&profile, k, k).unwrap();
            let mut peak: f64 = 0.0;
            let mut res: f64 = 0.0;
            for &x in &grid {
                let (d1, d2) = d(x);
                let u = profile.f(x).exp() * x.sin().powi(k as i32 + 1);
                // U''/U = (f' + m cot)^2 + f'' - m csc^2
                let g = d1 + m / x.tan();
                let upp = u * (g * g + d2 - m * csc2(x));
                let v_oracle = (k * (k + 1)) as f64 * csc2(x) + d1 * d1 + d2 + 2.0 * d1 * m / x.tan();
                res = res.max((-upp + v_oracle * u - m * m * u).abs());
                res = res.max((-upp + v.total(x) * u - m * m * u).abs());
                peak = peak.max(u.abs());
            }
            worst = worst.max(res / peak);
            worst_lib = worst_lib.max(ground_state_residual(&profile, k, &grid).unwrap());
        }
    }
    // quasi-exact solvability: ground state exact, first excited level off the square pattern
    let mut qes_ground: f64 = 0.0;
    let mut qes_gap = f64::MAX;
    for k in 0..=3 {
        let v = induced_potential(&DeformationProfile::quadratic(-0.5), k, k).unwrap();
        let (p1, p2) = (SpectralProblem::new(v.clone(), 2000), SpectralProblem::new(v, 4000));
        let (r1, r2) = (solve(&p1, 2).unwrap(), solve(&p2, 2).unwrap());
        let (h1, h2) = (p1.grid().1, p2.grid().1);
        let ext = |i: usize| (r2.eigenvalues[i] * h1 * h1 - r1.eigenvalues[i] * h2 * h2) / (h1 * h1 - h2 * h2);
        qes_ground = qes_ground.max(rel(ext(0), free_level(k)));
        let root = ext(1).sqrt();
        qes_gap = qes_gap.min((root - root.round()).abs());
    }
    verdict(
        worst < 1e-9 && worst_lib < 1e-9 && qes_ground < 1e-6 && qes_gap > 1e-2,
        format!(
            "residual {worst:.2e} (library {worst_lib:.2e}, <1e-9); QES ground {qes_ground:.2e}, \
             excited sqrt(E1) distance from an integer {qes_gap:.3} (>1e-2)"
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for name in FAMILIES {
        let (profile, _, (a, b)) = family_derivatives(name);
        let grid = interior(a, b, 500);
        let mut fam: f64 = 0.0;
        for k in 0..=4 {
            for ell in 0..=k {
                let c = (ell * (ell + 1)) as f64;
                let (m, factor) = match name {
                    "poschl-teller" | "scarf" => ((ell + 1) as f64, CotFactor::EllPlusOne),
                    _ => ((k + 1) as f64, CotFactor::KPlusOne),
                };
                let v = induced_potential_with(&profile, ell, k, factor).unwrap();
                for &x in &grid {
                    let closed = match name {
                        "trm" => c * csc2(x) - 0.8 * m / x.tan() + 0.16,
                        "poschl-teller" => {
                            c * csc2(x) + 1.5 * 0.5 / x.cos().powi(2) - 2.25 - 3.0 * m
                        }
                        "scarf" => (c + 0.25) * csc2(x) + 0.5 * (2.0 * ell as f64 + 1.0) / x.sin() / x.tan(),
                        "mic-kepler" => {
                            let mu2 = 0.0 + 2.0 * m;
                            (c + mu2) * csc2(x) - 0.5 * (m + 1.0) / x.tan() + 0.0625 - 1.0 - 2.0 * m
                        }
                        "quadratic" => c * csc2(x) - m * x / x.tan() + 0.25 * x * x - 0.5,
                        _ => unreachable!(),
                    };
                    fam = fam.max(rel(v.total(x), closed));
                }
            }
        }
        details.push(format!("{name} {fam:.1e}"));
        worst = worst.max(fam);
    }
    verdict(worst < 1e-12, format!("{} (<1e-12)", details.join(", ")))
}

fn criterion_6() -> Verdict {
    let mut worst: f64 = 0.0;
    for a_snc in [0.5, 2.0, 4.0] {
        for k in 0..=5 {
            for ell in 0..=k {
                let alpha_k = -a_snc / (k + 1) as f64;
                let lambda = alpha_k * alpha_k / 4.0;
                let induced = induced_potential(&DeformationProfile::linear(alpha_k), ell, k).unwrap();
                let (dipole, _) = ColorDipole::matched_to_linear(a_snc, ell, k).unwrap();
                let vf = dipole.potential();
                for x in interior(0.0, PI, 500) {
                    let oracle = (ell * (ell + 1)) as f64 * csc2(x) - a_snc / x.tan() + lambda;
                    worst = worst.max(rel(induced.total(x), oracle)).max(rel(vf.total(x), oracle));
                }
            }
        }
    }
    verdict(worst < 1e-14, format!("max pointwise rel diff {worst:.2e} (<1e-14)"))
}

fn criterion_7() -> Verdict {
    let (a, b, c) = (0.10964, 1.0434, 1.1873);
    let rows = (0..=5)
        .map(|k: usize| {
            let m2 = a * free_level(k) - b / free_level(k) + c;
            LevelRow { label: format!("K{k}"), mass_mev: (m2 * 1e6).sqrt(), k, sigma_mev: None }
        })
        .collect();
    let exact = fit_levels(&LevelDataset::new(rows).unwrap()).unwrap();
    let e_exact = [rel(exact.a, a), rel(exact.b, b), rel(exact.c, c)].into_iter().fold(0.0, f64::max);
    let ks: Vec<usize> = (0..=5).collect();
    let noisy = synthetic_levels(a, b, c, &ks, Some(SyntheticNoise { seed: 7, fraction: 0.01 })).unwrap();
    let fit = fit_levels(&noisy).unwrap();
    let frac = |x: f64, y: f64| (x / y - 1.0).abs();
    let e_noisy = [frac(fit.a, a), frac(fit.b, b), frac(fit.c, c)].into_iter().fold(0.0, f64::max);
    verdict(
        e_exact < 1e-10 && e_noisy < 0.05,
        format!("exact {e_exact:.2e} (<1e-10); 1% noise, seed 7: {:.2}% (<5%)", 100.0 * e_noisy),
    )
}

fn criterion_8() -> Verdict {
    let hbar_c = 197.3269804;
    let t: f64 = temperature_from_radius(0.58, 200.0, 3);
    let oracle = 200.0 * 200.0 * 0.58 / (3.0 * hbar_c);
    let r: f64 = radius_from_temperature(7000.0, 200.0, 3);
    verdict(
        (t - 39.19).abs() <= 0.01 && (t - oracle).abs() < 1e-12 && (100.0..=110.0).contains(&r),
        format!("T = {t:.4} MeV (39.19 +- 0.01); R(7 GeV) = {r:.2} fm (in [100, 110])"),
    )
}

fn criterion_9() -> Verdict {
    let samples: Vec<(f64, f64)> = walking_samples(150, 1e-6, 10.0);
    let in_range = samples.len() == 150 && samples.iter().all(|&(x, _)| x > 1e-6 && x <= 10.0 + 1e-12);
    let worst = samples
        .iter()
        .map(|&(x, y)| {
            let z = 1.4 / (x + 1.0 / x).ln();
            (y - z).abs() / z
        })
        .fold(0.0, f64::max);
    let peak = (walking_curve(1.0) - 1.4 / 2f64.ln()).abs();
    verdict(
        in_range && worst < 1e-12 && peak < 1e-12,
        format!("150 samples on (1e-6, 10]: {worst:.2e}; alpha_s(1) = {:.6}, diff {peak:.1e}", walking_curve(1.0)),
    )
}

fn criterion_10() -> Verdict {
    let report = coulomb_collapse_report(1.0_f64, 1.0, 0.1, 1000).unwrap();
    // series oracle 1 - x cot x = x^2/3 + x^4/45 + 2 x^6/945 + ...
    let series_err = report
        .rows
        .iter()
        .map(|r| {
            let x = r.chi;
            let s = x * x / 3.0 + x.powi(4) / 45.0 + 2.0 * x.powi(6) / 945.0;
            (r.relative_deviation - s).abs() / s
        })
        .fold(0.0, f64::max);
    verdict(
        report.max_relative_deviation < 0.0034 && report.monotone && series_err < 1e-6,
        format!(
            "max deviation {:.4}% (<0.34%), monotone {}, series bound (r/R)^2/3 = {:.4}%, oracle agreement {series_err:.1e}",
            100.0 * report.max_relative_deviation,
            report.monotone,
            100.0 * report.series_bound
        ),
    )
}

fn gegenbauer_exact(n: usize, a: Exact, x: Exact) -> f64 {
    let int = |v: i128| Exact::from_integer(v);
    let rising = |q: Exact, m: usize| (0..m).fold(int(1), |acc, j| acc * (q + int(j as i128)));
    let fact = |m: usize| (1..=m).fold(int(1), |acc, i| acc * int(i as i128));
    let mut sum = int(0);
    for k in 0..=n / 2 {
        let m = n - 2 * k;
        let pow = (0..m).fold(int(1), |acc, _| acc * int(2) * x);
        let term = rising(a, n - k) / (fact(k) * fact(m)) * pow;
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    *sum.numer() as f64 / *sum.denom() as f64
}

fn criterion_11() -> Verdict {
    let mut geg: f64 = 0.0;
    for n in 0..=10 {
        for a in [Exact::from_integer(1), Exact::new(3, 2), Exact::from_integer(3)] {
            for i in 0..50 {
                let x = Exact::new(2 * i + 1 - 50, 50);
                let oracle = gegenbauer_exact(n, a, x);
                let af = *a.numer() as f64 / *a.denom() as f64;
                let xf = *x.numer() as f64 / *x.denom() as f64;
                geg = geg.max((gegenbauer_value(n, af, xf) - oracle).abs() / oracle.abs().max(1.0));
            }
        }
    }
    let mut ode: f64 = 0.0;
    for n in 0..=5 {
        for (alpha, beta) in [(0.6, -3.0), (-1.0, -5.0), (2.0, 0.5)] {
            let c = romanovski_coefficients(n, alpha, beta).coeffs().to_vec();
            for i in 0..=40 {
                let z = -4.0 + 0.2 * i as f64;
                let (mut u, mut du, mut ddu) = (0.0, 0.0, 0.0);
                for (j, &cj) in c.iter().enumerate() {
                    let jf = j as f64;
                    u += cj * z.powi(j as i32);
                    if j >= 1 {
                        du += cj * jf * z.powi(j as i32 - 1);
                    }
                    if j >= 2 {
                        ddu += cj * jf * (jf - 1.0) * z.powi(j as i32 - 2);
                    }
                }
                let nf = n as f64;
                let r = (1.0 + z * z) * ddu + (alpha + 2.0 * beta * z) * du - nf * (2.0 * beta + nf - 1.0) * u;
                ode = ode.max(r.abs() / (u.abs().max(1.0) * (1.0 + z * z)));
            }
        }
    }
    verdict(
        geg < 1e-10 && ode < 1e-8,
        format!("Gegenbauer vs exact series {geg:.1e} (<1e-10); Romanovski ODE residual {ode:.1e} (<1e-8)"),
    )
}

fn criterion_12() -> Verdict {
    let delta = 1e-5;
    let cases: [(PotentialModel<f64>, fn(f64) -> f64); 3] = [
        (centrifugal(1), |x: f64| x),
        (dipole_potential(2.0, 0.0, 0.0, 0).unwrap(), |x: f64| x.sin().powi(2)),
        (induced_potential(&DeformationProfile::quadratic(0.3), 1, 1).unwrap(), |x: f64| 1.0 + x.cos()),
    ];
    let mut worst: f64 = 0.0;
    for (base, w) in cases {
        let shifted = |d: f64| {
            base.plus(&PotentialModel::from_fn(PotentialKind::Induced, "w", base.ell, base.k, move |x| d * w(x)))
        };
        let r = solve(&SpectralProblem::new(base.clone(), 400), 3).unwrap();
        let up = solve(&SpectralProblem::new(shifted(delta), 400), 3).unwrap();
        let down = solve(&SpectralProblem::new(shifted(-delta), 400), 3).unwrap();
        for k in 0..3 {
            let fd = (up.eigenvalues[k] - down.eigenvalues[k]) / (2.0 * delta);
            let analytic = first_order_shift(&r, k, w);
            worst = worst.max((fd - analytic).abs() / analytic.abs());
        }
    }
    verdict(worst < 1e-3, format!("3 potentials x 3 levels, max rel diff {worst:.2e} (<1e-3)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("free-spectrum exactness", criterion_1),
        ("degeneracy", criterion_2),
        ("tRM spectrum", criterion_3),
        ("ground-state exactness", criterion_4),
        ("Master Formula vs closed forms", criterion_5),
        ("dipole identity", criterion_6),
        ("fit round-trip", criterion_7),
        ("temperature relation", criterion_8),
        ("walking-coupling curve", criterion_9),
        ("Coulomb collapse", criterion_10),
        ("special-function oracles", criterion_11),
        ("perturbation check", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!("criterion {:>2} {} {name}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Seeded cross-validation suite: every reported quantity is recomputed along
//! an independent route and the worst deviation per check is tabulated.
//!
//! A check compares two things that are supposed to agree for reasons the
//! code cannot fake: the closed forms against the operator pipeline, the
//! pipeline against the brute-force oracle, algebraic identities (commutators,
//! spectra, E = F(C)), and inequalities with known saturation points. The
//! `verify` CLI command prints the table and fails if any row does.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{
    concurrence_pure, density, entanglement_report, entropy_numeric, eof, partial_trace, Atom,
};
use crate::dynamics::{evolve, EffectiveH};
use crate::numerics::{herm_eig, CMat};
use crate::spin::{
    coherent_pair_state, collective_ops, pair_collective_ops, CoherentPrep, ProductState, SpinJ,
};
use crate::squeezing::{mean_spin, rotate_to_mean_frame, squeezing_params};
use crate::oracle::{oracle_full, oracle_state};

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Largest deviation (or constraint violation) seen.
    pub worst: f64,
    pub tol: f64,
    pub pass: bool,
    /// Parameters of the worst offender, when the check is sample-based.
    pub worst_case: Option<String>,
}

/// Full table of checks for one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("verification: seed {}, {} samples\n\n", self.seed, self.samples);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {:width$}  worst {:9.3e}  tol {:7.1e}",
                c.name, c.worst, c.tol
            ));
            if !c.pass {
                if let Some(at) = &c.worst_case {
                    out.push_str(&format!("  at {at}"));
                }
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            out.push_str(&format!("\nall {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!("\n{failed} of {} checks FAILED\n", self.checks.len()));
        }
        out
    }
}

/// Running maximum with the parameters that produced it.
struct Tracker {
    name: &'static str,
    tol: f64,
    worst: f64,
    at: Option<String>,
}

impl Tracker {
    fn new(name: &'static str, tol: f64) -> Self {
        Tracker { name, tol, worst: 0.0, at: None }
    }

    fn observe(&mut self, value: f64, params: impl FnOnce() -> String) {
        if value > self.worst || self.at.is_none() {
            self.worst = self.worst.max(value);
            self.at = Some(params());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            worst: self.worst,
            tol: self.tol,
            pass: self.worst <= self.tol,
            worst_case: self.at,
        }
    }
}

fn triple_label(theta: f64, phi: f64, tau: f64) -> String {
    format!("theta={theta:.6}, phi={phi:.6}, delta0_t={tau:.6}")
}

/// Run every check with `samples` random parameter draws. Deterministic for a
/// fixed (seed, samples) pair.
pub fn run(seed: u64, samples: usize) -> VerifyReport {
    assert!(samples >= 1, "verification needs at least one sample");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut t_amps = Tracker::new("oracle amplitudes match the evolution pipeline", 1e-12);
    let mut t_entropy = Tracker::new("oracle entropy matches the pipeline", 1e-10);
    let mut t_spin = Tracker::new("oracle mean spin matches the pipeline", 1e-10);
    let mut t_conc = Tracker::new("oracle concurrence matches the pipeline", 1e-10);
    let mut t_probs = Tracker::new("oracle probabilities match the pipeline", 1e-10);
    let mut t_squeeze = Tracker::new("oracle squeezing matches the pipeline", 1e-10);
    let mut t_prob_sum = Tracker::new("probabilities sum to one", 1e-12);
    let mut t_prob_time = Tracker::new("probabilities are time-independent", 1e-12);
    let mut t_closed_e = Tracker::new("closed-form entropy matches the numeric route", 1e-10);
    let mut t_closed_j = Tracker::new("closed-form mean spin matches the numeric route", 1e-12);
    let mut t_eof = Tracker::new("entanglement of formation equals the entropy", 1e-10);
    let mut t_eof_rand =
        Tracker::new("entanglement of formation equals the entropy on random states", 1e-10);
    let mut t_norm = Tracker::new("evolution preserves the norm", 1e-12);
    let mut t_compose = Tracker::new("evolution composes over time splits", 1e-12);
    let mut t_thermal =
        Tracker::new("thermal occupation leaves all reported quantities invariant", 1e-10);
    let mut t_coherent = Tracker::new("coherent states point along (theta, phi)", 1e-12);
    let mut t_frame = Tracker::new("rotated frame zeroes the transverse mean spin", 1e-10);
    let mut t_heisenberg =
        Tracker::new("uncertainty product stays above the Heisenberg floor", 1e-12);
    let mut t_smin_lower =
        Tracker::new("analytic transverse minimum lower-bounds the grid variance", 1e-12);
    let mut t_smin_close =
        Tracker::new("grid variance converges to the analytic transverse minimum", 1e-12);
    let mut t_spectra = Tracker::new("reduced states of both atoms share a spectrum", 1e-12);
    let mut t_eig = Tracker::new("eigensolver reconstructs random Hermitian matrices", 1e-12);
    let mut t_comm = Tracker::new("spin commutators close the algebra", 1e-12);
    let mut t_spectrum = Tracker::new("effective Hamiltonian has the dispersive spectrum", 1e-12);

    let h0 = EffectiveH::with_delta0(1.0, 0.0);
    let (jx, jy, _) = pair_collective_ops();

    for i in 0..samples {
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..TAU);
        let tau = rng.gen_range(0.0..TAU);
        let label = || triple_label(theta, phi, tau);

        let prep = CoherentPrep::pair(theta, phi).expect("sampled in range");
        let psi0 = coherent_pair_state(&prep).expect("pair preparation");
        let psi = evolve(&psi0, &h0, tau);

        let reference = oracle_state(theta, phi, tau);
        let amp_diff =
            (0..4).map(|k| (psi.amp(k) - reference.amp(k)).norm()).fold(0.0, f64::max);
        t_amps.observe(amp_diff, label);

        let report = entanglement_report(theta, phi, tau, 0.0).expect("valid parameters");
        let o = oracle_full(theta, phi, tau);
        t_entropy.observe((o.entropy - report.entropy_numeric).abs(), label);
        t_spin.observe((o.mean_spin_mag - report.mean_spin_mag).abs(), label);
        // Near C = 0 the square root amplifies 1e-15 noise in the squared
        // forms past any fixed absolute tolerance, so compare the squares
        // there and the values themselves everywhere else.
        let conc_gap = if o.concurrence + report.concurrence > 1e-4 {
            (o.concurrence - report.concurrence).abs()
        } else {
            (o.concurrence.powi(2) - report.concurrence.powi(2)).abs()
        };
        t_conc.observe(conc_gap, label);
        let prob_diff = o
            .probabilities
            .iter()
            .zip(report.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        t_probs.observe(prob_diff, label);
        t_prob_sum.observe((o.probabilities.iter().sum::<f64>() - 1.0).abs(), label);
        let prob_drift = report
            .probabilities
            .iter()
            .enumerate()
            .map(|(k, p)| (p - psi0.amp(k).norm_sqr()).abs())
            .fold(0.0, f64::max);
        t_prob_time.observe(prob_drift, label);

        t_closed_e.observe((report.entropy_closed - report.entropy_numeric).abs(), label);
        t_closed_j.observe(
            (crate::bipartite::mean_spin_mag_closed(theta, tau) - report.mean_spin_mag).abs(),
            label,
        );
        t_eof.observe((report.eof - report.entropy_numeric).abs(), label);
        t_norm.observe((psi.amps().norm() - 1.0).abs(), label);

        let split = evolve(&evolve(&psi0, &h0, 0.3 * tau), &h0, 0.7 * tau);
        let split_diff =
            (0..4).map(|k| (psi.amp(k) - split.amp(k)).norm()).fold(0.0, f64::max);
        t_compose.observe(split_diff, label);

        let ms0 = mean_spin(&psi0);
        let want =
            [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let dir_diff = ms0
            .vector
            .iter()
            .zip(want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        t_coherent.observe(dir_diff, label);

        let sq = squeezing_params(&psi);
        match (&sq.values, o.squeezing) {
            (Some(v), Some((osx, osy))) => {
                t_squeeze.observe((v.sx - osx).abs().max((v.sy - osy).abs()), label);
                t_heisenberg.observe((v.bound - v.uncertainty_product).max(0.0), label);
                let rotated = rotate_to_mean_frame(&psi, &sq.mean_spin).expect("frame defined");
                let after = mean_spin(&rotated);
                t_frame.observe(after.vector[0].abs().max(after.vector[1].abs()), label);
            }
            (None, None) => t_squeeze.observe(0.0, label),
            // definedness disagrees between the two routes
            _ => t_squeeze.observe(f64::INFINITY, label),
        }

        let nbar = [0.5, 1.0, 3.0][i % 3];
        let hot = evolve(&psi0, &EffectiveH::with_delta0(1.0, nbar), tau);
        let hot_entropy =
            entropy_numeric(&partial_trace(&density(&hot), Atom::A).expect("pure reduction"))
                .expect("valid reduction");
        let mut thermal_diff = (hot_entropy - report.entropy_numeric).abs();
        let hot_sq = squeezing_params(&hot);
        if let (Some(v), Some(w)) = (&sq.values, &hot_sq.values) {
            thermal_diff = thermal_diff
                .max((v.sx - w.sx).abs())
                .max((v.sy - w.sy).abs())
                .max((v.smin - w.smin).abs());
        }
        t_thermal.observe(thermal_diff, || format!("{}, nbar={nbar}", triple_label(theta, phi, tau)));

        let rho = density(&psi);
        let ea = herm_eig(partial_trace(&rho, Atom::A).expect("pure reduction").matrix())
            .expect("Hermitian reduction");
        let eb = herm_eig(partial_trace(&rho, Atom::B).expect("pure reduction").matrix())
            .expect("Hermitian reduction");
        let spectrum_diff = ea
            .eigenvalues
            .iter()
            .zip(&eb.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        t_spectra.observe(spectrum_diff, label);
    }

    // E = F(C) on Haar-random pure states, not just the cavity family
    for i in 0..samples {
        let mut amps = [C64::new(0.0, 0.0); 4];
        for a in amps.iter_mut() {
            *a = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        let psi = ProductState::from_amplitudes(amps).expect("normalized draw");
        let c = concurrence_pure(&psi);
        let e = entropy_numeric(&partial_trace(&density(&psi), Atom::A).expect("pure reduction"))
            .expect("valid reduction");
        t_eof_rand.observe(
            (eof(c).expect("concurrence in range") - e).abs(),
            || format!("random state sample {i}"),
        );
    }

    // Analytic transverse minimum against an exhaustive 3600-point search.
    // The directional variance is an exact sinusoid in 2*alpha, so the grid
    // minimum is entitled to exceed the true one by at most R(1 - cos h)
    // with R the sinusoid amplitude and h the grid spacing. Comparing
    // variances rather than S keeps the bound free of the 1/|<J>| pole.
    for _ in 0..samples.min(200) {
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..TAU);
        let tau = rng.gen_range(0.0..TAU);
        let label = || triple_label(theta, phi, tau);
        let prep = CoherentPrep::pair(theta, phi).expect("sampled in range");
        let psi = evolve(&coherent_pair_state(&prep).expect("pair"), &h0, tau);
        let sq = squeezing_params(&psi);
        if let Some(v) = &sq.values {
            let rotated = rotate_to_mean_frame(&psi, &sq.mean_spin).expect("frame defined");
            let vx = jx.mul_vec(rotated.amps());
            let vy = jy.mul_vec(rotated.amps());
            let mx = rotated.amps().dot(&vx).re;
            let my = rotated.amps().dot(&vy).re;
            let mut var_min = f64::INFINITY;
            let (mut var_x, mut var_y) = (0.0, 0.0);
            for k in 0..3600 {
                let (s, c) = (TAU * k as f64 / 3600.0).sin_cos();
                let norm_sqr: f64 =
                    (0..4).map(|n| (vx[n] * c + vy[n] * s).norm_sqr()).sum();
                let mean = c * mx + s * my;
                let var = norm_sqr - mean * mean;
                if k == 0 {
                    var_x = var;
                }
                if k == 900 {
                    var_y = var;
                }
                var_min = var_min.min(var);
            }
            let lam_min = 0.5 * v.smin * v.smin * sq.mean_spin.magnitude;
            let swing = (0.5 * (var_x + var_y) - lam_min).max(0.0);
            let entitled = swing * (1.0 - (TAU / 3600.0).cos());
            t_smin_lower.observe((lam_min - var_min).max(0.0), label);
            t_smin_close.observe((var_min - lam_min - entitled).max(0.0), label);
        }
    }

    // eigensolver on random dense Hermitian matrices
    for i in 0..samples.min(200) {
        let mut m = CMat::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                m.set(r, c, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let a = m.add(&m.dagger()).scale(C64::new(0.5, 0.0));
        let e = herm_eig(&a).expect("symmetrized matrix");
        let recon = e.reconstruct().max_abs_diff(&a);
        let gram =
            e.eigenvectors.dagger().mul(&e.eigenvectors).max_abs_diff(&CMat::identity(4));
        t_eig.observe(recon.max(gram), || format!("matrix sample {i}"));
    }

    for twice_j in [1u32, 2, 3, 4] {
        let j = SpinJ::new(twice_j as f64 / 2.0).expect("valid j");
        let ops = collective_ops(j);
        let zero = CMat::zeros(j.dim(), j.dim());
        let pairs = [
            (&ops.jx, &ops.jy, &ops.jz),
            (&ops.jy, &ops.jz, &ops.jx),
            (&ops.jz, &ops.jx, &ops.jy),
        ];
        for (a, b, c) in pairs {
            let comm = a.mul(b).sub(&b.mul(a)).sub(&c.scale(C64::new(0.0, 1.0)));
            t_comm.observe(comm.max_abs_diff(&zero), || format!("j={}", j.j()));
        }
    }

    for (nbar, want) in [(0.0, [0.0, 0.7, 0.7, 1.4]), (1.0, [-0.7, 0.0, 1.4, 2.1])] {
        let h = EffectiveH::with_delta0(0.7, nbar);
        let e = herm_eig(h.matrix()).expect("Hermitian Hamiltonian");
        let diff = e
            .eigenvalues
            .iter()
            .zip(want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        t_spectrum.observe(diff, || format!("nbar={nbar}"));
    }

    let checks = vec![
        t_amps.finish(),
        t_entropy.finish(),
        t_spin.finish(),
        t_conc.finish(),
        t_probs.finish(),
        t_squeeze.finish(),
        t_prob_sum.finish(),
        t_prob_time.finish(),
        t_closed_e.finish(),
        t_closed_j.finish(),
        t_eof.finish(),
        t_eof_rand.finish(),
        t_norm.finish(),
        t_compose.finish(),
        t_thermal.finish(),
        t_coherent.finish(),
        t_frame.finish(),
        t_heisenberg.finish(),
        t_smin_lower.finish(),
        t_smin_close.finish(),
        t_spectra.finish(),
        t_eig.finish(),
        t_comm.finish(),
        t_spectrum.finish(),
    ];
    VerifyReport { seed, samples, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_run_passes() {
        let report = run(7, 1);
        assert_eq!(report.checks.len(), 24);
        assert!(report.all_pass(), "{}", report.render_table());
    }

    #[test]
    fn moderate_run_passes_every_check() {
        let report = run(42, 50);
        assert!(report.all_pass(), "{}", report.render_table());
        let table = report.render_table();
        assert!(table.contains("all 24 checks passed"));
        assert!(!table.contains("FAIL"));
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(run(42, 10).render_table(), run(42, 10).render_table());
    }

    #[test]
    fn worst_offenders_are_recorded() {
        let report = run(3, 5);
        let amp_check = &report.checks[0];
        assert!(amp_check.worst_case.as_deref().unwrap().contains("theta="));
    }
}

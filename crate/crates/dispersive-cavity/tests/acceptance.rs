//! Release gate: one test per acceptance criterion, each at its stated
//! tolerance, printing a single summary line on success. Criteria 1 and 9
//! drive the installed binary end to end; the rest call the library.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use dispersive_cavity::bipartite::{
    concurrence_pure, density, entanglement_report, entropy_closed, entropy_numeric, eof,
    mean_spin_mag_closed, partial_trace, Atom,
};
use dispersive_cavity::dynamics::{evolve, scan_times, CavityParams, EffectiveH};
use dispersive_cavity::figures::grid;
use dispersive_cavity::spin::{coherent_pair_state, CoherentPrep, ProductState};
use dispersive_cavity::squeezing::{squeezing_params, squeezing_scan, ScanPoint};

use num_complex::Complex64 as C64;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dispersive-cavity"))
}

/// Data rows of a CSV written by the binary: comments stripped, fields parsed.
fn read_csv_rows(path: &std::path::Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).expect("output file exists");
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse::<f64>().expect("numeric field")).collect())
        .collect()
}

fn pipeline_state(theta: f64, tau: f64) -> ProductState {
    let psi0 = coherent_pair_state(&CoherentPrep::pair(theta, 0.0).unwrap()).unwrap();
    evolve(&psi0, &EffectiveH::with_delta0(1.0, 0.0), tau)
}

fn numeric_entropy(psi: &ProductState) -> f64 {
    entropy_numeric(&partial_trace(&density(psi), Atom::A).unwrap()).unwrap()
}

fn fig3_scan(theta: f64) -> Vec<ScanPoint> {
    let prep = CoherentPrep::pair(theta, 0.0).unwrap();
    // g = delta = 1, k = 0 puts Delta0 at exactly 1, so t and Delta0*t agree.
    let params = CavityParams::new(1.0, 1.0, 0.0, 0.0).unwrap();
    squeezing_scan(&prep, &params, &grid(0.0, PI, 201)).unwrap()
}

#[test]
fn criterion_1_occupation_table_from_the_binary() {
    let published: [[f64; 4]; 3] = [
        [0.87, 0.0625, 0.0625, 0.00448],
        [0.25, 0.25, 0.25, 0.25],
        [0.0625, 0.1875, 0.1875, 0.5625],
    ];
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table1.csv");

    let started = Instant::now();
    let output = bin().args(["table1", "--out"]).arg(&out).output().unwrap();
    let elapsed = started.elapsed();

    assert!(output.status.success(), "table1 exited with {}", output.status);
    assert!(elapsed < Duration::from_secs(1), "table1 took {elapsed:?}");
    let rows = read_csv_rows(&out);
    assert_eq!(rows.len(), 3);
    let mut worst = 0.0f64;
    for (row, want) in rows.iter().zip(published) {
        for (got, want) in row[1..].iter().zip(want) {
            worst = worst.max((got - want).abs());
        }
    }
    assert!(worst <= 5e-3, "worst table deviation {worst:.3e} > 5e-3");
    println!("PASS criterion 1: 12 table values within 5e-3 (worst {worst:.3e}) in {elapsed:?}");
}

#[test]
fn criterion_2_one_bit_at_the_entanglement_maximum() {
    let report = entanglement_report(FRAC_PI_2, 0.0, FRAC_PI_2, 0.0).unwrap();
    let closed_gap = (report.entropy_closed - 1.0).abs();
    let numeric_gap = (report.entropy_numeric - 1.0).abs();
    assert!(closed_gap <= 1e-12, "closed-form entropy off by {closed_gap:.3e}");
    assert!(numeric_gap <= 1e-12, "numeric entropy off by {numeric_gap:.3e}");
    println!(
        "PASS criterion 2: entropy(pi/2, pi/2) = 1 bit within 1e-12 \
         (closed {closed_gap:.3e}, numeric {numeric_gap:.3e})"
    );
}

#[test]
fn criterion_3_entropy_zeros_and_peak_locations() {
    let thetas = [PI / 6.0, FRAC_PI_2, 2.0 * PI / 3.0];
    let mut worst_zero = 0.0f64;
    for theta in thetas {
        for tau in [0.0, PI, TAU] {
            worst_zero = worst_zero.max(entropy_closed(theta, tau));
            worst_zero = worst_zero.max(numeric_entropy(&pipeline_state(theta, tau)));
        }
    }
    assert!(worst_zero <= 1e-12, "entropy at a revival is {worst_zero:.3e}");

    let taus = grid(0.0, TAU, 2000);
    let step = taus[1] - taus[0];
    let mut worst_offset = 0.0f64;
    for theta in thetas {
        let e: Vec<f64> = taus.iter().map(|&tau| entropy_closed(theta, tau)).collect();
        let peaks: Vec<usize> = (1..e.len() - 1)
            .filter(|&k| e[k] >= e[k - 1] && e[k] > e[k + 1])
            .collect();
        assert_eq!(peaks.len(), 2, "expected two maxima on [0, 2pi] for theta {theta}");
        for k in peaks {
            let n = ((taus[k] / FRAC_PI_2 - 1.0) / 2.0).round();
            let offset = (taus[k] - (2.0 * n + 1.0) * FRAC_PI_2).abs();
            assert!(
                offset <= step + 1e-12,
                "peak at {} is {offset:.3e} from an odd multiple of pi/2 (step {step:.3e})",
                taus[k],
            );
            worst_offset = worst_offset.max(offset);
        }
    }
    println!(
        "PASS criterion 3: entropy <= 1e-12 at multiples of pi (worst {worst_zero:.3e}); \
         maxima within one grid step of odd multiples of pi/2 (worst offset {worst_offset:.3e})"
    );
}

#[test]
fn criterion_4_closed_forms_match_numerics_on_a_dense_grid() {
    use dispersive_cavity::bipartite::bloch_decompose;

    let started = Instant::now();
    let thetas = grid(0.0, PI, 100);
    let taus = grid(0.0, TAU, 100);
    let h = EffectiveH::with_delta0(1.0, 0.0);
    let mut worst_entropy = 0.0f64;
    let mut worst_spin = 0.0f64;
    for &theta in &thetas {
        let psi0 = coherent_pair_state(&CoherentPrep::pair(theta, 0.0).unwrap()).unwrap();
        let states = scan_times(&psi0, &h, &taus).unwrap();
        for (&tau, psi) in taus.iter().zip(&states) {
            let rho = density(psi);
            let numeric = entropy_numeric(&partial_trace(&rho, Atom::A).unwrap()).unwrap();
            worst_entropy = worst_entropy.max((numeric - entropy_closed(theta, tau)).abs());
            let mag = 0.5 * bloch_decompose(&rho).unwrap().u_mag();
            worst_spin = worst_spin.max((mag - mean_spin_mag_closed(theta, tau)).abs());
        }
    }
    let elapsed = started.elapsed();
    assert!(worst_entropy <= 1e-10, "entropy routes diverge by {worst_entropy:.3e}");
    assert!(worst_spin <= 1e-12, "mean-spin routes diverge by {worst_spin:.3e}");
    assert!(elapsed < Duration::from_secs(10), "grid took {elapsed:?}");
    println!(
        "PASS criterion 4: 100x100 grid, entropy gap {worst_entropy:.3e} <= 1e-10, \
         mean-spin gap {worst_spin:.3e} <= 1e-12, in {elapsed:?}"
    );
}

#[test]
fn criterion_5_eof_equals_entropy_on_random_pure_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let psi = loop {
            let mut amps = [C64::new(0.0, 0.0); 4];
            for a in &mut amps {
                *a = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                break ProductState::from_amplitudes(amps.map(|a| a / norm)).unwrap();
            }
        };
        let via_concurrence = eof(concurrence_pure(&psi)).unwrap();
        worst = worst.max((via_concurrence - numeric_entropy(&psi)).abs());
    }
    assert!(worst <= 1e-10, "eof and entropy diverge by {worst:.3e}");
    println!("PASS criterion 5: eof(C) = entropy on 1000 random pure states (worst {worst:.3e})");
}

#[test]
fn criterion_6_uncertainty_product_never_undercuts_the_floor() {
    let mut worst_violation = 0.0f64;
    let mut worst_initial_gap = 0.0f64;
    for theta in [PI / 6.0, PI / 3.0, 2.0 * PI / 3.0] {
        let scan = fig3_scan(theta);
        for point in &scan {
            if let Some(v) = &point.squeezing.values {
                worst_violation =
                    worst_violation.max((v.bound - v.uncertainty_product).max(0.0));
            }
        }
        let first = scan[0].squeezing.values.as_ref().expect("t = 0 is a coherent state");
        worst_initial_gap =
            worst_initial_gap.max((first.uncertainty_product - first.bound).abs());
    }
    assert!(worst_violation <= 1e-12, "floor undercut by {worst_violation:.3e}");
    assert!(worst_initial_gap <= 1e-10, "t = 0 gap {worst_initial_gap:.3e} exceeds 1e-10");
    println!(
        "PASS criterion 6: uncertainty product >= floor - 1e-12 at every defined point \
         (worst undercut {worst_violation:.3e}); equality at t = 0 within 1e-10 \
         (worst gap {worst_initial_gap:.3e})"
    );
}

#[test]
fn criterion_7_squeezing_appears_along_x_never_along_y() {
    for theta in [PI / 6.0, PI / 3.0, 2.0 * PI / 3.0] {
        let scan = fig3_scan(theta);
        let sx = |p: &ScanPoint| p.squeezing.values.as_ref().map_or(f64::INFINITY, |v| v.sx);
        let sy = |p: &ScanPoint| p.squeezing.values.as_ref().map_or(f64::NEG_INFINITY, |v| v.sy);

        let min_sx = scan.iter().map(&sx).fold(f64::INFINITY, f64::min);
        assert!(min_sx < 1.0, "no x squeezing at theta {theta}: min Sx {min_sx}");
        for point in &scan {
            if let Some(v) = &point.squeezing.values {
                assert!(v.sy >= 1.0 - 1e-10, "Sy dipped to {} at theta {theta}", v.sy);
            }
        }
        let argmax = |f: &dyn Fn(&ScanPoint) -> f64| {
            (0..scan.len()).max_by(|&a, &b| f(&scan[a]).total_cmp(&f(&scan[b]))).unwrap()
        };
        let peak_sy = argmax(&|p: &ScanPoint| sy(p));
        let peak_entropy = argmax(&|p: &ScanPoint| p.entropy);
        assert_eq!(
            peak_sy, peak_entropy,
            "Sy peaks at grid index {peak_sy} but entropy at {peak_entropy} for theta {theta}",
        );
    }
    println!(
        "PASS criterion 7: min Sx < 1, Sy >= 1 - 1e-10 throughout, and Sy peaks exactly \
         where the entropy does, for theta in {{pi/6, pi/3, 2pi/3}}"
    );
}

#[test]
fn criterion_8_thermal_occupation_is_invisible_in_every_report() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let theta = rng.gen_range(0.0..PI);
        let tau = rng.gen_range(0.0..TAU);
        let cold_entropy = numeric_entropy(&evolved(theta, tau, 0.0));
        let cold_sq = squeezing_params(&evolved(theta, tau, 0.0));
        for nbar in [0.5, 1.0, 3.0] {
            let hot_entropy = numeric_entropy(&evolved(theta, tau, nbar));
            worst = worst.max((hot_entropy - cold_entropy).abs());
            let hot_sq = squeezing_params(&evolved(theta, tau, nbar));
            match (&cold_sq.values, &hot_sq.values) {
                (Some(a), Some(b)) => {
                    worst = worst.max((a.sx - b.sx).abs());
                    worst = worst.max((a.sy - b.sy).abs());
                    worst = worst.max((a.smin - b.smin).abs());
                }
                (a, b) => assert_eq!(
                    a.is_some(),
                    b.is_some(),
                    "definedness flipped with nbar at theta {theta}, tau {tau}",
                ),
            }
        }
    }
    assert!(worst <= 1e-10, "entropy or squeezing moved by {worst:.3e} with nbar");
    println!(
        "PASS criterion 8: entropy and (Sx, Sy, Smin) at nbar in {{0.5, 1, 3}} reproduce \
         nbar = 0 within 1e-10 at 200 random points (worst {worst:.3e})"
    );
}

fn evolved(theta: f64, tau: f64, nbar: f64) -> ProductState {
    let psi0 = coherent_pair_state(&CoherentPrep::pair(theta, 0.0).unwrap()).unwrap();
    evolve(&psi0, &EffectiveH::with_delta0(1.0, nbar), tau)
}

#[test]
fn criterion_9_verify_suite_passes_from_the_binary() {
    let started = Instant::now();
    let output = bin().args(["verify", "--seed", "42", "--samples", "1000"]).output().unwrap();
    let elapsed = started.elapsed();

    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(output.status.code(), Some(0), "verify failed:\n{stdout}");
    assert!(elapsed < Duration::from_secs(30), "verify took {elapsed:?}");
    assert!(stdout.contains("all 24 checks passed"), "unexpected summary:\n{stdout}");
    println!("PASS criterion 9: verify --seed 42 --samples 1000 exited 0 in {elapsed:?}");
}

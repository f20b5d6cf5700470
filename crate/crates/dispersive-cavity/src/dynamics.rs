//! Effective dispersive Hamiltonian of the atom pair and its time evolution.
//!
//! In the dispersive regime the cavity field is never populated and the two
//! atoms see the effective Hamiltonian (hbar = 1)
//!
//! ```text
//! H = Delta0 (J^2 - Jz^2 + 2 nbar Jz),    Delta0 = g^2 delta / (k^2 + delta^2),
//! ```
//!
//! where g is the atom-field coupling, delta the detuning, k the cavity decay
//! rate and nbar the mean thermal photon number. The thermal term commutes
//! with the rest and only produces a collective z-rotation.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::numerics::{herm_eig, CMat, CVec};
use crate::spin::{pair_collective_ops, ProductState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    /// k = delta = 0 leaves Delta0 undefined.
    #[error("degenerate cavity: k and delta both zero")]
    DegenerateCavity,
    /// Mean thermal photon number must be non-negative.
    #[error("negative thermal occupation nbar = {0}")]
    NegativeThermalOccupation(f64),
    /// Time grid contains no points.
    #[error("empty time grid")]
    EmptyGrid,
}

pub type DynamicsResult<T> = Result<T, DynamicsError>;

/// Physical cavity parameters, all rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub g: f64,
    pub delta: f64,
    pub k: f64,
    pub nbar: f64,
    delta0: f64,
    dispersive: bool,
}

impl CavityParams {
    pub fn new(g: f64, delta: f64, k: f64, nbar: f64) -> DynamicsResult<Self> {
        if k == 0.0 && delta == 0.0 {
            return Err(DynamicsError::DegenerateCavity);
        }
        if nbar < 0.0 || nbar.is_nan() {
            return Err(DynamicsError::NegativeThermalOccupation(nbar));
        }
        let delta0 = g * g * delta / (k * k + delta * delta);
        // dispersive validity |i delta + k| > 10 g sqrt(2); advisory only
        let dispersive = (delta * delta + k * k).sqrt() > 10.0 * g * 2.0f64.sqrt();
        Ok(Self { g, delta, k, nbar, delta0, dispersive })
    }

    /// Effective coupling Delta0 = g^2 delta / (k^2 + delta^2), rad/s.
    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    /// Whether the parameters satisfy the dispersive-regime inequality.
    pub fn is_dispersive(&self) -> bool {
        self.dispersive
    }
}

/// The 4x4 effective Hamiltonian in the product basis, with its Delta0 kept
/// alongside so sweeps can be reported on the dimensionless Delta0*t axis.
#[derive(Debug, Clone)]
pub struct EffectiveH {
    matrix: CMat,
    delta0: f64,
}

impl EffectiveH {
    /// Build directly from Delta0; with Delta0 = 1 time is Delta0*t itself.
    pub fn with_delta0(delta0: f64, nbar: f64) -> Self {
        assert!(nbar >= 0.0, "nbar must be non-negative");
        let (jx, jy, jz) = pair_collective_ops();
        let jsq = jx.mul(&jx).add(&jy.mul(&jy)).add(&jz.mul(&jz));
        let matrix = jsq
            .sub(&jz.mul(&jz))
            .add(&jz.scale(C64::new(2.0 * nbar, 0.0)))
            .scale(C64::new(delta0, 0.0));
        Self { matrix, delta0 }
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }
}

pub fn effective_hamiltonian(params: &CavityParams, include_thermal: bool) -> EffectiveH {
    let nbar = if include_thermal { params.nbar } else { 0.0 };
    EffectiveH::with_delta0(params.delta0(), nbar)
}

/// Evolve by e^(-iHt) through the spectral decomposition of H.
pub fn evolve(psi0: &ProductState, h: &EffectiveH, t: f64) -> ProductState {
    let eig = herm_eig(h.matrix()).expect("effective Hamiltonian is Hermitian");
    let psi = apply_phases(psi0, &eig.eigenvalues, &eig.eigenvectors, t);
    ProductState::new(psi).expect("unitary evolution preserves the norm")
}

/// Evolve over a whole grid, diagonalizing H once.
pub fn scan_times(
    psi0: &ProductState,
    h: &EffectiveH,
    t_grid: &[f64],
) -> DynamicsResult<Vec<ProductState>> {
    if t_grid.is_empty() {
        return Err(DynamicsError::EmptyGrid);
    }
    let eig = herm_eig(h.matrix()).expect("effective Hamiltonian is Hermitian");
    Ok(t_grid
        .iter()
        .map(|&t| {
            let psi = apply_phases(psi0, &eig.eigenvalues, &eig.eigenvectors, t);
            ProductState::new(psi).expect("unitary evolution preserves the norm")
        })
        .collect())
}

fn apply_phases(psi0: &ProductState, eigenvalues: &[f64], vectors: &CMat, t: f64) -> CVec {
    let coeffs = vectors.dagger().mul_vec(psi0.amps());
    let phased = CVec::new(
        coeffs
            .iter()
            .zip(eigenvalues)
            .map(|(c, &e)| c * C64::from_polar(1.0, -e * t))
            .collect(),
    );
    vectors.mul_vec(&phased)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::CoherentPrep;
    use std::f64::consts::PI;

    fn prep_state(theta: f64, phi: f64) -> ProductState {
        crate::spin::coherent_pair_state(&CoherentPrep::pair(theta, phi).unwrap()).unwrap()
    }

    #[test]
    fn delta0_examples() {
        assert!((CavityParams::new(1.0, 10.0, 1.0, 0.0).unwrap().delta0() - 10.0 / 101.0).abs() < 1e-15);
        assert_eq!(CavityParams::new(0.0, 5.0, 1.0, 0.0).unwrap().delta0(), 0.0);
        assert!((CavityParams::new(2.0, -10.0, 1.0, 0.0).unwrap().delta0() + 40.0 / 101.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_cavity_is_rejected() {
        assert!(matches!(
            CavityParams::new(1.0, 0.0, 0.0, 0.0),
            Err(DynamicsError::DegenerateCavity)
        ));
        assert!(matches!(
            CavityParams::new(1.0, 10.0, 1.0, -0.5),
            Err(DynamicsError::NegativeThermalOccupation(_))
        ));
    }

    #[test]
    fn dispersive_flag_tracks_the_inequality() {
        assert!(CavityParams::new(1.0, 100.0, 0.0, 0.0).unwrap().is_dispersive());
        assert!(!CavityParams::new(1.0, 1.0, 1.0, 0.0).unwrap().is_dispersive());
    }

    #[test]
    fn spectrum_without_thermal_term() {
        // J^2 - Jz^2 on the pair: singlet 0, |1,+-1> at 1, |1,0> at 2
        let h = EffectiveH::with_delta0(0.7, 0.0);
        let eig = herm_eig(h.matrix()).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip([0.0, 0.7, 0.7, 1.4]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn thermal_term_shifts_stretched_state() {
        // <++|H|++> = Delta0 (1 + 2 nbar)
        let h = EffectiveH::with_delta0(1.0, 1.0);
        assert!((h.matrix().get(0, 0).re - 3.0).abs() < 1e-13);
    }

    #[test]
    fn hamiltonian_commutes_with_collective_charges() {
        let h = EffectiveH::with_delta0(1.3, 0.8);
        let (jx, jy, jz) = pair_collective_ops();
        let jsq = jx.mul(&jx).add(&jy.mul(&jy)).add(&jz.mul(&jz));
        for op in [jsq, jz] {
            let comm = h.matrix().mul(&op).sub(&op.mul(h.matrix()));
            assert!(comm.max_abs_diff(&CMat::zeros(4, 4)) < 1e-12);
        }
        assert!(h.matrix().hermiticity_defect() < 1e-15);
    }

    #[test]
    fn zero_time_is_identity() {
        let psi0 = prep_state(1.1, 0.4);
        let h = EffectiveH::with_delta0(1.0, 0.0);
        assert!(evolve(&psi0, &h, 0.0).amps().max_abs_diff(psi0.amps()) < 1e-14);
    }

    #[test]
    fn equator_state_at_tau_pi() {
        let h = EffectiveH::with_delta0(1.0, 0.0);
        let psi = evolve(&prep_state(PI / 2.0, 0.0), &h, PI);
        let expect = CVec::from_reals(&[-0.5, 0.5, 0.5, -0.5]);
        assert!(psi.amps().max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn matches_literal_time_evolved_amplitudes() {
        // (e^{-i tau}, chi e^{-2i tau}, chi e^{-2i tau}, chi^2 e^{-i tau})/(1+chi^2)
        let (theta, tau) = (PI / 3.0, 0.83);
        let chi = (theta / 2.0).tan();
        let n = 1.0 / (1.0 + chi * chi);
        let expect = CVec::new(vec![
            C64::from_polar(n, -tau),
            C64::from_polar(n * chi, -2.0 * tau),
            C64::from_polar(n * chi, -2.0 * tau),
            C64::from_polar(n * chi * chi, -tau),
        ]);
        let h = EffectiveH::with_delta0(1.0, 0.0);
        let psi = evolve(&prep_state(theta, 0.0), &h, tau);
        assert!(psi.amps().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn evolution_composes() {
        let h = EffectiveH::with_delta0(1.0, 0.3);
        let psi0 = prep_state(2.0, 5.1);
        let once = evolve(&psi0, &h, 1.7);
        let twice = evolve(&evolve(&psi0, &h, 0.9), &h, 0.8);
        assert!(once.amps().max_abs_diff(twice.amps()) < 1e-13);
    }

    #[test]
    fn only_delta0_matters() {
        // different (g, delta, k) with identical Delta0 = 1 give identical H
        let a = CavityParams::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let b = CavityParams::new(2.0, 4.0, 0.0, 0.0).unwrap();
        assert_eq!(a.delta0(), 1.0);
        assert_eq!(b.delta0(), 1.0);
        let psi0 = prep_state(0.9, 0.2);
        let pa = evolve(&psi0, &effective_hamiltonian(&a, false), 2.3);
        let pb = evolve(&psi0, &effective_hamiltonian(&b, false), 2.3);
        assert!(pa.amps().max_abs_diff(pb.amps()) < 1e-14);
    }

    #[test]
    fn scan_matches_elementwise_evolution() {
        let h = EffectiveH::with_delta0(1.0, 0.0);
        let psi0 = prep_state(1.3, 0.0);
        let grid: Vec<f64> = (0..40).map(|k| k as f64 * 0.15).collect();
        let scanned = scan_times(&psi0, &h, &grid).unwrap();
        for (psi, &t) in scanned.iter().zip(&grid) {
            assert!(psi.amps().max_abs_diff(evolve(&psi0, &h, t).amps()) < 1e-13);
            assert!((psi.amps().norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn empty_grid_is_rejected() {
        let h = EffectiveH::with_delta0(1.0, 0.0);
        let psi0 = prep_state(1.3, 0.0);
        assert!(matches!(scan_times(&psi0, &h, &[]), Err(DynamicsError::EmptyGrid)));
    }
}

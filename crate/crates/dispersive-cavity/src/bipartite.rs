//! Reduced density matrices and bipartite entanglement measures.
//!
//! For the pure two-atom states produced by the cavity evolution the
//! entanglement entropy has a closed form: the reduced state of either atom
//! is rho = (1 + u.sigma)/2 with |u| = sqrt(1 - sin^2(Delta0 t) sin^4(theta)),
//! so its eigenvalues are (1 +- |u|)/2 and the entropy (in bits) is the
//! binary entropy of either. Concurrence C = sqrt(1 - |u|^2) and the
//! entanglement of formation F(C) = H2((1 + sqrt(1 - C^2))/2) reproduce the
//! same number, which this module exploits as a cross-check rather than a
//! shortcut.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::dynamics::{evolve, EffectiveH};
use crate::numerics::{herm_eig_with, kron, CMat, Tolerances};
use crate::spin::{
    coherent_pair_state, sigma_x, sigma_y, sigma_z, CoherentPrep, ProductState, SpinError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BipartiteError {
    /// Input is not a valid density matrix (explanation attached).
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    /// Probability-like argument outside [0, 1].
    #[error("argument {0} outside [0, 1]")]
    OutOfRange(f64),
}

pub type BipartiteResult<T> = Result<T, BipartiteError>;

/// Validated density matrix: Hermitian, unit trace, positive semidefinite,
/// all within the construction tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
}

impl DensityMatrix {
    pub fn new(mat: CMat) -> BipartiteResult<Self> {
        Self::with_tol(mat, &Tolerances::default())
    }

    pub fn with_tol(mat: CMat, tol: &Tolerances) -> BipartiteResult<Self> {
        if !mat.is_square() {
            return Err(BipartiteError::InvalidDensity(format!(
                "{}x{} is not square",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol.atol {
            return Err(BipartiteError::InvalidDensity(format!(
                "hermiticity defect {defect:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol.atol || tr.im.abs() > tol.atol {
            return Err(BipartiteError::InvalidDensity(format!("trace {tr} != 1")));
        }
        let eig = herm_eig_with(&mat, tol).expect("hermiticity was just checked");
        if let Some(&low) = eig.eigenvalues.first() {
            if low < -tol.atol {
                return Err(BipartiteError::InvalidDensity(format!(
                    "negative eigenvalue {low:.3e}"
                )));
            }
        }
        Ok(Self { mat })
    }

    /// Projector |psi><psi| of a pure two-atom state.
    pub fn from_pure(psi: &ProductState) -> Self {
        let a = psi.amps();
        let mut mat = CMat::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                mat.set(i, j, a[i] * a[j].conj());
            }
        }
        Self { mat }
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Tr(rho^2), real for Hermitian input.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum += self.mat.get(i, j).norm_sqr();
            }
        }
        sum
    }
}

pub fn density(psi: &ProductState) -> DensityMatrix {
    DensityMatrix::from_pure(psi)
}

/// Which atom survives the partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    A,
    B,
}

/// Trace out one atom of the 4x4 two-atom state; index (a, b) = 2a + b.
pub fn partial_trace(rho: &DensityMatrix, keep: Atom) -> BipartiteResult<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(BipartiteError::InvalidDensity(format!(
            "partial trace needs the two-atom 4x4 state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let mut out = CMat::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut sum = C64::new(0.0, 0.0);
            for s in 0..2 {
                sum += match keep {
                    Atom::A => m.get(2 * i + s, 2 * j + s),
                    Atom::B => m.get(2 * s + i, 2 * s + j),
                };
            }
            out.set(i, j, sum);
        }
    }
    DensityMatrix::new(out)
}

/// Pauli expansion rho = (1 x 1 + u.sigma x 1 + 1 x v.sigma
/// + sum beta_ij sigma_i x sigma_j)/4.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochDecomposition {
    pub u: [f64; 3],
    pub v: [f64; 3],
    pub beta: [[f64; 3]; 3],
}

impl BlochDecomposition {
    pub fn u_mag(&self) -> f64 {
        self.u.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn v_mag(&self) -> f64 {
        self.v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Rebuild the 4x4 matrix from the coefficients.
    pub fn reconstruct(&self) -> CMat {
        let paulis = [sigma_x(), sigma_y(), sigma_z()];
        let i2 = CMat::identity(2);
        let mut m = CMat::identity(4);
        for (i, p) in paulis.iter().enumerate() {
            m = m.add(&kron(p, &i2).scale(C64::new(self.u[i], 0.0)));
            m = m.add(&kron(&i2, p).scale(C64::new(self.v[i], 0.0)));
            for (j, q) in paulis.iter().enumerate() {
                m = m.add(&kron(p, q).scale(C64::new(self.beta[i][j], 0.0)));
            }
        }
        m.scale(C64::new(0.25, 0.0))
    }
}

pub fn bloch_decompose(rho: &DensityMatrix) -> BipartiteResult<BlochDecomposition> {
    if rho.dim() != 4 {
        return Err(BipartiteError::InvalidDensity(format!(
            "Bloch decomposition needs the two-atom 4x4 state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let paulis = [sigma_x(), sigma_y(), sigma_z()];
    let i2 = CMat::identity(2);
    let mut out = BlochDecomposition { u: [0.0; 3], v: [0.0; 3], beta: [[0.0; 3]; 3] };
    for (i, p) in paulis.iter().enumerate() {
        out.u[i] = rho.matrix().mul(&kron(p, &i2)).trace().re;
        out.v[i] = rho.matrix().mul(&kron(&i2, p)).trace().re;
        for (j, q) in paulis.iter().enumerate() {
            out.beta[i][j] = rho.matrix().mul(&kron(p, q)).trace().re;
        }
    }
    Ok(out)
}

/// Von Neumann entropy -Tr(rho log2 rho) in bits. Eigenvalues within the
/// tolerance below 0 (or above 1) are clamped; anything worse is an error.
pub fn entropy_numeric(rho: &DensityMatrix) -> BipartiteResult<f64> {
    let tol = Tolerances::default();
    let eig = herm_eig_with(rho.matrix(), &tol).expect("density matrices are Hermitian");
    let mut entropy = 0.0;
    for &l in &eig.eigenvalues {
        if l < -tol.atol || l > 1.0 + tol.atol {
            return Err(BipartiteError::InvalidDensity(format!(
                "eigenvalue {l:.3e} outside [0, 1]"
            )));
        }
        let l = l.clamp(0.0, 1.0);
        if l > 0.0 {
            entropy -= l * l.log2();
        }
    }
    Ok(entropy)
}

/// H2(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
pub fn binary_entropy(x: f64) -> BipartiteResult<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(BipartiteError::OutOfRange(x));
    }
    let mut h = 0.0;
    for l in [x, 1.0 - x] {
        if l > 0.0 {
            h -= l * l.log2();
        }
    }
    Ok(h)
}

/// Concurrence of a pure two-qubit state, computed along both routes
/// C = sqrt(2(1 - Tr rho_A^2)) and C = sqrt(1 - |u|^2) and cross-checked.
pub fn concurrence_pure(psi: &ProductState) -> f64 {
    let rho = density(psi);
    let rho_a = partial_trace(&rho, Atom::A).expect("pure-state reduction is valid");
    let from_purity = (2.0 * (1.0 - rho_a.purity())).max(0.0).sqrt();
    let u_mag = bloch_decompose(&rho).expect("two-atom state").u_mag();
    let from_bloch = (1.0 - u_mag * u_mag).max(0.0).sqrt();
    // the squared quantities agree to machine precision everywhere; the
    // square root amplifies that error without bound as C -> 0, so the
    // direct comparison only applies away from zero
    let sq_gap = (from_purity * from_purity - from_bloch * from_bloch).abs();
    assert!(sq_gap <= 1e-12, "concurrence routes diverged: {sq_gap:.3e}");
    if from_purity + from_bloch > 1e-4 {
        let gap = (from_purity - from_bloch).abs();
        assert!(gap <= 1e-10, "concurrence routes diverged: {gap:.3e}");
    }
    from_purity.min(1.0)
}

/// Entanglement of formation F(C) = H2((1 + sqrt(1 - C^2))/2).
pub fn eof(c: f64) -> BipartiteResult<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(BipartiteError::OutOfRange(c));
    }
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    binary_entropy(x)
}

/// |<J_1>| = (1/2) sqrt(1 - sin^2(Delta0 t) sin^4 theta).
pub fn mean_spin_mag_closed(theta: f64, delta0_t: f64) -> f64 {
    let s = delta0_t.sin() * theta.sin() * theta.sin();
    0.5 * (1.0 - s * s).max(0.0).sqrt()
}

/// Closed-form entanglement entropy in bits: the binary entropy of
/// (1 + 2|<J_1>|)/2.
pub fn entropy_closed(theta: f64, delta0_t: f64) -> f64 {
    let u = 2.0 * mean_spin_mag_closed(theta, delta0_t);
    binary_entropy(0.5 * (1.0 + u.min(1.0))).expect("argument is within [1/2, 1]")
}

/// Product-basis occupation probabilities of the evolved state; time drops
/// out because each basis amplitude only picks up a phase.
pub fn probabilities(theta: f64) -> [f64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    let p_mid = (s * c).powi(2);
    [c.powi(4), p_mid, p_mid, s.powi(4)]
}

/// Times (2n+1) pi/2 for n = 0..=n_max, where the entropy peaks for every
/// theta.
pub fn max_entanglement_times(n_max: u32) -> Vec<f64> {
    (0..=n_max)
        .map(|n| (2.0 * n as f64 + 1.0) * std::f64::consts::FRAC_PI_2)
        .collect()
}

/// Entanglement measures of one evolved state, numeric pipeline and closed
/// forms side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub entropy_numeric: f64,
    pub entropy_closed: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub mean_spin_mag: f64,
    pub probabilities: [f64; 4],
}

/// Full entanglement pipeline at one parameter point. Time evolution runs
/// with Delta0 = 1, so `delta0_t` is the dimensionless time directly.
pub fn entanglement_report(
    theta: f64,
    phi: f64,
    delta0_t: f64,
    nbar: f64,
) -> Result<EntanglementReport, SpinError> {
    let prep = CoherentPrep::pair(theta, phi)?;
    let psi0 = coherent_pair_state(&prep)?;
    let h = EffectiveH::with_delta0(1.0, nbar);
    let psi = evolve(&psi0, &h, delta0_t);
    let rho = density(&psi);
    let rho_a = partial_trace(&rho, Atom::A).expect("pure-state reduction is valid");
    let entropy = entropy_numeric(&rho_a).expect("reduction is a valid density matrix");
    let u_mag = bloch_decompose(&rho).expect("two-atom state").u_mag();
    let concurrence = concurrence_pure(&psi);
    let probs = [
        psi.amp(0).norm_sqr(),
        psi.amp(1).norm_sqr(),
        psi.amp(2).norm_sqr(),
        psi.amp(3).norm_sqr(),
    ];
    Ok(EntanglementReport {
        entropy_numeric: entropy,
        entropy_closed: entropy_closed(theta, delta0_t),
        concurrence,
        eof: eof(concurrence).expect("concurrence is clamped to [0, 1]"),
        mean_spin_mag: 0.5 * u_mag,
        probabilities: probs,
    })
}

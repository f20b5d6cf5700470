//! Collective mean spin, rotation into the mean-spin frame, and the spin
//! squeezing parameters.
//!
//! The frame {x', y', z'} puts z' along the mean spin <J>. The transverse
//! orientation is pinned deterministically: x', y' are the images of x, y
//! under R_z(phi_m) R_y(theta_m), which reduces to the identity when <J>
//! already points along +z and makes the parameters invariant under the
//! thermal z-rotation (the frame co-rotates with phi_m). The convention-free
//! quantity Smin, the squeezing parameter minimized over all transverse
//! directions, is reported alongside.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::bipartite::{density, entropy_numeric, partial_trace, Atom};
use crate::dynamics::{effective_hamiltonian, scan_times, CavityParams};
use crate::numerics::{expectation, kron, CMat};
use crate::spin::{coherent_pair_state, pair_collective_ops, CoherentPrep, ProductState};

/// Mean-spin magnitude below which the rotated frame (and any squeezing
/// parameter, which divides by sqrt of the magnitude) is undefined.
pub const FRAME_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SqueezingError {
    /// Mean spin too short to define the rotated frame.
    #[error("mean spin magnitude {0:.3e} is below the frame threshold 1e-9")]
    UndefinedFrame(f64),
    /// A scan needs at least one grid point.
    #[error("time grid is empty")]
    EmptyGrid,
}

pub type SqueezingResult<T> = Result<T, SqueezingError>;

/// Collective mean spin <J> with its spherical direction.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanSpin {
    pub vector: [f64; 3],
    pub magnitude: f64,
    /// Polar angle from +z.
    pub theta_m: f64,
    /// Azimuth in [0, 2pi); pinned to 0 on the z axis.
    pub phi_m: f64,
}

/// Squeezing parameters in the mean-spin frame; only meaningful when the
/// frame itself is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingValues {
    /// Standard deviation of J_x'.
    pub djx_prime: f64,
    /// Standard deviation of J_y'.
    pub djy_prime: f64,
    /// sqrt(2) dJ_x' / sqrt|<J>|; < 1 means squeezing along x'.
    pub sx: f64,
    /// sqrt(2) dJ_y' / sqrt|<J>|.
    pub sy: f64,
    /// Minimum of the squeezing parameter over all transverse directions.
    pub smin: f64,
    /// dJ_x' dJ_y', bounded below by |<J>|/2.
    pub uncertainty_product: f64,
    /// |<J>|/2, the Heisenberg floor of the product.
    pub bound: f64,
}

/// Mean spin plus the frame-dependent squeezing numbers. `values` is `None`
/// exactly when the mean spin is below [`FRAME_THRESHOLD`].
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingReport {
    pub mean_spin: MeanSpin,
    pub values: Option<SqueezingValues>,
}

impl SqueezingReport {
    pub fn defined(&self) -> bool {
        self.values.is_some()
    }
}

/// One instant of a joint squeezing / entanglement sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub delta0_t: f64,
    pub squeezing: SqueezingReport,
    pub entropy: f64,
}

/// Expectation values of the collective spin components.
pub fn mean_spin(psi: &ProductState) -> MeanSpin {
    let (jx, jy, jz) = pair_collective_ops();
    let state = psi.amps();
    let v = [
        expectation(state, &jx).expect("4x4 collective operator").re,
        expectation(state, &jy).expect("4x4 collective operator").re,
        expectation(state, &jz).expect("4x4 collective operator").re,
    ];
    let magnitude = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let (theta_m, phi_m) = if magnitude < 1e-15 {
        (0.0, 0.0)
    } else {
        let theta_m = (v[2] / magnitude).clamp(-1.0, 1.0).acos();
        let phi_m = if theta_m.sin() < 1e-12 {
            0.0
        } else {
            v[1].atan2(v[0]).rem_euclid(std::f64::consts::TAU)
        };
        (theta_m, phi_m)
    };
    MeanSpin { vector: v, magnitude, theta_m, phi_m }
}

/// Single-atom rotation exp(+i theta sigma_y / 2) exp(+i phi sigma_z / 2).
fn single_frame_rotation(theta: f64, phi: f64) -> CMat {
    let (s, c) = (theta / 2.0).sin_cos();
    let ry = CMat::from_reals(&[&[c, s], &[-s, c]]);
    let rz = CMat::from_rows(&[
        &[C64::from_polar(1.0, phi / 2.0), C64::new(0.0, 0.0)],
        &[C64::new(0.0, 0.0), C64::from_polar(1.0, -phi / 2.0)],
    ]);
    ry.mul(&rz)
}

/// Collective rotation taking the mean-spin direction onto +z.
fn frame_rotation(ms: &MeanSpin) -> CMat {
    let u1 = single_frame_rotation(ms.theta_m, ms.phi_m);
    kron(&u1, &u1)
}

/// Rotate the state so its mean spin lands on (0, 0, |<J>|).
pub fn rotate_to_mean_frame(psi: &ProductState, ms: &MeanSpin) -> SqueezingResult<ProductState> {
    if ms.magnitude < FRAME_THRESHOLD {
        return Err(SqueezingError::UndefinedFrame(ms.magnitude));
    }
    let rotated = frame_rotation(ms).mul_vec(psi.amps());
    Ok(ProductState::new(rotated).expect("rotation is unitary"))
}

/// Squeezing parameters of one state; `values` is `None` when the mean spin
/// is too short to define the frame.
pub fn squeezing_params(psi: &ProductState) -> SqueezingReport {
    let ms = mean_spin(psi);
    if ms.magnitude < FRAME_THRESHOLD {
        return SqueezingReport { mean_spin: ms, values: None };
    }
    let rotated = rotate_to_mean_frame(psi, &ms).expect("threshold was just checked");
    let state = rotated.amps();
    let (jx, jy, _) = pair_collective_ops();
    let vx = jx.mul_vec(state);
    let vy = jy.mul_vec(state);
    let mx = state.dot(&vx).re;
    let my = state.dot(&vy).re;
    let vxx = vx.norm_sqr() - mx * mx;
    let vyy = vy.norm_sqr() - my * my;
    // Re<Jx Jy> is already the symmetrized cross moment for Hermitian ops
    let cxy = vx.dot(&vy).re - mx * my;
    let djx_prime = vxx.max(0.0).sqrt();
    let djy_prime = vyy.max(0.0).sqrt();
    let root_mag = ms.magnitude.sqrt();
    let sx = std::f64::consts::SQRT_2 * djx_prime / root_mag;
    let sy = std::f64::consts::SQRT_2 * djy_prime / root_mag;
    // smallest eigenvalue of the 2x2 transverse covariance block, i.e. the
    // variance minimized over all directions alpha in the x'y' plane
    let lambda_min =
        0.5 * (vxx + vyy) - 0.5 * ((vxx - vyy).powi(2) + 4.0 * cxy * cxy).sqrt();
    let smin = (2.0 * lambda_min.max(0.0) / ms.magnitude).sqrt();
    let values = SqueezingValues {
        djx_prime,
        djy_prime,
        sx,
        sy,
        smin,
        uncertainty_product: djx_prime * djy_prime,
        bound: 0.5 * ms.magnitude,
    };
    SqueezingReport { mean_spin: ms, values: Some(values) }
}

/// Sweep squeezing and entanglement entropy over a grid of times. Times are
/// physical; each output point carries the dimensionless Delta0 t.
pub fn squeezing_scan(
    prep: &CoherentPrep,
    params: &CavityParams,
    t_grid: &[f64],
) -> SqueezingResult<Vec<ScanPoint>> {
    if t_grid.is_empty() {
        return Err(SqueezingError::EmptyGrid);
    }
    let psi0 = coherent_pair_state(prep).expect("squeezing scan needs the two-atom pair (j = 1)");
    let h = effective_hamiltonian(params, true);
    let states = scan_times(&psi0, &h, t_grid).expect("grid was just checked nonempty");
    let delta0 = params.delta0();
    Ok(t_grid
        .iter()
        .zip(states)
        .map(|(&t, psi)| {
            let rho_a = partial_trace(&density(&psi), Atom::A).expect("pure-state reduction");
            let entropy = entropy_numeric(&rho_a).expect("valid reduction");
            ScanPoint { delta0_t: delta0 * t, squeezing: squeezing_params(&psi), entropy }
        })
        .collect())
}

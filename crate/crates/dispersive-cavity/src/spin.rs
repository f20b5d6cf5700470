//! Collective spin operators, atomic coherent states, and the maps between
//! the Dicke basis and the two-atom product basis.
//!
//! Conventions: hbar = 1; Dicke basis |j, m> ordered by m descending
//! (m = j, j-1, ..., -j); the product basis over two spin-1/2 atoms is
//! lexicographic with m = +1/2 first, i.e. |++>, |+->, |-+>, |-->.
//! A coherent preparation (theta, phi) points every atom along the Bloch
//! direction (sin theta cos phi, sin theta sin phi, cos theta).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::numerics::{kron, CMat, CVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinError {
    /// j must be a half-integer with 2j >= 1.
    #[error("invalid spin quantum number j = {0}")]
    InvalidJ(f64),
    /// Operation defined only for a specific j (the two-atom maps need j = 1).
    #[error("wrong spin sector: expected j = {expected}, got j = {got}")]
    WrongJ { expected: f64, got: f64 },
    /// Polar angle outside [0, pi].
    #[error("theta = {0} outside [0, pi]")]
    ThetaOutOfRange(f64),
    /// State vector has the wrong dimension for its container.
    #[error("state dimension {got}, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    /// Norm deviates from 1 beyond tolerance.
    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    Unnormalized(f64),
}

pub type SpinResult<T> = Result<T, SpinError>;

/// Total spin quantum number, stored as 2j so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    pub const HALF: SpinJ = SpinJ { twice_j: 1 };
    pub const ONE: SpinJ = SpinJ { twice_j: 2 };

    pub fn new(j: f64) -> SpinResult<Self> {
        let twice = 2.0 * j;
        if !(twice.is_finite() && twice >= 1.0 && (twice - twice.round()).abs() < 1e-9) {
            return Err(SpinError::InvalidJ(j));
        }
        Ok(Self { twice_j: twice.round() as u32 })
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    /// Hilbert-space dimension 2j + 1.
    pub fn dim(&self) -> usize {
        self.twice_j as usize + 1
    }

    /// Magnetic quantum number at basis index n (m descending).
    pub fn m(&self, n: usize) -> f64 {
        self.j() - n as f64
    }
}

pub fn sigma_x() -> CMat {
    CMat::from_reals(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn sigma_y() -> CMat {
    CMat::from_rows(&[
        &[C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        &[C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
}

pub fn sigma_z() -> CMat {
    CMat::from_reals(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Angular-momentum operators in the Dicke basis of a single spin-j.
#[derive(Debug, Clone)]
pub struct CollectiveOps {
    pub jx: CMat,
    pub jy: CMat,
    pub jz: CMat,
    pub jplus: CMat,
    pub jminus: CMat,
    pub jsq: CMat,
}

pub fn collective_ops(j: SpinJ) -> CollectiveOps {
    let dim = j.dim();
    let jv = j.j();
    let mut jz = CMat::zeros(dim, dim);
    let mut jplus = CMat::zeros(dim, dim);
    let mut jminus = CMat::zeros(dim, dim);
    for n in 0..dim {
        let m = j.m(n);
        jz.set(n, n, C64::new(m, 0.0));
        if n > 0 {
            // J+|j,m> = sqrt((j-m)(j+m+1)) |j,m+1>
            jplus.set(n - 1, n, C64::new(((jv - m) * (jv + m + 1.0)).sqrt(), 0.0));
        }
        if n + 1 < dim {
            // J-|j,m> = sqrt((j+m)(j-m+1)) |j,m-1>
            jminus.set(n + 1, n, C64::new(((jv + m) * (jv - m + 1.0)).sqrt(), 0.0));
        }
    }
    let jx = jplus.add(&jminus).scale(C64::new(0.5, 0.0));
    let jy = jplus.sub(&jminus).scale(C64::new(0.0, -0.5));
    let jsq = CMat::identity(dim).scale(C64::new(jv * (jv + 1.0), 0.0));
    CollectiveOps { jx, jy, jz, jplus, jminus, jsq }
}

/// Per-atom spin operators embedded in the 4-dimensional product space:
/// J1a = sigma_a/2 on atom 1, J2a on atom 2.
#[derive(Debug, Clone)]
pub struct SingleAtomOps {
    pub j1x: CMat,
    pub j1y: CMat,
    pub j1z: CMat,
    pub j2x: CMat,
    pub j2y: CMat,
    pub j2z: CMat,
}

pub fn single_atom_ops() -> SingleAtomOps {
    let half = C64::new(0.5, 0.0);
    let i2 = CMat::identity(2);
    SingleAtomOps {
        j1x: kron(&sigma_x().scale(half), &i2),
        j1y: kron(&sigma_y().scale(half), &i2),
        j1z: kron(&sigma_z().scale(half), &i2),
        j2x: kron(&i2, &sigma_x().scale(half)),
        j2y: kron(&i2, &sigma_y().scale(half)),
        j2z: kron(&i2, &sigma_z().scale(half)),
    }
}

/// Total-spin operators (Jx, Jy, Jz) = J1 + J2 on the product space.
pub fn pair_collective_ops() -> (CMat, CMat, CMat) {
    let ops = single_atom_ops();
    (ops.j1x.add(&ops.j2x), ops.j1y.add(&ops.j2y), ops.j1z.add(&ops.j2z))
}

/// Coherent-state preparation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPrep {
    j: SpinJ,
    theta: f64,
    phi: f64,
}

impl CoherentPrep {
    pub fn new(j: SpinJ, theta: f64, phi: f64) -> SpinResult<Self> {
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(SpinError::ThetaOutOfRange(theta));
        }
        Ok(Self { j, theta, phi: phi.rem_euclid(TAU) })
    }

    /// Two-atom case j = 1, the one used throughout the cavity problem.
    pub fn pair(theta: f64, phi: f64) -> SpinResult<Self> {
        Self::new(SpinJ::ONE, theta, phi)
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// State in the Dicke basis of a single spin-j.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    j: SpinJ,
    amps: CVec,
}

impl DickeState {
    pub fn new(j: SpinJ, amps: CVec) -> SpinResult<Self> {
        if amps.dim() != j.dim() {
            return Err(SpinError::WrongDimension { expected: j.dim(), got: amps.dim() });
        }
        let defect = (amps.norm() - 1.0).abs();
        if defect > 1e-12 {
            return Err(SpinError::Unnormalized(defect));
        }
        Ok(Self { j, amps })
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn amps(&self) -> &CVec {
        &self.amps
    }

    /// Amplitude on |j, m> with m = j - n.
    pub fn amp(&self, n: usize) -> C64 {
        self.amps[n]
    }
}

/// Normalized state of the two-atom product space |++>, |+->, |-+>, |-->.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    amps: CVec,
}

impl ProductState {
    pub fn new(amps: CVec) -> SpinResult<Self> {
        if amps.dim() != 4 {
            return Err(SpinError::WrongDimension { expected: 4, got: amps.dim() });
        }
        let defect = (amps.norm() - 1.0).abs();
        if defect > 1e-12 {
            return Err(SpinError::Unnormalized(defect));
        }
        Ok(Self { amps })
    }

    pub fn from_amplitudes(amps: [C64; 4]) -> SpinResult<Self> {
        Self::new(CVec::new(amps.to_vec()))
    }

    pub fn amps(&self) -> &CVec {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }
}

/// Atomic coherent state |j; theta, phi> in the Dicke basis.
///
/// Amplitudes are evaluated as sqrt(C(2j,n)) cos^(2j-n)(theta/2)
/// sin^n(theta/2) e^(i n phi), which is the (1+|chi|^2)^(-j) chi^n form with
/// the pole at theta = pi removed; theta = pi itself returns the all-lower
/// Dicke vector directly.
pub fn coherent_state(prep: &CoherentPrep) -> DickeState {
    let j = prep.j();
    let dim = j.dim();
    let tj = j.twice_j() as i32;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    if prep.theta() == PI {
        amps[dim - 1] = C64::from_polar(1.0, tj as f64 * prep.phi());
        return DickeState { j, amps: CVec::new(amps) };
    }
    let half = prep.theta() / 2.0;
    let (s, c) = half.sin_cos();
    let mut binom = 1.0f64;
    for (n, slot) in amps.iter_mut().enumerate() {
        if n > 0 {
            binom *= (tj - n as i32 + 1) as f64 / n as f64;
        }
        let mag = binom.sqrt() * c.powi(tj - n as i32) * s.powi(n as i32);
        *slot = C64::from_polar(mag, n as f64 * prep.phi());
    }
    DickeState::new(j, CVec::new(amps)).expect("closed-form amplitudes are normalized")
}

/// Isometry from the j = 1 triplet into the product basis:
/// |1,1> -> |++>, |1,0> -> (|+-> + |-+>)/sqrt(2), |1,-1> -> |-->.
pub fn dicke_to_product(state: &DickeState) -> SpinResult<ProductState> {
    if state.j() != SpinJ::ONE {
        return Err(SpinError::WrongJ { expected: 1.0, got: state.j().j() });
    }
    let shared = state.amp(1) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ProductState::new(CVec::new(vec![state.amp(0), shared, shared, state.amp(2)]))
}

/// Coherent preparation of the atom pair, already in the product basis.
pub fn coherent_pair_state(prep: &CoherentPrep) -> SpinResult<ProductState> {
    dicke_to_product(&coherent_state(prep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expectation;

    #[test]
    fn spin_j_rejects_non_half_integers() {
        assert!(matches!(SpinJ::new(0.3), Err(SpinError::InvalidJ(_))));
        assert!(matches!(SpinJ::new(0.0), Err(SpinError::InvalidJ(_))));
        assert_eq!(SpinJ::new(0.5).unwrap(), SpinJ::HALF);
        assert_eq!(SpinJ::new(1.0).unwrap(), SpinJ::ONE);
    }

    #[test]
    fn jz_is_diagonal_in_m() {
        let half = collective_ops(SpinJ::HALF);
        assert!((half.jz.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((half.jz.get(1, 1).re + 0.5).abs() < 1e-15);
        let one = collective_ops(SpinJ::ONE);
        for (n, want) in [(0, 1.0), (1, 0.0), (2, -1.0)] {
            assert!((one.jz.get(n, n).re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn jplus_superdiagonal_for_j_one() {
        let ops = collective_ops(SpinJ::ONE);
        let rt2 = 2.0f64.sqrt();
        assert!((ops.jplus.get(0, 1).re - rt2).abs() < 1e-15);
        assert!((ops.jplus.get(1, 2).re - rt2).abs() < 1e-15);
        assert!(ops.jplus.get(0, 2).norm() < 1e-15);
    }

    #[test]
    fn commutator_closes_for_j_three_halves() {
        let ops = collective_ops(SpinJ::new(1.5).unwrap());
        let comm = ops.jx.mul(&ops.jy).sub(&ops.jy.mul(&ops.jx));
        let expect = ops.jz.scale(C64::new(0.0, 1.0));
        assert!(comm.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn jsq_is_casimir() {
        let j = SpinJ::new(1.5).unwrap();
        let ops = collective_ops(j);
        let built = ops
            .jx
            .mul(&ops.jx)
            .add(&ops.jy.mul(&ops.jy))
            .add(&ops.jz.mul(&ops.jz));
        assert!(built.max_abs_diff(&ops.jsq) < 1e-14);
    }

    #[test]
    fn coherent_poles_are_exact() {
        let north = coherent_state(&CoherentPrep::pair(0.0, 0.0).unwrap());
        assert!(north.amp(0).re == 1.0 && north.amp(1).norm() == 0.0 && north.amp(2).norm() == 0.0);
        let south = coherent_state(&CoherentPrep::pair(PI, 0.0).unwrap());
        assert!(south.amp(2).re == 1.0 && south.amp(0).norm() == 0.0 && south.amp(1).norm() == 0.0);
    }

    #[test]
    fn coherent_equator_amplitudes() {
        let d = coherent_state(&CoherentPrep::pair(PI / 2.0, 0.0).unwrap());
        assert!((d.amp(0).re - 0.5).abs() < 1e-15);
        assert!((d.amp(1).re - 0.5 * 2.0f64.sqrt()).abs() < 1e-15);
        assert!((d.amp(2).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherent_at_pi_over_three() {
        // prefactor 3/4 against chi = tan(pi/6): (0.75, 0.75*sqrt(2/3), 0.25)
        let d = coherent_state(&CoherentPrep::pair(PI / 3.0, 0.0).unwrap());
        assert!((d.amp(0).re - 0.75).abs() < 1e-15);
        assert!((d.amp(1).re - 0.6123724356957945).abs() < 1e-15);
        assert!((d.amp(2).re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn coherent_phi_enters_as_phase_only() {
        let phi = 1.234;
        let with = coherent_state(&CoherentPrep::pair(PI / 2.0, phi).unwrap());
        let without = coherent_state(&CoherentPrep::pair(PI / 2.0, 0.0).unwrap());
        for n in 0..3 {
            let expect = without.amp(n) * C64::from_polar(1.0, n as f64 * phi);
            assert!((with.amp(n) - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn coherent_norm_for_larger_j() {
        let prep = CoherentPrep::new(SpinJ::new(2.5).unwrap(), 1.9, 4.2).unwrap();
        assert!((coherent_state(&prep).amps().norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn prep_rejects_theta_outside_range() {
        assert!(matches!(CoherentPrep::pair(-0.1, 0.0), Err(SpinError::ThetaOutOfRange(_))));
        assert!(matches!(CoherentPrep::pair(PI + 0.1, 0.0), Err(SpinError::ThetaOutOfRange(_))));
    }

    #[test]
    fn dicke_to_product_basis_images() {
        let j = SpinJ::ONE;
        let top = DickeState::new(j, CVec::from_reals(&[1.0, 0.0, 0.0])).unwrap();
        let mid = DickeState::new(j, CVec::from_reals(&[0.0, 1.0, 0.0])).unwrap();
        let bot = DickeState::new(j, CVec::from_reals(&[0.0, 0.0, 1.0])).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(dicke_to_product(&top)
            .unwrap()
            .amps()
            .max_abs_diff(&CVec::from_reals(&[1.0, 0.0, 0.0, 0.0]))
            < 1e-15);
        assert!(dicke_to_product(&mid)
            .unwrap()
            .amps()
            .max_abs_diff(&CVec::from_reals(&[0.0, r, r, 0.0]))
            < 1e-15);
        assert!(dicke_to_product(&bot)
            .unwrap()
            .amps()
            .max_abs_diff(&CVec::from_reals(&[0.0, 0.0, 0.0, 1.0]))
            < 1e-15);
    }

    #[test]
    fn dicke_to_product_rejects_other_sectors() {
        let half = DickeState::new(SpinJ::HALF, CVec::from_reals(&[1.0, 0.0])).unwrap();
        assert!(matches!(dicke_to_product(&half), Err(SpinError::WrongJ { .. })));
    }

    #[test]
    fn equator_coherent_state_is_uniform_product() {
        let p = coherent_pair_state(&CoherentPrep::pair(PI / 2.0, 0.0).unwrap()).unwrap();
        assert!(p.amps().max_abs_diff(&CVec::from_reals(&[0.5, 0.5, 0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn embedded_operators_match_triplet_sector() {
        // the isometry T intertwines J1 + J2 with the j = 1 Dicke operators
        let mut t = CMat::zeros(4, 3);
        let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        t.set(0, 0, C64::new(1.0, 0.0));
        t.set(1, 1, r);
        t.set(2, 1, r);
        t.set(3, 2, C64::new(1.0, 0.0));
        let (jx, jy, jz) = pair_collective_ops();
        let dicke = collective_ops(SpinJ::ONE);
        for (pair_op, dicke_op) in [(jx, dicke.jx), (jy, dicke.jy), (jz, dicke.jz)] {
            assert!(pair_op.mul(&t).max_abs_diff(&t.mul(&dicke_op)) < 1e-14);
        }
    }

    #[test]
    fn single_atom_z_on_up_up() {
        let ops = single_atom_ops();
        let up_up = CVec::from_reals(&[1.0, 0.0, 0.0, 0.0]);
        assert!((expectation(&up_up, &ops.j1z).unwrap().re - 0.5).abs() < 1e-15);
        assert!((expectation(&up_up, &ops.j2z).unwrap().re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherent_mean_spin_points_along_bloch_direction() {
        let (theta, phi) = (1.1, 2.3);
        let p = coherent_pair_state(&CoherentPrep::pair(theta, phi).unwrap()).unwrap();
        let (jx, jy, jz) = pair_collective_ops();
        let got = [
            expectation(p.amps(), &jx).unwrap().re,
            expectation(p.amps(), &jy).unwrap().re,
            expectation(p.amps(), &jz).unwrap().re,
        ];
        let want = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-13);
        }
    }

    #[test]
    fn per_atom_z_vanishes_on_equator() {
        let p = coherent_pair_state(&CoherentPrep::pair(PI / 2.0, 0.0).unwrap()).unwrap();
        let ops = single_atom_ops();
        assert!(expectation(p.amps(), &ops.j1z).unwrap().re.abs() < 1e-15);
    }
}

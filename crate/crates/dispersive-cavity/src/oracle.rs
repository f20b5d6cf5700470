//! Brute-force reference path for cross-validation.
//!
//! Everything here is rebuilt from the four product-basis amplitudes of the
//! evolved state and elementary definitions: explicitly summed reduced
//! matrices, the 2x2 eigenvalue formula (1 +- |u|)/2, four-term expectation
//! sums, and hand-unrolled per-atom rotations. None of it calls the
//! closed-form or operator machinery in the other modules; a cross-check
//! that shares code validates nothing.

use num_complex::Complex64 as C64;

use crate::numerics::CVec;
use crate::spin::ProductState;

/// Report of every quantity the library publishes, recomputed from first
/// principles. `squeezing` is `None` when the collective mean spin is too
/// short to define the rotated frame.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Entanglement entropy in bits.
    pub entropy: f64,
    /// Per-atom mean spin magnitude |<J_1>|.
    pub mean_spin_mag: f64,
    pub concurrence: f64,
    /// Product-basis occupation probabilities.
    pub probabilities: [f64; 4],
    /// (Sx, Sy) in the mean-spin frame.
    pub squeezing: Option<(f64, f64)>,
}

/// Time-evolved state written out literally: with chi = tan(theta/2) e^{i phi}
/// and tau = Delta0 t, the amplitudes are
/// (e^{-i tau}, chi e^{-2i tau}, chi e^{-2i tau}, chi^2 e^{-i tau}) / (1 + |chi|^2).
/// The chi parametrization has a pole at theta = pi; there the limit state
/// (0, 0, 0, e^{i(2 phi - tau)}) is returned.
pub fn oracle_state(theta: f64, phi: f64, delta0_t: f64) -> ProductState {
    let tau = delta0_t;
    let amps = if (theta - std::f64::consts::PI).abs() < 1e-12 {
        [
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::from_polar(1.0, 2.0 * phi - tau),
        ]
    } else {
        let chi = C64::from_polar((theta / 2.0).tan(), phi);
        let norm = 1.0 + chi.norm_sqr();
        let e1 = C64::from_polar(1.0, -tau);
        let e2 = C64::from_polar(1.0, -2.0 * tau);
        [e1 / norm, chi * e2 / norm, chi * e2 / norm, chi * chi * e1 / norm]
    };
    ProductState::new(CVec::new(amps.to_vec())).expect("literal amplitudes are normalized")
}

/// Everything recomputed from the raw amplitudes.
pub fn oracle_full(theta: f64, phi: f64, delta0_t: f64) -> OracleReport {
    let psi = oracle_state(theta, phi, delta0_t);
    let a = [psi.amp(0), psi.amp(1), psi.amp(2), psi.amp(3)];

    let probabilities =
        [a[0].norm_sqr(), a[1].norm_sqr(), a[2].norm_sqr(), a[3].norm_sqr()];

    // reduced matrix of atom A, index (atom_a, atom_b) = 2a + b
    let r00 = a[0].norm_sqr() + a[1].norm_sqr();
    let r11 = a[2].norm_sqr() + a[3].norm_sqr();
    let r01 = a[0] * a[2].conj() + a[1] * a[3].conj();

    // Bloch vector of atom A from rho = (1 + u.sigma)/2
    let w = a[0].conj() * a[2] + a[1].conj() * a[3];
    let u = [2.0 * w.re, 2.0 * w.im, r00 - r11];
    let u_mag = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();

    // 2x2 spectrum is (1 +- |u|)/2; clamp roundoff past [0, 1]
    let mut entropy = 0.0;
    for l in [(0.5 * (1.0 + u_mag)).min(1.0), (0.5 * (1.0 - u_mag)).max(0.0)] {
        if l > 0.0 {
            entropy -= l * l.log2();
        }
    }

    let purity = r00 * r00 + r11 * r11 + 2.0 * r01.norm_sqr();
    let concurrence = (2.0 * (1.0 - purity)).max(0.0).sqrt().min(1.0);

    OracleReport {
        entropy,
        mean_spin_mag: 0.5 * u_mag,
        concurrence,
        probabilities,
        squeezing: oracle_squeezing(&a),
    }
}

/// Apply sigma_x to one atom of the 4-amplitude state.
fn apply_sx(b: &[C64; 4], atom: usize) -> [C64; 4] {
    let mut out = [C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            out[2 * i + j] = if atom == 0 { b[2 * (1 - i) + j] } else { b[2 * i + (1 - j)] };
        }
    }
    out
}

/// Apply sigma_y to one atom: sigma_y |0> = i |1>, sigma_y |1> = -i |0>.
fn apply_sy(b: &[C64; 4], atom: usize) -> [C64; 4] {
    let mut out = [C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            // amplitude landing on target index 1 came from 0 with factor i,
            // the one landing on 0 came from 1 with factor -i
            let (src_i, src_j, target) = if atom == 0 { (1 - i, j, i) } else { (i, 1 - j, j) };
            let factor = if target == 1 { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) };
            out[2 * i + j] = factor * b[2 * src_i + src_j];
        }
    }
    out
}

/// Apply sigma_z to one atom.
fn apply_sz(b: &[C64; 4], atom: usize) -> [C64; 4] {
    let mut out = [C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            let sign = if (if atom == 0 { i } else { j }) == 0 { 1.0 } else { -1.0 };
            out[2 * i + j] = sign * b[2 * i + j];
        }
    }
    out
}

/// J_k psi as an explicit 4-term combination, J_k = (sigma_k x 1 + 1 x sigma_k)/2.
fn apply_collective(b: &[C64; 4], apply: fn(&[C64; 4], usize) -> [C64; 4]) -> [C64; 4] {
    let first = apply(b, 0);
    let second = apply(b, 1);
    let mut out = [C64::new(0.0, 0.0); 4];
    for k in 0..4 {
        out[k] = 0.5 * (first[k] + second[k]);
    }
    out
}

fn inner(x: &[C64; 4], y: &[C64; 4]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Squeezing parameters from scratch: collective mean spin by four-term sums,
/// explicit per-atom frame rotation, variances from rotated amplitudes.
fn oracle_squeezing(a: &[C64; 4]) -> Option<(f64, f64)> {
    let jx = apply_collective(a, apply_sx);
    let jy = apply_collective(a, apply_sy);
    let jz = apply_collective(a, apply_sz);
    let m = [inner(a, &jx).re, inner(a, &jy).re, inner(a, &jz).re];
    let mag = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
    if mag < 1e-9 {
        return None;
    }
    let theta_m = (m[2] / mag).clamp(-1.0, 1.0).acos();
    let phi_m = if theta_m.sin() < 1e-12 { 0.0 } else { m[1].atan2(m[0]) };

    // one-atom rotation exp(+i theta_m sigma_y/2) exp(+i phi_m sigma_z/2)
    let (s, c) = (theta_m / 2.0).sin_cos();
    let ep = C64::from_polar(1.0, phi_m / 2.0);
    let em = C64::from_polar(1.0, -phi_m / 2.0);
    let u1 = [[c * ep, s * em], [-s * ep, c * em]];

    let mut b = [C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    b[2 * i + j] += u1[i][k] * u1[j][l] * a[2 * k + l];
                }
            }
        }
    }

    let bx = apply_collective(&b, apply_sx);
    let by = apply_collective(&b, apply_sy);
    let mx = inner(&b, &bx).re;
    let my = inner(&b, &by).re;
    let vxx = inner(&bx, &bx).re - mx * mx;
    let vyy = inner(&by, &by).re - my * my;
    let sx = (2.0 * vxx.max(0.0) / mag).sqrt();
    let sy = (2.0 * vyy.max(0.0) / mag).sqrt();
    Some((sx, sy))
}

//! Data products behind the CLI: sweep tables as CSV (or simple SVG line
//! plots) with deterministic, 12-significant-digit serialization.
//!
//! The time axis of every product is the dimensionless Delta0 t. When
//! physical cavity parameters are supplied the derived Delta0 is recorded in
//! a comment line instead of rescaling the axis.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use thiserror::Error;

use crate::bipartite::{entanglement_report, entropy_closed, probabilities};
use crate::dynamics::{evolve, CavityParams, DynamicsError, EffectiveH};
use crate::spin::SpinError;
use crate::squeezing::{squeezing_params, squeezing_scan, ScanPoint};
use crate::CoherentPrep;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("steps must be at least 2, got {0}")]
    TooFewSteps(usize),
    #[error("empty time range: tmin {0} is not below tmax {1}")]
    EmptyTimeRange(f64, f64),
    #[error("nbar must be nonnegative, got {0}")]
    NegativeOccupation(f64),
}

#[derive(Debug, Error)]
pub enum FigureError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Prep(#[from] SpinError),
    #[error(transparent)]
    Cavity(#[from] DynamicsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
}

/// Sweep parameters shared by the figure commands. `cavity` holds (g, delta,
/// k) when physical parameters were supplied; otherwise Delta0 = 1 and the
/// time grid is Delta0 t directly.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub theta: f64,
    pub phi: f64,
    pub cavity: Option<(f64, f64, f64)>,
    pub nbar: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.steps < 2 {
            return Err(ConfigError::TooFewSteps(self.steps));
        }
        if self.t_min >= self.t_max || self.t_min.is_nan() || self.t_max.is_nan() {
            return Err(ConfigError::EmptyTimeRange(self.t_min, self.t_max));
        }
        if self.nbar < 0.0 || self.nbar.is_nan() {
            return Err(ConfigError::NegativeOccupation(self.nbar));
        }
        Ok(())
    }

    /// Physical cavity parameters, or the Delta0 = 1 stand-in.
    fn cavity_params(&self) -> Result<CavityParams, DynamicsError> {
        match self.cavity {
            Some((g, delta, k)) => CavityParams::new(g, delta, k, self.nbar),
            None => CavityParams::new(1.0, 1.0, 0.0, self.nbar),
        }
    }

    fn delta0_comment(&self) -> String {
        match self.cavity {
            Some((g, delta, k)) => {
                let delta0 = CavityParams::new(g, delta, k, self.nbar.max(0.0))
                    .map(|p| p.delta0())
                    .unwrap_or(f64::NAN);
                format!(
                    "delta0 = {} derived from g = {}, delta = {}, k = {}; time axis is delta0*t",
                    fmt_sig(delta0, 12),
                    fmt_sig(g, 12),
                    fmt_sig(delta, 12),
                    fmt_sig(k, 12)
                )
            }
            None => "delta0 = 1; time axis is delta0*t".to_string(),
        }
    }
}

/// One CSV field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    /// Serialized as an empty field (undefined quantity).
    Empty,
}

/// A table with comment lines, ready to serialize as CSV or plot as SVG.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// `digits` significant digits, plain decimal inside [1e-4, 10^digits),
/// scientific outside. Locale-independent by construction.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i32 = sci.split('e').nth(1).expect("e-notation has an exponent").parse().unwrap();
    if exp < -4 || exp >= digits as i32 {
        sci
    } else {
        format!("{:.*}", (digits as i32 - 1 - exp).max(0) as usize, v)
    }
}

/// Uniform grid including both endpoints; `steps >= 2` checked upstream.
/// The last point is pinned to `hi` because `lo + (hi - lo) * 1.0` can land
/// one ulp off it.
pub fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let n = (steps - 1) as f64;
    (0..steps)
        .map(|k| if k == steps - 1 { hi } else { lo + (hi - lo) * (k as f64 / n) })
        .collect()
}

impl Figure {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => fmt_sig(*v, 12),
                    Cell::Flag(b) => b.to_string(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Minimal line plot: column 0 is the x axis, every later numeric column
    /// becomes a polyline. CSV is the contract; this is convenience.
    pub fn to_svg(&self) -> String {
        const W: f64 = 800.0;
        const H: f64 = 520.0;
        const L: f64 = 70.0;
        const R: f64 = 780.0;
        const T: f64 = 50.0;
        const B: f64 = 470.0;
        const COLORS: [&str; 6] =
            ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

        let xs: Vec<f64> = self
            .rows
            .iter()
            .filter_map(|r| match r.first() {
                Some(Cell::Num(v)) => Some(*v),
                _ => None,
            })
            .collect();
        let mut series: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
        for col in 1..self.columns.len() {
            let pts: Vec<(f64, f64)> = self
                .rows
                .iter()
                .filter_map(|r| match (r.first(), r.get(col)) {
                    (Some(Cell::Num(x)), Some(Cell::Num(y))) => Some((*x, *y)),
                    _ => None,
                })
                .collect();
            if !pts.is_empty() {
                series.push((col, pts));
            }
        }

        let (mut x_lo, mut x_hi) = bounds(xs.iter().copied());
        let (mut y_lo, mut y_hi) =
            bounds(series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)));
        if x_hi - x_lo < 1e-300 {
            x_lo -= 0.5;
            x_hi += 0.5;
        }
        if y_hi - y_lo < 1e-300 {
            y_lo -= 0.5;
            y_hi += 0.5;
        }
        let px = |x: f64| L + (x - x_lo) / (x_hi - x_lo) * (R - L);
        let py = |y: f64| B - (y - y_lo) / (y_hi - y_lo) * (B - T);

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
             viewBox=\"0 0 {W} {H}\">\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
             text-anchor=\"middle\">{}</text>\n",
            (L + R) / 2.0,
            self.title
        ));
        svg.push_str(&format!(
            "<line x1=\"{L}\" y1=\"{B}\" x2=\"{R}\" y2=\"{B}\" stroke=\"black\"/>\n"
        ));
        svg.push_str(&format!(
            "<line x1=\"{L}\" y1=\"{T}\" x2=\"{L}\" y2=\"{B}\" stroke=\"black\"/>\n"
        ));
        for (x, anchor) in [(x_lo, "start"), (x_hi, "end")] {
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"{anchor}\">{:.4}</text>\n",
                px(x),
                B + 18.0,
                x
            ));
        }
        for y in [y_lo, y_hi] {
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"end\">{:.4}</text>\n",
                L - 8.0,
                py(y) + 4.0,
                y
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
             text-anchor=\"middle\">{}</text>\n",
            (L + R) / 2.0,
            H - 10.0,
            self.columns.first().cloned().unwrap_or_default()
        ));
        for (k, (col, pts)) in series.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let coords: Vec<String> =
                pts.iter().map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" \
                 points=\"{}\"/>\n",
                coords.join(" ")
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
                 fill=\"{color}\">{}</text>\n",
                R - 120.0,
                T + 16.0 * (k as f64 + 1.0),
                self.columns[*col]
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Entropy against dimensionless time for the three reference preparation
/// angles pi/6, pi/2, 2pi/3.
pub fn fig1(cfg: &RunConfig) -> Result<Figure, FigureError> {
    cfg.validate()?;
    let thetas = [PI / 6.0, FRAC_PI_2, 2.0 * PI / 3.0];
    let rows = grid(cfg.t_min, cfg.t_max, cfg.steps)
        .into_iter()
        .map(|tau| {
            let mut row = vec![Cell::Num(tau)];
            row.extend(thetas.iter().map(|&th| Cell::Num(entropy_closed(th, tau))));
            row
        })
        .collect();
    Ok(Figure {
        title: "entanglement entropy vs delta0*t".to_string(),
        comments: vec![cfg.delta0_comment()],
        columns: ["delta0_t", "entropy_theta_pi6", "entropy_theta_pi2", "entropy_theta_2pi3"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

/// Entropy against the preparation angle theta at fixed Delta0 t = pi/2.
pub fn fig2(cfg: &RunConfig) -> Result<Figure, FigureError> {
    cfg.validate()?;
    let rows = grid(0.0, TAU, cfg.steps)
        .into_iter()
        .map(|theta| vec![Cell::Num(theta), Cell::Num(entropy_closed(theta, FRAC_PI_2))])
        .collect();
    Ok(Figure {
        title: "entanglement entropy vs theta at delta0*t = pi/2".to_string(),
        comments: vec!["delta0*t fixed at pi/2".to_string()],
        columns: ["theta", "entropy"].map(String::from).to_vec(),
        rows,
    })
}

/// Joint squeezing / entropy sweep; rows where the mean-spin frame is
/// undefined keep the entropy but leave the squeezing fields empty.
pub fn fig3(cfg: &RunConfig) -> Result<Figure, FigureError> {
    cfg.validate()?;
    let prep = CoherentPrep::pair(cfg.theta, cfg.phi)?;
    let params = cfg.cavity_params()?;
    // the sweep grid is dimensionless; the scan wants physical times
    let t_phys: Vec<f64> =
        grid(cfg.t_min, cfg.t_max, cfg.steps).iter().map(|tau| tau / params.delta0()).collect();
    let scan = squeezing_scan(&prep, &params, &t_phys).expect("validated grid is nonempty");
    let rows = scan
        .iter()
        .map(|p: &ScanPoint| {
            let mut row = vec![Cell::Num(p.delta0_t), Cell::Num(p.entropy)];
            match &p.squeezing.values {
                Some(v) => row.extend([
                    Cell::Num(v.sx),
                    Cell::Num(v.sy),
                    Cell::Num(v.smin),
                    Cell::Flag(true),
                ]),
                None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Flag(false)]),
            }
            row
        })
        .collect();
    Ok(Figure {
        title: format!("squeezing and entropy vs delta0*t at theta = {}", fmt_sig(cfg.theta, 12)),
        comments: vec![
            "theta defaults to pi/3; no canonical value exists for this sweep, set --theta to choose"
                .to_string(),
            format!("theta = {}, phi = {}", fmt_sig(cfg.theta, 12), fmt_sig(cfg.phi, 12)),
            cfg.delta0_comment(),
        ],
        columns: ["delta0_t", "E", "Sx", "Sy", "Smin", "defined"].map(String::from).to_vec(),
        rows,
    })
}

/// Occupation probabilities of the product basis states at the three
/// reference angles.
pub fn table1() -> Figure {
    let rows = [PI / 6.0, FRAC_PI_2, 2.0 * PI / 3.0]
        .into_iter()
        .map(|theta| {
            let mut row = vec![Cell::Num(theta)];
            row.extend(probabilities(theta).into_iter().map(Cell::Num));
            row
        })
        .collect();
    Figure {
        title: "occupation probabilities of the product basis".to_string(),
        comments: vec!["probabilities are time-independent".to_string()],
        columns: ["theta", "P1", "P2", "P3", "P4"].map(String::from).to_vec(),
        rows,
    }
}

/// Every reported quantity at a single parameter point, as one CSV row.
pub fn point(theta: f64, phi: f64, delta0_t: f64, nbar: f64) -> Result<Figure, FigureError> {
    if nbar < 0.0 || nbar.is_nan() {
        return Err(ConfigError::NegativeOccupation(nbar).into());
    }
    let report = entanglement_report(theta, phi, delta0_t, nbar)?;
    let prep = CoherentPrep::pair(theta, phi)?;
    let psi0 = crate::spin::coherent_pair_state(&prep)?;
    let psi = evolve(&psi0, &EffectiveH::with_delta0(1.0, nbar), delta0_t);
    let squeezing = squeezing_params(&psi);

    let mut row = vec![
        Cell::Num(theta),
        Cell::Num(phi),
        Cell::Num(delta0_t),
        Cell::Num(report.entropy_numeric),
        Cell::Num(report.entropy_closed),
        Cell::Num(report.concurrence),
        Cell::Num(report.eof),
        Cell::Num(report.mean_spin_mag),
    ];
    row.extend(report.probabilities.into_iter().map(Cell::Num));
    match &squeezing.values {
        Some(v) => row.extend([
            Cell::Num(v.djx_prime),
            Cell::Num(v.djy_prime),
            Cell::Num(v.sx),
            Cell::Num(v.sy),
            Cell::Num(v.smin),
            Cell::Num(v.uncertainty_product),
            Cell::Num(v.bound),
            Cell::Flag(true),
        ]),
        None => {
            row.extend([Cell::Empty; 7]);
            row.push(Cell::Flag(false));
        }
    }
    Ok(Figure {
        title: "single-point report".to_string(),
        comments: vec![],
        columns: [
            "theta",
            "phi",
            "delta0_t",
            "entropy",
            "entropy_closed",
            "concurrence",
            "eof",
            "mean_spin_mag",
            "P1",
            "P2",
            "P3",
            "P4",
            "dJx_prime",
            "dJy_prime",
            "Sx",
            "Sy",
            "Smin",
            "uncertainty_product",
            "bound",
            "defined",
        ]
        .map(String::from)
        .to_vec(),
        rows: vec![row],
    })
}

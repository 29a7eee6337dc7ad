//! Translation generator on a uniform 1-D grid: the shift `q(ξ + b)` against
//! the truncated series `Σ b^k/k! q^(k)(ξ)`, and the position/momentum
//! commutator applied to smooth functions.
//!
//! Derivatives are spectral (FFT). Fourier modes below [`NOISE_FLOOR`] of the
//! largest are zeroed first; otherwise roundoff in high modes is amplified
//! by `k^m` in the `m`-th derivative.

use std::sync::Arc;

use nalgebra::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative magnitude below which Fourier modes are treated as roundoff.
pub const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    Gaussian { center: f64, width: f64 },
    Sine { frequency: f64 },
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Gaussian { center, width } => (-(x - center).powi(2) / (2.0 * width * width)).exp(),
            TestFunction::Sine { frequency } => (frequency * x).sin(),
        }
    }

    /// Grid on which the function is effectively periodic.
    pub fn default_grid(&self) -> GridSpec {
        match *self {
            TestFunction::Gaussian { center, .. } => GridSpec { start: center - 10.0, spacing: 0.01, points: 2000 },
            TestFunction::Sine { frequency } => {
                GridSpec { start: 0.0, spacing: std::f64::consts::TAU / (frequency.abs() * 64.0), points: 64 }
            }
        }
    }
}

/// `points` samples at `start + i·spacing`, treated as one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub spacing: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn span(&self) -> f64 {
        self.spacing * self.points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.start + self.spacing * i as f64
    }

    fn validate(&self, op: &'static str) -> Result<()> {
        if self.points < 4 || !(self.spacing > 0.0) || !self.start.is_finite() {
            return Err(Error::input(op, "grid needs at least 4 points and positive spacing"));
        }
        Ok(())
    }
}

struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<f64>,
}

impl Spectral {
    fn new(grid: &GridSpec) -> Self {
        let n = grid.points;
        let mut planner = FftPlanner::new();
        let base = std::f64::consts::TAU / grid.span();
        let wavenumbers = (0..n)
            .map(|j| {
                if 2 * j == n {
                    0.0 // Nyquist mode has no well-defined odd derivative
                } else if j < n / 2 + n % 2 {
                    base * j as f64
                } else {
                    base * (j as f64 - n as f64)
                }
            })
            .collect();
        Spectral { forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n), wavenumbers }
    }

    fn transform(&self, values: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut buf = values.to_vec();
        self.forward.process(&mut buf);
        let max = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for z in &mut buf {
            if z.norm() < NOISE_FLOOR * max {
                *z = Complex::new(0.0, 0.0);
            }
        }
        buf
    }

    /// `m`-th derivative from filtered Fourier coefficients.
    fn derivative(&self, hat: &[Complex<f64>], m: u32) -> Vec<Complex<f64>> {
        let n = hat.len() as f64;
        let mut buf: Vec<Complex<f64>> =
            hat.iter().zip(&self.wavenumbers).map(|(z, k)| z * Complex::new(0.0, *k).powu(m)).collect();
        self.inverse.process(&mut buf);
        buf.iter().map(|z| z / n).collect()
    }
}

fn sample(f: &TestFunction, grid: &GridSpec) -> Vec<Complex<f64>> {
    (0..grid.points).map(|i| Complex::new(f.eval(grid.x(i)), 0.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationResidual {
    pub terms: u32,
    pub spacing: f64,
    pub points: usize,
    pub interior_points: usize,
    pub max_residual: f64,
}

/// Largest `|q(ξ + b) - Σ_{k ≤ K} b^k/k! q^(k)(ξ)|` over grid points with
/// `ξ + b` still on the grid interval.
pub fn translation_generator_check(
    f: &TestFunction,
    grid: &GridSpec,
    b: f64,
    terms: u32,
) -> Result<TranslationResidual> {
    const OP: &str = "translation_generator_check";
    grid.validate(OP)?;
    if !(b.abs() < grid.span()) {
        return Err(Error::input(OP, format!("shift {b} is not smaller than the grid span {}", grid.span())));
    }
    let spectral = Spectral::new(grid);
    let q = sample(f, grid);
    let hat = spectral.transform(&q);
    let mut series = vec![0.0; grid.points];
    let mut coeff = 1.0;
    for k in 0..=terms {
        if k > 0 {
            coeff *= b / k as f64;
        }
        let d = if k == 0 { q.clone() } else { spectral.derivative(&hat, k) };
        for (s, z) in series.iter_mut().zip(&d) {
            *s += coeff * z.re;
        }
    }
    let end = grid.start + grid.span();
    let mut worst: f64 = 0.0;
    let mut interior = 0;
    for (i, s) in series.iter().enumerate() {
        let x = grid.x(i);
        if x + b >= grid.start && x + b < end {
            interior += 1;
            worst = worst.max((f.eval(x + b) - s).abs());
        }
    }
    Ok(TranslationResidual {
        terms,
        spacing: grid.spacing,
        points: grid.points,
        interior_points: interior,
        max_residual: worst,
    })
}

/// Residuals for every `(terms, spacing)` pair, with the span of
/// `f.default_grid()` held fixed.
pub fn residual_table(f: &TestFunction, b: f64, terms: &[u32], spacings: &[f64]) -> Result<Vec<TranslationResidual>> {
    let base = f.default_grid();
    let mut out = Vec::new();
    for &h in spacings {
        let grid = GridSpec { start: base.start, spacing: h, points: (base.span() / h).round() as usize };
        for &k in terms {
            out.push(translation_generator_check(f, &grid, b, k)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorResidual {
    pub hbar: f64,
    /// `‖(XP - PX)q - iħq‖ / (ħ‖q‖)` over the grid.
    pub relative_residual: f64,
}

/// Applies `X` (multiply by `ξ`) and `P = (ħ/i) d/dξ` on the grid. The
/// identity `XP - PX = iħ` cannot hold for matrices (the trace of a
/// commutator is 0); only its action on smooth functions is checked.
pub fn commutator_check(f: &TestFunction, grid: &GridSpec, hbar: f64) -> Result<CommutatorResidual> {
    const OP: &str = "commutator_check";
    grid.validate(OP)?;
    if !(hbar > 0.0) {
        return Err(Error::input(OP, "hbar must be positive"));
    }
    let spectral = Spectral::new(grid);
    let minus_i_hbar = Complex::new(0.0, -hbar);
    let p = |v: &[Complex<f64>]| -> Vec<Complex<f64>> {
        spectral.derivative(&spectral.transform(v), 1).into_iter().map(|z| z * minus_i_hbar).collect()
    };
    let x = |v: &[Complex<f64>]| -> Vec<Complex<f64>> { v.iter().enumerate().map(|(i, z)| z * grid.x(i)).collect() };
    let q = sample(f, grid);
    let xp = x(&p(&q));
    let px = p(&x(&q));
    let i_hbar = Complex::new(0.0, hbar);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..grid.points {
        num += (xp[i] - px[i] - i_hbar * q[i]).norm_sqr();
        den += q[i].norm_sqr();
    }
    Ok(CommutatorResidual { hbar, relative_residual: num.sqrt() / (hbar * den.sqrt()) })
}

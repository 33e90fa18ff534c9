//! Variable-exponent Lebesgue norms on grid functions and the quantitative
//! checks that accompany them (generalized Hölder, ball-norm products,
//! subset ratios, product norms, log-Hölder regularity).

use std::f64::consts::E;

use serde::Serialize;

use crate::dilation::Point;
use crate::error::{Error, Result};
use crate::exponent::{conjugate, Exponent};
use crate::grid::{GridFunction, GridGeometry};
use crate::numeric::{bisect_decreasing, compensated_sum, slope_through_origin};
use crate::par;

/// Relative bisection tolerance for the Luxemburg norm.
pub const LUXEMBURG_REL_TOL: f64 = 1e-10;
pub const LUXEMBURG_MAX_ITER: usize = 200;

/// Below this many samples the modular is summed on the calling thread.
const PAR_THRESHOLD: usize = 16_384;

/// Nonzero samples prepared for repeated modular evaluation.
#[derive(Debug, Clone)]
pub struct ModularSamples {
    ln_abs: Vec<f64>,
    exponent: Vec<f64>,
    cell_volume: f64,
}

impl ModularSamples {
    /// Collect `(|f(x)|, p(x))` pairs, dropping zeros.
    pub fn new<I: IntoIterator<Item = (f64, f64)>>(pairs: I, cell_volume: f64) -> Self {
        let (ln_abs, exponent) = pairs
            .into_iter()
            .filter(|(v, _)| *v != 0.0)
            .map(|(v, p)| (v.abs().ln(), p))
            .unzip();
        ModularSamples {
            ln_abs,
            exponent,
            cell_volume,
        }
    }

    pub fn from_function(f: &GridFunction, p: &Exponent, region: Option<&[bool]>) -> Self {
        let g = *f.grid();
        let vals = f.values();
        let pairs = par::map_range(vals.len(), |i| {
            let keep = vals[i] != 0.0 && region.is_none_or(|m| m[i]);
            if keep {
                (vals[i], p.eval(&g.center(i)))
            } else {
                (0.0, 0.0)
            }
        });
        Self::new(pairs, g.cell_volume())
    }

    pub fn is_empty(&self) -> bool {
        self.ln_abs.is_empty()
    }

    /// `∫ (|f|/λ)^{p(x)} dx`.
    pub fn modular(&self, lambda: f64) -> f64 {
        let ln_l = lambda.ln();
        let term = |i: usize| (self.exponent[i] * (self.ln_abs[i] - ln_l)).exp();
        let n = self.ln_abs.len();
        let s = if n >= PAR_THRESHOLD {
            par::sum_range(n, term)
        } else {
            compensated_sum((0..n).map(term))
        };
        s * self.cell_volume
    }

    fn constant_exponent(&self) -> Option<f64> {
        let first = *self.exponent.first()?;
        self.exponent.iter().all(|&p| p == first).then_some(first)
    }

    /// Luxemburg norm: the λ with unit modular (0 for the zero function).
    pub fn norm(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        if let Some(p) = self.constant_exponent() {
            // (∫|f|^p)^{1/p}, evaluated with the largest sample factored out
            let m = self
                .ln_abs
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max);
            let s = compensated_sum(self.ln_abs.iter().map(|&l| (p * (l - m)).exp()));
            return (m + (s * self.cell_volume).ln() / p).exp();
        }
        let p_minus = self.exponent.iter().copied().fold(f64::INFINITY, f64::min);
        let m = self
            .ln_abs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let s = compensated_sum(self.ln_abs.iter().map(|&l| (p_minus * (l - m)).exp()));
        let start = (m + (s * self.cell_volume).ln() / p_minus).exp();
        bisect_decreasing(
            |l| self.modular(l),
            1.0,
            start,
            LUXEMBURG_REL_TOL,
            LUXEMBURG_MAX_ITER,
        )
        .root
    }
}

/// Quadrature value of the modular over `region` (whole box by default).
pub fn modular(f: &GridFunction, lam: f64, p: &Exponent, region: Option<&[bool]>) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(Error::NonPositiveLambda(lam));
    }
    if let Some(m) = region {
        if m.len() != f.values().len() {
            return Err(Error::GridMismatch);
        }
    }
    Ok(ModularSamples::from_function(f, p, region).modular(lam))
}

/// `‖f‖_{L^{p(·)}}`.
pub fn luxemburg_norm(f: &GridFunction, p: &Exponent) -> f64 {
    ModularSamples::from_function(f, p, None).norm()
}

/// Norm of `f` restricted to a mask.
pub fn luxemburg_norm_on(f: &GridFunction, p: &Exponent, region: &[bool]) -> f64 {
    ModularSamples::from_function(f, p, Some(region)).norm()
}

/// Norm of the indicator of the masked cells.
pub fn indicator_norm(g: &crate::grid::Grid, p: &Exponent, region: &[bool]) -> f64 {
    let pairs: Vec<(f64, f64)> = (0..region.len())
        .filter(|&i| region[i])
        .map(|i| (1.0, p.eval(&g.center(i))))
        .collect();
    ModularSamples::new(pairs, g.cell_volume()).norm()
}

#[derive(Debug, Clone, Serialize)]
pub struct HolderReport {
    pub r_p: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    pub integral: f64,
    pub defect: f64,
}

/// `r_p ‖f‖_{p(·)} ‖g‖_{p'(·)} − ∫|fg|` with `r_p = 1 + 1/p⁻ − 1/p⁺`.
pub fn holder_defect(f: &GridFunction, g: &GridFunction, p: &Exponent) -> Result<HolderReport> {
    let fg = f.mul(g)?;
    let pc = conjugate(p)?;
    let r_p = 1.0 + 1.0 / p.minus() - 1.0 / p.plus();
    let norm_f = luxemburg_norm(f, p);
    let norm_g = luxemburg_norm(g, &pc);
    let integral = fg.l1_norm();
    Ok(HolderReport {
        r_p,
        norm_f,
        norm_g,
        integral,
        defect: r_p * norm_f * norm_g - integral,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BallProduct {
    pub k: i32,
    /// `‖χ_{B_k}‖_{p} ‖χ_{B_k}‖_{p'}`
    pub norm_product: f64,
    pub measured_volume: f64,
    pub nominal_volume: f64,
    /// `norm_product / measured_volume`
    pub ratio: f64,
}

pub fn ball_norm_product(geo: &GridGeometry, k: i32, p: &Exponent) -> Result<BallProduct> {
    let pc = conjugate(p)?;
    let mask = geo.ball_mask(k);
    let count = mask.iter().filter(|&&m| m).count();
    if count == 0 {
        return Err(Error::EmptyBall(k));
    }
    let g = geo.grid();
    let norm_product = indicator_norm(g, p, &mask) * indicator_norm(g, &pc, &mask);
    let measured_volume = count as f64 * g.cell_volume();
    Ok(BallProduct {
        k,
        norm_product,
        measured_volume,
        nominal_volume: geo.dilation().ball_volume(k),
        ratio: norm_product / measured_volume,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetFit {
    pub delta1: f64,
    pub delta2: f64,
    pub pairs: usize,
}

/// Fit the ball-ratio exponents by log-log regression over `j < k` in `krange`.
pub fn subset_ratio_fit(geo: &GridGeometry, p: &Exponent, krange: (i32, i32)) -> Result<SubsetFit> {
    let pc = conjugate(p)?;
    let g = geo.grid();
    let mut rows = Vec::new();
    for k in krange.0..=krange.1 {
        let mask = geo.ball_mask(k);
        let count = mask.iter().filter(|&&m| m).count();
        if count == 0 {
            continue;
        }
        rows.push((
            (count as f64 * g.cell_volume()).ln(),
            indicator_norm(g, p, &mask).ln(),
            indicator_norm(g, &pc, &mask).ln(),
        ));
    }
    let mut pts1 = Vec::new();
    let mut pts2 = Vec::new();
    for (a, ra) in rows.iter().enumerate() {
        for rb in rows.iter().skip(a + 1) {
            let x = ra.0 - rb.0;
            if x == 0.0 {
                continue;
            }
            pts1.push((x, ra.1 - rb.1));
            pts2.push((x, ra.2 - rb.2));
        }
    }
    if pts1.len() < 3 {
        return Err(Error::InsufficientRange(pts1.len()));
    }
    Ok(SubsetFit {
        delta1: slope_through_origin(&pts1),
        delta2: slope_through_origin(&pts2),
        pairs: pts1.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductNormReport {
    pub norm_fg: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    pub ratio: f64,
}

/// `‖fg‖_{p} / (‖f‖_{q} ‖g‖_{r})` with `1/p = 1/q + 1/r`.
pub fn product_norm_check(
    f: &GridFunction,
    g: &GridFunction,
    q: &Exponent,
    r: &Exponent,
) -> Result<ProductNormReport> {
    let p = Exponent::Harmonic {
        a: Box::new(q.clone()),
        b: Box::new(r.clone()),
    };
    let pm = p.minus();
    if !(pm > 1.0) {
        return Err(Error::ReciprocalMismatch(pm));
    }
    let fg = f.mul(g)?;
    let norm_fg = luxemburg_norm(&fg, &p);
    let norm_f = luxemburg_norm(f, q);
    let norm_g = luxemburg_norm(g, r);
    let den = norm_f * norm_g;
    Ok(ProductNormReport {
        norm_fg,
        norm_f,
        norm_g,
        ratio: if den == 0.0 { 0.0 } else { norm_fg / den },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogHolderStatus {
    Holds,
    Violated,
    NotLogHolder,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogHolderReport {
    /// Tightest `C` in `|g(x)−g(0)| ≤ C / ln(e + 1/|x|)`.
    pub c_origin: f64,
    /// Tightest `C` in `|g(x)−g_∞| ≤ C / ln(e + |x|)`.
    pub c_infinity: f64,
    /// Tightest `C` in `|g(x)−g(y)| ≤ C / ln(e + 1/|x−y|)` over pairs `|x−y| < 1/2`.
    pub c_local: f64,
    pub analytic: Option<f64>,
    pub status: LogHolderStatus,
}

pub fn log_holder_check(g: &Exponent, samples: &[Point]) -> LogHolderReport {
    let g0 = g.at_origin();
    let ginf = g.at_infinity();
    let mut c_origin: f64 = 0.0;
    let mut c_infinity: f64 = 0.0;
    for x in samples {
        let r = x[0].hypot(x[1]);
        let gx = g.eval(x);
        if r > 0.0 {
            c_origin = c_origin.max((gx - g0).abs() * (E + 1.0 / r).ln());
        }
        match ginf {
            Some(l) => c_infinity = c_infinity.max((gx - l).abs() * (E + r).ln()),
            None => c_infinity = f64::INFINITY,
        }
    }
    let c_local = par::map_range(samples.len(), |i| {
        let x = samples[i];
        let gx = g.eval(&x);
        samples[i + 1..]
            .iter()
            .filter_map(|y| {
                let t = (x[0] - y[0]).hypot(x[1] - y[1]);
                (t > 0.0 && t < 0.5).then(|| (gx - g.eval(y)).abs() * (E + 1.0 / t).ln())
            })
            .fold(0.0, f64::max)
    })
    .into_iter()
    .fold(0.0, f64::max);
    let analytic = g.log_holder_constant();
    let status = match analytic {
        None => LogHolderStatus::NotLogHolder,
        Some(c) => {
            let lim = c * (1.0 + 1e-12) + 1e-15;
            if c_origin <= lim && c_infinity <= lim && c_local <= lim {
                LogHolderStatus::Holds
            } else {
                LogHolderStatus::Violated
            }
        }
    };
    LogHolderReport {
        c_origin,
        c_infinity,
        c_local,
        analytic,
        status,
    }
}

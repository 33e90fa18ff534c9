//! Grand Lebesgue sequence norms
//! `sup_{ε>0} ε^{θ/(p(1+ε))} ‖x‖_{ℓ^{p(1+ε)}}` and the nesting chain
//! `ℓ^{p(1−ε)} ↪ ℓ^p ↪ ℓ^{p),θ₁} ↪ ℓ^{p),θ₂} ↪ ℓ^{p(1+δ)}`.
//!
//! The supremum is located by scanning `ln ε` on a log-spaced grid over
//! `[1e-6, 1e6]`, refining the best bracket by golden-section search, and
//! finally comparing against the `ε → ∞` limit `‖x‖_∞`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::golden_max;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexSet {
    /// ℤ
    #[default]
    Integers,
    /// ℤ₊ = {1, 2, ...}
    Positive,
    /// ℕ = {0, 1, ...}
    NonNegative,
}

/// Finitely supported sequence `x_k`, `k = offset .. offset + len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequence {
    pub offset: i64,
    pub values: Vec<f64>,
    #[serde(default)]
    pub index_set: IndexSet,
}

impl Sequence {
    pub fn new(offset: i64, values: Vec<f64>) -> Result<Self> {
        Self::with_index_set(offset, values, IndexSet::Integers)
    }

    pub fn with_index_set(offset: i64, values: Vec<f64>, index_set: IndexSet) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParams("sequence entries must be finite".into()));
        }
        let min_index = match index_set {
            IndexSet::Integers => i64::MIN,
            IndexSet::Positive => 1,
            IndexSet::NonNegative => 0,
        };
        if !values.is_empty() && offset < min_index {
            return Err(Error::BadParams(format!(
                "index {offset} lies outside the index set {index_set:?}"
            )));
        }
        Ok(Sequence {
            offset,
            values,
            index_set,
        })
    }

    /// Unit sequence `e_j`.
    pub fn unit(j: i64) -> Self {
        Sequence {
            offset: j,
            values: vec![1.0],
            index_set: IndexSet::Integers,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.offset + i as i64, v))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Sequence {
            values: self.values.iter().map(|v| c * v).collect(),
            ..self.clone()
        }
    }

    pub fn sup_norm(&self) -> f64 {
        sup_abs(&self.values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrandSequenceParams {
    pub p: f64,
    pub theta: f64,
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub grid_points: usize,
    /// Golden-section stopping width in `ln ε`.
    pub refine_tol: f64,
}

impl GrandSequenceParams {
    pub fn new(p: f64, theta: f64) -> Result<Self> {
        let params = GrandSequenceParams {
            p,
            theta,
            eps_lo: 1e-6,
            eps_hi: 1e6,
            grid_points: 240,
            refine_tol: 1e-10,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_grid_points(mut self, n: usize) -> Self {
        self.grid_points = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::BadExponent(self.p));
        }
        if !(self.theta > 0.0) || !self.theta.is_finite() {
            return Err(Error::BadParams(format!(
                "theta must be > 0, got {}",
                self.theta
            )));
        }
        if !(self.eps_lo > 0.0 && self.eps_lo < self.eps_hi) || self.grid_points < 3 {
            return Err(Error::BadParams("bad epsilon grid".into()));
        }
        Ok(())
    }
}

fn sup_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `‖x‖_{ℓ^p}` for `p ≥ 1`.
pub fn lp_seq_norm(x: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::BadExponent(p));
    }
    Ok(lp_any(x, p))
}

/// `(Σ|x|^s)^{1/s}` for any `s > 0` (a quasi-norm below 1), with the largest
/// entry factored out to avoid overflow.
pub(crate) fn lp_any(x: &[f64], s: f64) -> f64 {
    let m = sup_abs(x);
    if m == 0.0 {
        return 0.0;
    }
    let sum: f64 = x.iter().map(|v| (v.abs() / m).powf(s)).sum();
    m * sum.powf(1.0 / s)
}

/// Log-magnitudes of the nonzero entries, ready for repeated `ℓ^s` evaluation.
#[derive(Debug, Clone)]
pub(crate) struct LogEntries {
    rel: Vec<f64>,
    ln_max: f64,
}

impl LogEntries {
    pub(crate) fn new(x: &[f64]) -> Option<Self> {
        let m = sup_abs(x);
        if m == 0.0 {
            return None;
        }
        let ln_max = m.ln();
        let rel = x
            .iter()
            .filter(|v| **v != 0.0)
            .map(|v| v.abs().ln() - ln_max)
            .collect();
        Some(LogEntries { rel, ln_max })
    }

    /// `ln ‖x‖_{ℓ^s}`.
    pub(crate) fn ln_norm(&self, s: f64) -> f64 {
        let sum: f64 = self.rel.iter().map(|r| (s * r).exp()).sum();
        self.ln_max + sum.ln() / s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrandNorm {
    pub value: f64,
    /// Maximizing ε, or `None` when the `ε → ∞` limit `‖x‖_∞` wins.
    pub argmax_eps: Option<f64>,
}

/// Maximize `h(ε) = θ ln ε / (p(1+ε)) + ln ‖x‖_{p(1+ε)}` for the prepared
/// entries; returns `(h*, ε*)` without the limit comparison.
pub(crate) fn maximize_log_objective(
    entries: &LogEntries,
    params: &GrandSequenceParams,
) -> (f64, f64) {
    let h = |u: f64| {
        let eps = u.exp();
        let s = params.p * (1.0 + eps);
        params.theta * u / s + entries.ln_norm(s)
    };
    let (ulo, uhi) = (params.eps_lo.ln(), params.eps_hi.ln());
    let n = params.grid_points;
    let step = (uhi - ulo) / (n - 1) as f64;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let v = h(ulo + step * i as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = ulo + step * best_i.saturating_sub(1) as f64;
    let hi = ulo + step * (best_i + 1).min(n - 1) as f64;
    let (u, v) = golden_max(h, lo, hi, params.refine_tol);
    if v > best {
        (v, u.exp())
    } else {
        (best, (ulo + step * best_i as f64).exp())
    }
}

/// Grand sequence norm of raw values with the maximizing ε.
pub fn grand_norm_detailed(x: &[f64], params: &GrandSequenceParams) -> GrandNorm {
    let Some(entries) = LogEntries::new(x) else {
        return GrandNorm {
            value: 0.0,
            argmax_eps: None,
        };
    };
    let (h, eps) = maximize_log_objective(&entries, params);
    let value = h.exp();
    let limit = sup_abs(x);
    if limit > value {
        GrandNorm {
            value: limit,
            argmax_eps: None,
        }
    } else {
        GrandNorm {
            value,
            argmax_eps: Some(eps),
        }
    }
}

pub fn grand_seq_norm(x: &Sequence, params: &GrandSequenceParams) -> f64 {
    grand_norm_detailed(&x.values, params).value
}

/// `sup_{ε>0} ε^{θ/(p(1+ε))}`: the grand norm of any unit sequence.
pub fn epsilon_factor_sup(p: f64, theta: f64) -> Result<f64> {
    let params = GrandSequenceParams::new(p, theta)?;
    Ok(grand_norm_detailed(&[1.0], &params).value)
}

#[derive(Debug, Clone, Serialize)]
pub struct NestingReport {
    /// `‖x‖` in `ℓ^{p(1−ε)}`, `ℓ^p`, `ℓ^{p),θ₁}`, `ℓ^{p),θ₂}`, `ℓ^{p(1+δ)}`.
    pub norms: [f64; 5],
    /// Consecutive ratios `norm[i+1] / norm[i]` (0 for a zero sequence).
    pub ratios: [f64; 4],
    /// Provable bound for each ratio; the `θ₁ → θ₂` step has none.
    pub bounds: [Option<f64>; 4],
    pub pass: bool,
}

pub fn nesting_report(
    x: &Sequence,
    p: f64,
    theta1: f64,
    theta2: f64,
    eps: f64,
    delta: f64,
) -> Result<NestingReport> {
    if !(theta1 > 0.0 && theta1 <= theta2) || !(eps > 0.0 && eps < 1.0 / p) || !(delta > 0.0) {
        return Err(Error::BadParams(format!(
            "need 0 < θ₁ ≤ θ₂, 0 < ε < 1/p, δ > 0 (got θ₁={theta1}, θ₂={theta2}, ε={eps}, δ={delta})"
        )));
    }
    let g1 = GrandSequenceParams::new(p, theta1)?;
    let g2 = GrandSequenceParams::new(p, theta2)?;
    let v = &x.values;
    let norms = [
        lp_any(v, p * (1.0 - eps)),
        lp_any(v, p),
        grand_norm_detailed(v, &g1).value,
        grand_norm_detailed(v, &g2).value,
        lp_any(v, p * (1.0 + delta)),
    ];
    let mut ratios = [0.0; 4];
    for i in 0..4 {
        if norms[i] > 0.0 {
            ratios[i] = norms[i + 1] / norms[i];
        }
    }
    let bounds = [
        Some(1.0),
        Some(epsilon_factor_sup(p, theta1)?),
        None,
        Some(delta.powf(-theta2 / (p * (1.0 + delta)))),
    ];
    let pass = ratios.iter().all(|r| r.is_finite())
        && ratios
            .iter()
            .zip(&bounds)
            .all(|(r, b)| b.is_none_or(|b| *r <= b * (1.0 + 1e-9)));
    Ok(NestingReport {
        norms,
        ratios,
        bounds,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_examples() {
        assert_eq!(lp_seq_norm(&[1.0], 3.7).unwrap(), 1.0);
        assert!((lp_seq_norm(&[1.0, 1.0], 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((lp_seq_norm(&[3.0, 4.0], 2.0).unwrap() - 5.0).abs() < 1e-15);
        assert_eq!(lp_seq_norm(&[1.0], 0.5), Err(Error::BadExponent(0.5)));
    }

    #[test]
    fn delta_sequence_values() {
        let p1 = GrandSequenceParams::new(1.0, 1.0).unwrap();
        let g = grand_norm_detailed(&[1.0], &p1);
        assert!((g.value - 1.321_099_762_015_617_5).abs() < 1e-9);
        assert!((g.argmax_eps.unwrap() - 3.591_121_476_668_622).abs() < 1e-5);
        let p2 = GrandSequenceParams::new(1.0, 2.0).unwrap();
        assert!((grand_seq_norm(&Sequence::unit(4), &p2) - 1.745_304_581_197_721).abs() < 1e-9);
        assert_eq!(
            grand_seq_norm(&Sequence::new(0, vec![0.0; 3]).unwrap(), &p1),
            0.0
        );
    }

    #[test]
    fn params_validation() {
        assert!(GrandSequenceParams::new(0.5, 1.0).is_err());
        assert!(GrandSequenceParams::new(1.0, 0.0).is_err());
        assert!(Sequence::with_index_set(0, vec![1.0], IndexSet::Positive).is_err());
        assert!(Sequence::with_index_set(0, vec![1.0], IndexSet::NonNegative).is_ok());
    }

    #[test]
    fn nesting_delta_and_scaling() {
        let e = Sequence::unit(0);
        let r = nesting_report(&e, 2.0, 1.0, 2.0, 0.25, 0.5).unwrap();
        assert_eq!(r.norms[0], 1.0);
        assert_eq!(r.norms[1], 1.0);
        assert_eq!(r.norms[4], 1.0);
        assert!(r.pass);
        let x = Sequence::new(0, (0..10).map(|i| 0.5f64.powi(i)).collect()).unwrap();
        let a = nesting_report(&x, 2.0, 1.0, 2.0, 0.25, 0.5).unwrap();
        let b = nesting_report(&x.scaled(2.0), 2.0, 1.0, 2.0, 0.25, 0.5).unwrap();
        assert!(a.pass && a.ratios.iter().all(|r| r.is_finite()));
        for i in 0..5 {
            assert!((b.norms[i] - 2.0 * a.norms[i]).abs() <= 1e-12 * b.norms[i]);
        }
        assert!(nesting_report(&x, 2.0, 2.0, 1.0, 0.25, 0.5).is_err());
        assert!(nesting_report(&x, 2.0, 1.0, 2.0, 0.5, 0.5).is_err());
    }
}

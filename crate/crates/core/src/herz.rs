//! Grand Herz and grand Herz-Morrey norms assembled from annulus slices,
//! the canonical central-block decomposition, and the product and sum
//! inequalities.
//!
//! Norms are truncated to a finite `krange = [k_lo, k_hi]`. Cells of the
//! unresolved core `B_{k_lo - 1}` are not summed; instead every norm carries
//! a geometric bound on the dropped terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::grandseq::{
    epsilon_factor_sup, grand_norm_detailed, GrandSequenceParams, IndexSet, Sequence,
};
use crate::grid::{GridFunction, GridGeometry};
use crate::par;
use crate::varlebesgue::{luxemburg_norm, subset_ratio_fit, ModularSamples};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerzSpaceParams {
    pub alpha: Exponent,
    pub p: f64,
    pub q: Exponent,
    pub theta: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default = "default_true")]
    pub homogeneous: bool,
    #[serde(default)]
    pub delta2: Option<f64>,
    #[serde(default)]
    pub krange: Option<(i32, i32)>,
}

fn default_true() -> bool {
    true
}

impl HerzSpaceParams {
    pub fn new(alpha: Exponent, p: f64, q: Exponent, theta: f64) -> Result<Self> {
        let params = HerzSpaceParams {
            alpha,
            p,
            q,
            theta,
            lambda: 0.0,
            homogeneous: true,
            delta2: None,
            krange: None,
        };
        params.validate()?;
        Ok(params)
    }

    /// Constant `α` and `q`.
    pub fn constant(alpha: f64, p: f64, q: f64, theta: f64) -> Result<Self> {
        Self::new(Exponent::constant(alpha), p, Exponent::constant(q), theta)
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_krange(mut self, lo: i32, hi: i32) -> Self {
        self.krange = Some((lo, hi));
        self
    }

    pub fn with_delta2(mut self, delta2: f64) -> Self {
        self.delta2 = Some(delta2);
        self
    }

    pub fn non_homogeneous(mut self) -> Self {
        self.homogeneous = false;
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
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::BadParams(format!(
                "lambda must be >= 0, got {}",
                self.lambda
            )));
        }
        if let Some(d) = self.delta2 {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::BadParams(format!(
                    "delta2 must lie in (0,1), got {d}"
                )));
            }
        }
        if let Some((lo, hi)) = self.krange {
            if lo > hi {
                return Err(Error::BadParams(format!("empty krange [{lo}, {hi}]")));
            }
        }
        if !self.alpha.minus().is_finite() || !self.alpha.plus().is_finite() {
            return Err(Error::BadParams("alpha must be bounded".into()));
        }
        self.q.require_class_p()
    }

    pub fn seq_params(&self) -> Result<GrandSequenceParams> {
        GrandSequenceParams::new(self.p, self.theta)
    }

    pub fn alpha_at_origin(&self) -> f64 {
        self.alpha.at_origin()
    }

    pub fn alpha_at_infinity(&self) -> Result<f64> {
        self.alpha
            .at_infinity()
            .ok_or_else(|| Error::BadParams("alpha has no limit at infinity".into()))
    }

    /// `α(0)` for `k < 0`, `α_∞` for `k ≥ 0`.
    pub fn alpha_for_scale(&self, k: i32) -> Result<f64> {
        if k < 0 {
            Ok(self.alpha_at_origin())
        } else {
            self.alpha_at_infinity()
        }
    }

    /// Supplied `δ₂`, else `1 − 1/q` for constant `q`, else a fitted estimate.
    pub fn resolve_delta2(&self, geo: &GridGeometry) -> Result<f64> {
        if let Some(d) = self.delta2 {
            return Ok(d);
        }
        if let Some(q) = self.q.constant_value() {
            return Ok(1.0 - 1.0 / q);
        }
        let (lo, hi) = self.krange.unwrap_or_else(|| geo.default_krange());
        Ok(subset_ratio_fit(geo, &self.q, (lo, hi.min(0).max(lo + 3)))?.delta2)
    }

    /// The truncation range actually summed.
    pub fn resolve_krange(&self, geo: &GridGeometry) -> (i32, i32) {
        let (lo, hi) = self.krange.unwrap_or_else(|| geo.default_krange());
        if self.homogeneous || self.krange.is_some() {
            (lo, hi)
        } else {
            (0, hi.max(0))
        }
    }
}

/// How the `b^{kα}` weight is formed inside each slice norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    /// `b^{kα(x)}` pointwise.
    Pointwise,
    /// `b^{kα(0)}` for `k < 0`, `b^{kα_∞}` for `k ≥ 0`.
    Split,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerzNorm {
    pub norm: f64,
    pub tail_bound: f64,
    pub per_k_terms: Vec<(i32, f64)>,
    pub argmax_eps: Option<f64>,
    #[serde(rename = "argmax_L")]
    pub argmax_l: Option<i32>,
    pub krange: (i32, i32),
}

fn slice_cells(geo: &GridGeometry, k: i32, homogeneous: bool) -> Vec<usize> {
    if !homogeneous && k == 0 {
        geo.ball_cells(0)
    } else {
        geo.annulus_cells(k).to_vec()
    }
}

/// `f·χ_{C_k}`, or `f·χ_{B₀}` at `k = 0` for the non-homogeneous space.
pub fn annulus_slice(
    f: &GridFunction,
    geo: &GridGeometry,
    k: i32,
    homogeneous: bool,
) -> Result<GridFunction> {
    geo.check(f)?;
    if k > geo.k_max() || (!homogeneous && k < 0) {
        return Err(Error::OutOfCoverage(k));
    }
    if !homogeneous && k == 0 {
        geo.restrict_to_ball(f, 0)
    } else {
        geo.slice(f, k)
    }
}

fn weighted_term(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    k: i32,
    weight: Weight,
    split_alpha: (f64, f64),
) -> f64 {
    let grid = geo.grid();
    let b = geo.dilation().b();
    let vals = f.values();
    let cells = slice_cells(geo, k, params.homogeneous);
    let kf = k as f64;
    let pairs = cells.iter().filter(|&&i| vals[i] != 0.0).map(|&i| {
        let x = grid.center(i);
        let a = match weight {
            Weight::Pointwise => params.alpha.eval(&x),
            Weight::Split if k < 0 => split_alpha.0,
            Weight::Split => split_alpha.1,
        };
        (b.powf(kf * a) * vals[i], params.q.eval(&x))
    });
    ModularSamples::new(pairs, grid.cell_volume()).norm()
}

fn weighted_terms(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    weight: Weight,
) -> Result<((i32, i32), Vec<f64>)> {
    geo.check(f)?;
    params.validate()?;
    let split = match weight {
        Weight::Pointwise => (0.0, 0.0),
        Weight::Split => (params.alpha_at_origin(), params.alpha_at_infinity()?),
    };
    let (lo, hi) = params.resolve_krange(geo);
    if hi > geo.k_max() {
        return Err(Error::OutOfCoverage(hi));
    }
    let ks: Vec<i32> = (lo..=hi).collect();
    let terms = par::map_slice(&ks, |&k| weighted_term(f, geo, params, k, weight, split));
    Ok(((lo, hi), terms))
}

/// Bound on the grand norm of the dropped terms `k < k_lo`, using
/// `‖b^{kα}fχ_k‖_q ≤ ‖f‖_∞ b^{kα*} |B_k|^{1/q*}` with the worst exponents for
/// the sign of `k`, and `grand(t) ≤ E·‖t‖_{ℓ^p}`.
fn tail_bound(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    k_lo: i32,
) -> Result<f64> {
    if !params.homogeneous {
        return Ok(0.0);
    }
    let vals = f.values();
    let core_sup = geo
        .ball_cells(k_lo)
        .iter()
        .fold(0.0f64, |m, &i| m.max(vals[i].abs()));
    if core_sup == 0.0 {
        return Ok(0.0);
    }
    let b = geo.dilation().b();
    let p = params.p;
    let small = params.alpha.minus() + 1.0 / params.q.plus();
    if !(small > 0.0) {
        return Err(Error::TailUnbounded(small));
    }
    let large = params.alpha.plus() + 1.0 / params.q.minus();
    let mut sum = 0.0;
    // positive scales below k_lo, summed directly
    for k in (1..k_lo).rev() {
        sum += b.powf(k as f64 * large * p);
    }
    // k ≤ min(0, k_lo − 1): geometric series
    let top = (k_lo - 1).min(0) as f64;
    sum += b.powf(top * small * p) / (1.0 - b.powf(-small * p));
    Ok(epsilon_factor_sup(p, params.theta)? * core_sup * sum.powf(1.0 / p))
}

fn assemble(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    weight: Weight,
) -> Result<HerzNorm> {
    let (krange, terms) = weighted_terms(f, geo, params, weight)?;
    let seq = params.seq_params()?;
    let g = grand_norm_detailed(&terms, &seq);
    Ok(HerzNorm {
        norm: g.value,
        tail_bound: tail_bound(f, geo, params, krange.0)?,
        per_k_terms: (krange.0..).zip(terms).collect(),
        argmax_eps: g.argmax_eps,
        argmax_l: None,
        krange,
    })
}

/// `sup_ε ε^{θ/(p(1+ε))} ‖{‖b^{kα(·)} f χ_k‖_{q(·)}}‖_{ℓ^{p(1+ε)}}` over the
/// truncation range (`λ` is ignored).
pub fn grand_herz_norm(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<HerzNorm> {
    assemble(f, geo, params, Weight::Pointwise)
}

/// Same construction with the weight frozen to `α(0)` on `k < 0` and `α_∞`
/// on `k ≥ 0`.
pub fn split_norm(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<HerzNorm> {
    assemble(f, geo, params, Weight::Split)
}

/// `sup_L b^{−Lλ} · grand norm of the terms with k ≤ L`, over `L` in the
/// truncation range. Ties go to the smallest `ε`, then the smallest `L`.
pub fn herz_morrey_norm(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<HerzNorm> {
    let (krange, terms) = weighted_terms(f, geo, params, Weight::Pointwise)?;
    let seq = params.seq_params()?;
    let b = geo.dilation().b();
    let prefixes: Vec<usize> = (1..=terms.len()).collect();
    let candidates = par::map_slice(&prefixes, |&n| {
        let l = krange.0 + n as i32 - 1;
        let g = grand_norm_detailed(&terms[..n], &seq);
        (
            b.powf(-(l as f64) * params.lambda) * g.value,
            g.argmax_eps,
            l,
        )
    });
    let mut best = (0.0, None, None);
    for (v, eps, l) in candidates {
        if v > best.0 {
            best = (v, eps, Some(l));
        }
    }
    let tail =
        tail_bound(f, geo, params, krange.0)? * b.powf(-(krange.0 as f64) * params.lambda).max(1.0);
    Ok(HerzNorm {
        norm: best.0,
        tail_bound: tail,
        per_k_terms: (krange.0..).zip(terms).collect(),
        argmax_eps: best.1,
        argmax_l: best.2,
        krange,
    })
}

/// Herz norm, or the Herz-Morrey norm when `λ > 0`.
pub fn space_norm(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<HerzNorm> {
    if params.lambda > 0.0 {
        herz_morrey_norm(f, geo, params)
    } else {
        grand_herz_norm(f, geo, params)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub k: i32,
    pub coefficient: f64,
    pub data: GridFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// `λ_k` over the whole truncation range, zeros included.
    pub coefficients: Sequence,
    /// Blocks for the nonzero coefficients only.
    pub blocks: Vec<Block>,
    pub params: HerzSpaceParams,
}

/// `λ_k = ‖b^{kα(·)} f χ_k‖_{q(·)}`, `b_k = f χ_k / λ_k`.
pub fn block_decompose(
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<BlockDecomposition> {
    let ((lo, _), terms) = weighted_terms(f, geo, params, Weight::Pointwise)?;
    if terms.iter().all(|&t| t == 0.0) {
        return Err(Error::ZeroFunction);
    }
    let mut blocks = Vec::new();
    for (k, &lam) in (lo..).zip(&terms) {
        if lam > 0.0 {
            let slice = annulus_slice(f, geo, k, params.homogeneous)?;
            blocks.push(Block {
                k,
                coefficient: lam,
                data: slice.map(|v| v / lam),
            });
        }
    }
    let index_set = if params.homogeneous {
        IndexSet::Integers
    } else {
        IndexSet::NonNegative
    };
    Ok(BlockDecomposition {
        coefficients: Sequence::with_index_set(lo as i64, terms, index_set)?,
        blocks,
        params: params.clone(),
    })
}

/// `Σ λ_k b_k`; an empty decomposition needs the grid to build a zero function.
pub fn block_reconstruct(
    dec: &BlockDecomposition,
    grid: &crate::grid::Grid,
) -> Result<GridFunction> {
    let mut out = vec![0.0; grid.len()];
    for block in &dec.blocks {
        if block.data.grid() != grid {
            return Err(Error::GridMismatch);
        }
        for (o, v) in out.iter_mut().zip(block.data.values()) {
            *o += block.coefficient * v;
        }
    }
    GridFunction::new(*grid, out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockValidation {
    pub k: i32,
    pub support_ok: bool,
    pub norm: f64,
    pub bound: f64,
    pub norm_ok: bool,
    /// Present when restricted type was requested: `k ≥ 0`.
    pub restricted_ok: Option<bool>,
    pub pass: bool,
}

/// Support in `B_k` and `‖b‖_{q(·)} ≤ b^{−kα_k}(1 + 1e-9)`.
pub fn block_validate(
    block: &GridFunction,
    k: i32,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    restricted: bool,
) -> Result<BlockValidation> {
    geo.check(block)?;
    let vals = block.values();
    let support_ok = (0..vals.len()).all(|i| vals[i] == 0.0 || geo.in_ball(i, k));
    let norm = luxemburg_norm(block, &params.q);
    let bound = geo
        .dilation()
        .b()
        .powf(-(k as f64) * params.alpha_for_scale(k)?);
    let norm_ok = norm <= bound * (1.0 + 1e-9);
    let restricted_ok = restricted.then_some(k >= 0);
    Ok(BlockValidation {
        k,
        support_ok,
        norm,
        bound,
        norm_ok,
        restricted_ok,
        pass: support_ok && norm_ok && restricted_ok.unwrap_or(true),
    })
}

/// Grand sequence norm of the coefficients.
pub fn seq_functional(dec: &BlockDecomposition) -> Result<f64> {
    let seq = dec.params.seq_params()?;
    Ok(grand_norm_detailed(&dec.coefficients.values, &seq).value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, 0 when both sides vanish.
    pub ratio: f64,
    pub bound: f64,
    /// Whether the bound is a proven one (false: recorded only).
    pub asserted: bool,
    pub degenerate: bool,
    pub pass: bool,
}

impl InequalityReport {
    fn new(lhs: f64, rhs: f64, bound: f64, asserted: bool) -> Self {
        let degenerate = rhs == 0.0;
        let ratio = if degenerate {
            if lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            lhs / rhs
        };
        let pass = ratio.is_finite() && (!asserted || ratio <= bound);
        InequalityReport {
            lhs,
            rhs,
            ratio,
            bound,
            asserted,
            degenerate,
            pass,
        }
    }
}

/// Parameters of a product space: `α = Σα_i`, `1/q = Σ1/q_i`, `1/p = Σ1/p_i`,
/// `λ = Σλ_i`, shared `θ`.
pub fn product_params(parts: &[HerzSpaceParams]) -> Result<HerzSpaceParams> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::ParamMismatch("no factors".into()))?;
    let mut acc = first.clone();
    for p in rest {
        if p.theta != acc.theta || p.homogeneous != acc.homogeneous || p.krange != acc.krange {
            return Err(Error::ParamMismatch(
                "factors must share theta, homogeneity and krange".into(),
            ));
        }
        acc.alpha = match (acc.alpha.constant_value(), p.alpha.constant_value()) {
            (Some(a), Some(b)) => Exponent::constant(a + b),
            _ => Exponent::Sum {
                a: Box::new(acc.alpha),
                b: Box::new(p.alpha.clone()),
            },
        };
        acc.q = match (acc.q.constant_value(), p.q.constant_value()) {
            (Some(a), Some(b)) => Exponent::constant(1.0 / (1.0 / a + 1.0 / b)),
            _ => Exponent::Harmonic {
                a: Box::new(acc.q),
                b: Box::new(p.q.clone()),
            },
        };
        acc.p = 1.0 / (1.0 / acc.p + 1.0 / p.p);
        acc.lambda += p.lambda;
        acc.delta2 = None;
    }
    if !(acc.p >= 1.0) {
        return Err(Error::ParamMismatch(format!("derived p = {} < 1", acc.p)));
    }
    if acc.q.require_class_p().is_err() {
        return Err(Error::ParamMismatch(format!(
            "derived q⁻ = {} ≤ 1",
            acc.q.minus()
        )));
    }
    Ok(acc)
}

/// `‖Π f_i‖ ≤ Π ‖f_i‖` in the product space. Asserted (to `1 + 1e-6`) only
/// when every `q_i` is constant; otherwise the ratio is recorded.
pub fn product_check(
    factors: &[GridFunction],
    geo: &GridGeometry,
    params: &[HerzSpaceParams],
) -> Result<InequalityReport> {
    if factors.len() != params.len() || factors.len() < 2 {
        return Err(Error::ParamMismatch(format!(
            "{} factors for {} parameter sets",
            factors.len(),
            params.len()
        )));
    }
    let joint = product_params(params)?;
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = prod.mul(f)?;
    }
    let lhs = space_norm(&prod, geo, &joint)?.norm;
    let mut rhs = 1.0;
    for (f, p) in factors.iter().zip(params) {
        rhs *= space_norm(f, geo, p)?.norm;
    }
    let asserted = params.iter().all(|p| p.q.constant_value().is_some());
    Ok(InequalityReport::new(lhs, rhs, 1.0 + 1e-6, asserted))
}

/// `‖Σ f_i‖ ≤ Σ ‖f_i‖` with shared parameters.
pub fn sum_check(
    summands: &[GridFunction],
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<InequalityReport> {
    let (first, rest) = summands
        .split_first()
        .ok_or_else(|| Error::BadParams("no summands".into()))?;
    let mut total = first.clone();
    for f in rest {
        total = total.add(f)?;
    }
    let lhs = space_norm(&total, geo, params)?.norm;
    let mut rhs = 0.0;
    for f in summands {
        rhs += space_norm(f, geo, params)?.norm;
    }
    Ok(InequalityReport::new(lhs, rhs, 1.0 + 1e-6, true))
}

//! Concrete sublinear operators with off-support size control, the empirical
//! Herz operator ratio, and boundedness sweeps over `(α, λ)` cells.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dilation::{unit_ball_volume, Point};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::grid::{FunctionSpec, GridFunction, GridGeometry, ORIGIN_INDEX};
use crate::herz::{space_norm, HerzSpaceParams};
use crate::par;
use crate::varlebesgue::luxemburg_norm;

/// Ball family used by the maximal operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallShape {
    /// Translates `x + B_k` of the dilation balls.
    #[default]
    Anisotropic,
    /// Euclidean balls with the same volume `b^k`.
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    Hardy,
    TruncatedRiesz {
        cutoff: f64,
    },
    Maximal {
        #[serde(default)]
        krange: Option<(i32, i32)>,
        #[serde(default)]
        shape: BallShape,
    },
    Identity,
}

impl OperatorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorSpec::Hardy => "hardy",
            OperatorSpec::TruncatedRiesz { .. } => "truncated_riesz",
            OperatorSpec::Maximal { .. } => "maximal",
            OperatorSpec::Identity => "identity",
        }
    }

    /// `hardy`, `identity`, `riesz:CUTOFF`, `maximal`, `maximal:euclidean`.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, arg) = text.split_once(':').unwrap_or((text, ""));
        match (head.trim(), arg.trim()) {
            ("hardy", "") => Ok(OperatorSpec::Hardy),
            ("identity", "") => Ok(OperatorSpec::Identity),
            ("riesz" | "truncated_riesz", c) => {
                let cutoff = c
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad riesz cutoff `{c}`")))?;
                Ok(OperatorSpec::TruncatedRiesz { cutoff })
            }
            ("maximal", s) => {
                let shape = match s {
                    "" | "anisotropic" => BallShape::Anisotropic,
                    "euclidean" => BallShape::Euclidean,
                    other => return Err(Error::Parse(format!("unknown ball shape `{other}`"))),
                };
                Ok(OperatorSpec::Maximal {
                    krange: None,
                    shape,
                })
            }
            _ => Err(Error::Parse(format!("unknown operator `{text}`"))),
        }
    }

    pub fn apply(&self, f: &GridFunction, geo: &GridGeometry) -> Result<GridFunction> {
        match self {
            OperatorSpec::Hardy => hardy_apply(f, geo),
            OperatorSpec::TruncatedRiesz { cutoff } => truncated_riesz_apply(f, geo, *cutoff),
            OperatorSpec::Maximal { krange, shape } => maximal_apply(
                f,
                geo,
                krange.unwrap_or_else(|| geo.default_krange()),
                *shape,
            ),
            OperatorSpec::Identity => {
                geo.check(f)?;
                Ok(f.clone())
            }
        }
    }
}

/// `Hf(x) = ρ(x)^{-1} ∫_{ρ(y) ≤ ρ(x)} f(y) dy`, 0 at the origin.
///
/// The inner integrals are cumulative per-annulus sums, so data whose cell
/// values sum to exactly zero produces exact zeros once its support is
/// captured.
pub fn hardy_apply(f: &GridFunction, geo: &GridGeometry) -> Result<GridFunction> {
    geo.check(f)?;
    let vals = f.values();
    let index = geo.indices();
    let mut levels: Vec<i32> = index
        .iter()
        .copied()
        .filter(|&j| j != ORIGIN_INDEX)
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let origin_mass: f64 = index
        .iter()
        .zip(vals)
        .filter(|(&j, _)| j == ORIGIN_INDEX)
        .map(|(_, v)| v)
        .sum();
    let mut cumulative = Vec::with_capacity(levels.len());
    let mut acc = origin_mass;
    for &j in &levels {
        acc += geo
            .annulus_cells(j + 1)
            .iter()
            .map(|&i| vals[i])
            .sum::<f64>();
        cumulative.push(acc);
    }
    let vol = geo.grid().cell_volume();
    let b = geo.dilation().b();
    let out = index
        .iter()
        .map(|&j| {
            if j == ORIGIN_INDEX {
                return 0.0;
            }
            let pos = levels.binary_search(&j).expect("level present");
            cumulative[pos] * vol / b.powi(j)
        })
        .collect();
    GridFunction::new(*geo.grid(), out)
}

fn offset_point(geo: &GridGeometry, dx: i64, dy: i64) -> Point {
    let h = geo.grid().spacing();
    [dx as f64 * h, dy as f64 * h]
}

/// Smallest admissible Riesz cutoff: the largest `ρ` of a one-cell offset.
pub fn min_riesz_cutoff(geo: &GridGeometry) -> f64 {
    let d = geo.dilation();
    let mut m = d.rho(&offset_point(geo, 1, 0));
    if geo.grid().dim() == 2 {
        m = m.max(d.rho(&offset_point(geo, 0, 1)));
    }
    m
}

/// A function of the grid offset `x − y`, tabulated for every offset that
/// can occur between two cells.
pub(crate) struct OffsetTable {
    n: i64,
    width: usize,
    two_d: bool,
    values: Vec<f64>,
}

impl OffsetTable {
    pub(crate) fn new<F: Fn(&Point) -> f64 + Sync>(geo: &GridGeometry, f: F) -> Self {
        let grid = geo.grid();
        let n = grid.resolution() as i64;
        let width = (2 * n - 1) as usize;
        let two_d = grid.dim() == 2;
        let rows = if two_d { width } else { 1 };
        let values = par::map_range(width * rows, |t| {
            let dx = (t % width) as i64 - (n - 1);
            let dy = if two_d {
                (t / width) as i64 - (n - 1)
            } else {
                0
            };
            f(&offset_point(geo, dx, dy))
        });
        OffsetTable {
            n,
            width,
            two_d,
            values,
        }
    }

    /// Value at the offset between cells `(ix, iy)` and `(jx, jy)`.
    #[inline]
    pub(crate) fn get(&self, ix: i64, iy: i64, jx: i64, jy: i64) -> f64 {
        let row = if self.two_d {
            (iy - jy + self.n - 1) as usize * self.width
        } else {
            0
        };
        self.values[row + (ix - jx + self.n - 1) as usize]
    }
}

/// Nonzero cells as `(ix, iy, value)`.
pub(crate) fn support_list(f: &GridFunction) -> Vec<(i64, i64, f64)> {
    let grid = f.grid();
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| {
            let (ix, iy) = grid.split(i);
            (ix as i64, iy as i64, *v)
        })
        .collect()
}

/// `Tf(x) = ∫_{ρ(x−y) ≥ cutoff} f(y)/ρ(x−y) dy`.
pub fn truncated_riesz_apply(
    f: &GridFunction,
    geo: &GridGeometry,
    cutoff: f64,
) -> Result<GridFunction> {
    geo.check(f)?;
    let min = min_riesz_cutoff(geo);
    if !(cutoff >= min) {
        return Err(Error::CutoffTooSmall { cutoff, min });
    }
    let grid = *geo.grid();
    let d = geo.dilation();
    let kernel = OffsetTable::new(geo, |x| {
        let r = d.rho(x);
        if r >= cutoff {
            1.0 / r
        } else {
            0.0
        }
    });
    let support = support_list(f);
    let vol = grid.cell_volume();
    let out = par::map_range(grid.len(), |i| {
        let (ix, iy) = grid.split(i);
        let (ix, iy) = (ix as i64, iy as i64);
        let s: f64 = support
            .iter()
            .map(|&(jx, jy, v)| v * kernel.get(ix, iy, jx, jy))
            .sum();
        s * vol
    });
    GridFunction::new(grid, out)
}

/// Integer offsets of a convex stencil, as one `[lo, hi]` interval of `dx`
/// per `dy` row.
struct Stencil {
    rows: Vec<(i64, i64, i64)>,
    count: f64,
}

fn stencil<F: Fn(&Point) -> bool>(geo: &GridGeometry, extent: Point, inside: F) -> Stencil {
    let h = geo.grid().spacing();
    let ex = (extent[0] / h).ceil() as i64 + 1;
    let ey = if geo.grid().dim() == 2 {
        (extent[1] / h).ceil() as i64 + 1
    } else {
        0
    };
    let mut rows = Vec::new();
    let mut count = 0.0;
    for dy in -ey..=ey {
        let mut span: Option<(i64, i64)> = None;
        for dx in -ex..=ex {
            if inside(&offset_point(geo, dx, dy)) {
                span = Some(span.map_or((dx, dx), |(lo, _)| (lo, dx)));
            }
        }
        if let Some((lo, hi)) = span {
            rows.push((dy, lo, hi));
            count += (hi - lo + 1) as f64;
        }
    }
    Stencil { rows, count }
}

fn ball_stencil(geo: &GridGeometry, k: i32, shape: BallShape) -> Stencil {
    let d = geo.dilation();
    match shape {
        BallShape::Anisotropic => stencil(geo, d.ball_extent(k), |x| d.in_ball(x, k)),
        BallShape::Euclidean => {
            let dim = geo.grid().dim();
            let r = (d.ball_volume(k) / unit_ball_volume(dim)).powf(1.0 / dim as f64);
            stencil(geo, [r, r], |x| x[0].hypot(x[1]) < r)
        }
    }
}

/// `Mf(x) = max_{k ∈ krange} |B_k|^{-1} ∫_{x + B_k} |f|`, with `|B_k|` taken
/// as the stencil cell count. The range is extended down to the first scale
/// whose stencil is a single cell, so `Mf ≥ |f|` on the grid.
pub fn maximal_apply(
    f: &GridFunction,
    geo: &GridGeometry,
    krange: (i32, i32),
    shape: BallShape,
) -> Result<GridFunction> {
    geo.check(f)?;
    if krange.0 > krange.1 {
        return Err(Error::BadParams(format!("empty krange {krange:?}")));
    }
    let grid = *geo.grid();
    let n = grid.resolution();
    let nrows = if grid.dim() == 2 { n } else { 1 };
    // per-row prefix sums of |f|
    let prefix: Vec<Vec<f64>> = (0..nrows)
        .map(|iy| {
            let mut p = vec![0.0; n + 1];
            for ix in 0..n {
                p[ix + 1] = p[ix] + f.values()[grid.flat(ix, iy)].abs();
            }
            p
        })
        .collect();
    // extend downwards to the single-cell scale
    let mut k_start = krange.0;
    while ball_stencil(geo, k_start, shape).count > 1.0 && krange.0 - k_start < 64 {
        k_start -= 1;
    }
    let mut stencils: Vec<Stencil> = Vec::new();
    for k in k_start..=krange.1 {
        let s = ball_stencil(geo, k, shape);
        if s.count <= 1.0 && stencils.last().is_some_and(|l| l.count <= 1.0) {
            continue;
        }
        stencils.push(s);
    }
    let out = par::map_range(grid.len(), |i| {
        let (ix, iy) = grid.split(i);
        let (ix, iy) = (ix as i64, iy as i64);
        let mut best = 0.0f64;
        for s in &stencils {
            let mut sum = 0.0;
            for &(dy, dlo, dhi) in &s.rows {
                let y = iy + dy;
                if y < 0 || y >= nrows as i64 {
                    continue;
                }
                let lo = (ix + dlo).clamp(0, n as i64) as usize;
                let hi = (ix + dhi + 1).clamp(0, n as i64) as usize;
                if hi - lo <= 16 {
                    // short rows summed directly, avoiding prefix cancellation
                    let row = grid.flat(0, y as usize);
                    sum += f.values()[row + lo..row + hi]
                        .iter()
                        .map(|v| v.abs())
                        .sum::<f64>();
                } else {
                    let p = &prefix[y as usize];
                    sum += p[hi] - p[lo];
                }
            }
            best = best.max(sum / s.count);
        }
        best
    });
    GridFunction::new(grid, out)
}

/// `‖Tf‖ / ‖f‖` in the Herz space of `params` (Herz-Morrey when `λ > 0`).
pub fn op_ratio(
    op: &OperatorSpec,
    f: &GridFunction,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if *op == OperatorSpec::Identity {
        geo.check(f)?;
        return Ok(1.0);
    }
    let tf = op.apply(f, geo)?;
    Ok(space_norm(&tf, geo, params)?.norm / space_norm(f, geo, params)?.norm)
}

/// Seeded family of test functions; the first `n` members of a larger family
/// equal the family of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFamily {
    pub seed: u64,
    pub size: usize,
}

impl TestFamily {
    pub fn members(&self, geo: &GridGeometry) -> Vec<FunctionSpec> {
        let (lo, hi) = geo.default_krange();
        // scales that are resolved and fully inside the box
        let k_small = lo + 3;
        let k_big = (hi - 2).max(k_small);
        let mut out = Vec::with_capacity(self.size);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let dim = geo.grid().dim();
        for i in 0..self.size {
            let centered = k_small + (i as i32) % (k_big - k_small + 1);
            let spec = match i {
                _ if i < (k_big - k_small + 1) as usize => FunctionSpec::Indicator { k: centered },
                _ => {
                    let k = rng.random_range(k_small..=k_big);
                    let ext = geo.dilation().ball_extent(k);
                    let mut shift = [0.0; 2];
                    for (s, e) in shift.iter_mut().zip(ext).take(dim) {
                        *s = rng.random_range(-0.5..=0.5) * e;
                    }
                    let inner = match rng.random_range(0..4) {
                        0 => FunctionSpec::Indicator { k },
                        1 => FunctionSpec::Annulus { k },
                        2 => FunctionSpec::Bump {
                            center: [0.0; 2],
                            radius: ext[0].max(1e-12),
                            amplitude: rng.random_range(0.5..2.0),
                        },
                        _ => FunctionSpec::Noise {
                            seed: rng.random(),
                            k_lo: k - 2,
                            k_hi: k,
                            amplitude: 1.0,
                        },
                    };
                    FunctionSpec::Translated {
                        shift,
                        inner: Box::new(inner),
                    }
                }
            };
            out.push(spec);
        }
        out
    }
}

/// `λ` per sweep column: absolute, or a fraction of the row's `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum LambdaRule {
    Absolute(f64),
    FractionOfAlpha(f64),
}

impl LambdaRule {
    pub fn resolve(&self, alpha: f64) -> f64 {
        match *self {
            LambdaRule::Absolute(l) => l,
            LambdaRule::FractionOfAlpha(c) => c * alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub alpha: f64,
    pub lambda: f64,
    /// `0 < α < δ₂`, and `0 < 2λ < α` when `λ > 0`.
    pub admissible: bool,
    pub sup_small: f64,
    pub sup_large: f64,
    /// `sup_large / sup_small`.
    pub growth: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub operator: String,
    pub delta2: f64,
    pub small_size: usize,
    pub large_size: usize,
    /// Largest `‖Tf‖_q / ‖f‖_q` over the large family.
    pub lebesgue_sup: f64,
    pub cells: Vec<SweepCell>,
    /// Every admissible cell is stable.
    pub pass: bool,
}

/// Growth threshold between the small and the large family.
pub const STABILITY_LIMIT: f64 = 1.5;

pub fn admissible(alpha: f64, lambda: f64, delta2: f64) -> bool {
    alpha > 0.0 && alpha < delta2 && (lambda == 0.0 || (lambda > 0.0 && 2.0 * lambda < alpha))
}

/// Sup of `op_ratio` over a small family and over the family four times its
/// size (constant `α` per row, `q`, `p`, `θ` from `base`).
pub fn boundedness_sweep(
    op: &OperatorSpec,
    geo: &GridGeometry,
    base: &HerzSpaceParams,
    alphas: &[f64],
    lambdas: &[LambdaRule],
    family: TestFamily,
) -> Result<SweepTable> {
    if alphas.is_empty() || lambdas.is_empty() || family.size == 0 {
        return Err(Error::EmptyGrid);
    }
    let large = TestFamily {
        size: family.size * 4,
        ..family
    };
    let members: Vec<GridFunction> = large
        .members(geo)
        .iter()
        .map(|s| geo.sample(s))
        .filter(|f| !f.is_zero())
        .collect();
    let small_count = members.len().min(family.size);
    let images = par::map_slice(&members, |f| op.apply(f, geo));
    let images: Vec<GridFunction> = images.into_iter().collect::<Result<_>>()?;
    let lebesgue_sup = members
        .iter()
        .zip(&images)
        .map(|(f, t)| luxemburg_norm(t, &base.q) / luxemburg_norm(f, &base.q))
        .fold(0.0, f64::max);
    let delta2 = base.resolve_delta2(geo)?;
    let mut grid_cells = Vec::new();
    for &a in alphas {
        for rule in lambdas {
            grid_cells.push((a, rule.resolve(a)));
        }
    }
    let cells = par::map_slice(&grid_cells, |&(alpha, lambda)| -> Result<SweepCell> {
        let mut params = base.clone();
        params.alpha = Exponent::constant(alpha);
        params.lambda = lambda;
        let mut ratios = Vec::with_capacity(members.len());
        for (f, tf) in members.iter().zip(&images) {
            let r = if *op == OperatorSpec::Identity {
                1.0
            } else {
                space_norm(tf, geo, &params)?.norm / space_norm(f, geo, &params)?.norm
            };
            ratios.push(r);
        }
        let sup_small = ratios[..small_count].iter().copied().fold(0.0, f64::max);
        let sup_large = ratios.iter().copied().fold(0.0, f64::max);
        let growth = sup_large / sup_small;
        Ok(SweepCell {
            alpha,
            lambda,
            admissible: admissible(alpha, lambda, delta2),
            sup_small,
            sup_large,
            growth,
            stable: growth < STABILITY_LIMIT,
        })
    });
    let cells: Vec<SweepCell> = cells.into_iter().collect::<Result<_>>()?;
    let pass = cells.iter().all(|c| !c.admissible || c.stable);
    Ok(SweepTable {
        operator: op.name().into(),
        delta2,
        small_size: small_count,
        large_size: members.len(),
        lebesgue_sup,
        cells,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::Dilation;
    use crate::grid::Grid;

    fn line(n: usize) -> GridGeometry {
        let d = Dilation::new(&[vec![2.0]]).unwrap();
        GridGeometry::new(&d, Grid::new(1, 1.0, n).unwrap()).unwrap()
    }

    fn plane(n: usize) -> GridGeometry {
        let d = Dilation::new(&[vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap();
        GridGeometry::new(&d, Grid::new(2, 2.0, n).unwrap()).unwrap()
    }

    #[test]
    fn hardy_of_unit_ball() {
        let geo = line(1024);
        let f = geo.sample(&FunctionSpec::Indicator { k: 0 });
        let h = hardy_apply(&f, &geo).unwrap();
        for i in 0..geo.grid().len() {
            let r = geo.rho_at(i);
            if r >= 1.0 {
                assert!((h.values()[i] - 1.0 / r).abs() < 1e-12);
            }
            let bound = f.l1_norm() / r;
            assert!(h.values()[i].abs() <= bound * (1.0 + 1e-12));
        }
        let z = GridFunction::zeros(*geo.grid());
        assert!(hardy_apply(&z, &geo).unwrap().is_zero());
    }

    #[test]
    fn hardy_far_field_zero_for_mean_zero() {
        let geo = line(1024);
        let f = geo
            .sample(&FunctionSpec::Interval { lo: -0.5, hi: 0.0 })
            .sub(&geo.sample(&FunctionSpec::Interval { lo: 0.0, hi: 0.5 }))
            .unwrap();
        let h = hardy_apply(&f, &geo).unwrap();
        for i in 0..geo.grid().len() {
            if geo.indices()[i] >= 0 {
                assert_eq!(h.values()[i], 0.0);
            }
        }
    }

    #[test]
    fn riesz_point_mass_and_cutoff() {
        let d = Dilation::new(&[vec![2.0]]).unwrap();
        let geo = GridGeometry::new(&d, Grid::new(1, 1.0, 255).unwrap()).unwrap();
        let mid = 127;
        let mut v = vec![0.0; 255];
        v[mid] = 3.0;
        let f = GridFunction::new(*geo.grid(), v).unwrap();
        let cutoff = min_riesz_cutoff(&geo);
        let t = truncated_riesz_apply(&f, &geo, cutoff).unwrap();
        let m = 3.0 * geo.grid().cell_volume();
        for i in 0..255 {
            let r = geo.rho_at(i);
            if r >= cutoff {
                assert!((t.values()[i] - m / r).abs() < 1e-12 * m / r);
            }
        }
        assert!(matches!(
            truncated_riesz_apply(&f, &geo, cutoff / 2.0),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn maximal_basic_properties() {
        let geo = line(512);
        let f = geo.sample(&FunctionSpec::Bump {
            center: [0.1, 0.0],
            radius: 0.3,
            amplitude: 1.0,
        });
        for shape in [BallShape::Anisotropic, BallShape::Euclidean] {
            let m = maximal_apply(&f, &geo, geo.default_krange(), shape).unwrap();
            for (a, b) in m.values().iter().zip(f.values()) {
                assert!(*a >= b.abs() - 1e-15);
            }
            let m2 = maximal_apply(&f.scale(-2.5), &geo, geo.default_krange(), shape).unwrap();
            assert!(m2.max_abs_diff(&m.scale(2.5)).unwrap() < 1e-12);
        }
        let geo = plane(48);
        let f = geo.sample(&FunctionSpec::Indicator { k: 0 });
        let m = maximal_apply(&f, &geo, geo.default_krange(), BallShape::Anisotropic).unwrap();
        for (a, b) in m.values().iter().zip(f.values()) {
            assert!(*a >= b.abs() - 1e-15);
        }
    }

    #[test]
    fn identity_ratio_and_zero_function() {
        let geo = line(256);
        let params = HerzSpaceParams::constant(0.3, 1.0, 2.0, 1.0).unwrap();
        let f = geo.sample(&FunctionSpec::Indicator { k: 0 });
        assert_eq!(
            op_ratio(&OperatorSpec::Identity, &f, &geo, &params).unwrap(),
            1.0
        );
        let z = GridFunction::zeros(*geo.grid());
        assert_eq!(
            op_ratio(&OperatorSpec::Hardy, &z, &geo, &params),
            Err(Error::ZeroFunction)
        );
        let r = op_ratio(&OperatorSpec::Hardy, &f, &geo, &params).unwrap();
        assert!(r.is_finite() && r > 0.0);
    }

    #[test]
    fn family_prefix_property() {
        let geo = line(1024);
        let a = TestFamily { seed: 5, size: 10 }.members(&geo);
        let b = TestFamily { seed: 5, size: 40 }.members(&geo);
        assert_eq!(a[..], b[..10]);
        assert!(matches!(a[0], FunctionSpec::Indicator { .. }));
    }

    #[test]
    fn sweep_identity_and_empty() {
        let geo = line(256);
        let base = HerzSpaceParams::constant(0.3, 1.0, 2.0, 1.0).unwrap();
        let t = boundedness_sweep(
            &OperatorSpec::Identity,
            &geo,
            &base,
            &[0.1, 0.2],
            &[LambdaRule::Absolute(0.0)],
            TestFamily { seed: 1, size: 5 },
        )
        .unwrap();
        assert!(
            t.pass
                && t.cells
                    .iter()
                    .all(|c| c.sup_large == 1.0 && c.sup_small == 1.0)
        );
        assert_eq!(
            boundedness_sweep(
                &OperatorSpec::Identity,
                &geo,
                &base,
                &[],
                &[LambdaRule::Absolute(0.0)],
                TestFamily { seed: 1, size: 5 }
            ),
            Err(Error::EmptyGrid)
        );
        assert!(OperatorSpec::parse("riesz:0.01").is_ok() && OperatorSpec::parse("foo").is_err());
    }
}

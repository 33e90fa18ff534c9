//! Uniform box grids, sampled functions and synthetic function families.
//!
//! Functions live on `[-R, R]^n` sampled at cell centers; integrals use the
//! midpoint rule. Grid functions are immutable values and never resample
//! silently: combining functions on different grids is an error.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::dilation::{Dilation, Point};
use crate::error::{Error, Result};
use crate::numeric::compensated_sum;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    resolution: usize,
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, resolution: usize) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(Error::BadDim(dim));
        }
        if !(half_width > 0.0 && half_width.is_finite()) || resolution == 0 {
            return Err(Error::BadParams(format!(
                "grid needs half_width > 0 and resolution > 0 (got {half_width}, {resolution})"
            )));
        }
        Ok(Grid {
            dim,
            half_width,
            resolution,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn resolution(&self) -> usize {
        self.resolution
    }
    pub fn len(&self) -> usize {
        self.resolution.pow(self.dim as u32)
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Center of cell `i` along one axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    /// Cell center of flat index `idx` (row-major, x fastest).
    #[inline]
    pub fn center(&self, idx: usize) -> Point {
        if self.dim == 1 {
            [self.coord(idx), 0.0]
        } else {
            let n = self.resolution;
            [self.coord(idx % n), self.coord(idx / n)]
        }
    }

    /// Flat index from per-axis indices.
    pub fn flat(&self, ix: usize, iy: usize) -> usize {
        if self.dim == 1 {
            ix
        } else {
            iy * self.resolution + ix
        }
    }

    /// Per-axis indices of a flat index.
    pub fn split(&self, idx: usize) -> (usize, usize) {
        if self.dim == 1 {
            (idx, 0)
        } else {
            (idx % self.resolution, idx / self.resolution)
        }
    }

    /// Same box at a different resolution.
    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        Grid::new(self.dim, self.half_width, resolution)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::BadParams(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParams("grid values must be finite".into()));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn<F: Fn(&Point) -> f64 + Sync + Send>(grid: Grid, f: F) -> Self {
        let values = par::map_range(grid.len(), |i| f(&grid.center(i)));
        GridFunction { grid, values }
    }

    pub(crate) fn from_values_unchecked(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        GridFunction { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    fn check_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn integral(&self) -> f64 {
        compensated_sum(self.values.iter().copied()) * self.grid.cell_volume()
    }

    pub fn l1_norm(&self) -> f64 {
        compensated_sum(self.values.iter().map(|v| v.abs())) * self.grid.cell_volume()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Flat indices of the nonzero samples.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i] != 0.0)
            .collect()
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn abs(&self) -> Self {
        self.map(f64::abs)
    }

    pub fn zip_with<F: Fn(f64, f64) -> f64>(&self, other: &GridFunction, f: F) -> Result<Self> {
        self.check_grid(other)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Keep samples where `mask` is true, zero elsewhere.
    pub fn masked(&self, mask: &[bool]) -> Result<Self> {
        if mask.len() != self.values.len() {
            return Err(Error::GridMismatch);
        }
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(mask)
                .map(|(&v, &m)| if m { v } else { 0.0 })
                .collect(),
        })
    }

    /// Largest pointwise difference to `other`.
    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// CSV layout: `box,N,dim` header, one parameter row, `value` header, then
    /// one sample per line in row-major order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "box,N,dim")?;
        writeln!(
            w,
            "{},{},{}",
            self.grid.half_width, self.grid.resolution, self.grid.dim
        )?;
        writeln!(w, "value")?;
        for v in &self.values {
            writeln!(w, "{v:e}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let mut next = |what: &str| -> Result<String> {
            lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .map_err(Error::from)
        };
        let header = next("header")?;
        if header.trim() != "box,N,dim" {
            return Err(Error::Parse(format!("unexpected header {header:?}")));
        }
        let params = next("grid parameters")?;
        let fields: Vec<&str> = params.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("bad parameter row {params:?}")));
        }
        let bad = |s: &str| Error::Parse(format!("bad number {s:?}"));
        let half_width: f64 = fields[0].trim().parse().map_err(|_| bad(fields[0]))?;
        let resolution: usize = fields[1].trim().parse().map_err(|_| bad(fields[1]))?;
        let dim: usize = fields[2].trim().parse().map_err(|_| bad(fields[2]))?;
        let grid = Grid::new(dim, half_width, resolution)?;
        if next("value header")?.trim() != "value" {
            return Err(Error::Parse("expected `value` header".into()));
        }
        let mut values = Vec::with_capacity(grid.len());
        for line in lines {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            values.push(t.parse::<f64>().map_err(|_| bad(t))?);
        }
        GridFunction::new(grid, values)
    }
}

/// Sentinel annulus index for the cell sitting exactly on the origin.
pub const ORIGIN_INDEX: i32 = i32::MIN;

/// A grid together with the annulus index of every cell center under a
/// dilation. Building it costs one quasi-norm evaluation per cell; everything
/// annulus-related afterwards is table lookup.
#[derive(Debug, Clone)]
pub struct GridGeometry {
    dilation: Dilation,
    grid: Grid,
    index: Vec<i32>,
    cells: BTreeMap<i32, Vec<usize>>,
}

impl GridGeometry {
    pub fn new(dilation: &Dilation, grid: Grid) -> Result<Self> {
        if dilation.dim() != grid.dim() {
            return Err(Error::BadDim(grid.dim()));
        }
        let index = par::map_range(grid.len(), |i| {
            dilation
                .annulus_index(&grid.center(i))
                .unwrap_or(ORIGIN_INDEX)
        });
        let mut cells: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &j) in index.iter().enumerate() {
            cells.entry(j).or_default().push(i);
        }
        Ok(GridGeometry {
            dilation: dilation.clone(),
            grid,
            index,
            cells,
        })
    }

    pub fn dilation(&self) -> &Dilation {
        &self.dilation
    }
    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    /// Annulus index `j` of each cell (`x ∈ B_{j+1} \ B_j`).
    pub fn indices(&self) -> &[i32] {
        &self.index
    }

    /// `x ∈ C_k = B_k \ B_{k-1}`, i.e. annulus index `k - 1`.
    #[inline]
    pub fn in_annulus(&self, i: usize, k: i32) -> bool {
        self.index[i] != ORIGIN_INDEX && self.index[i] == k - 1
    }

    #[inline]
    pub fn in_ball(&self, i: usize, k: i32) -> bool {
        self.index[i] == ORIGIN_INDEX || self.index[i] < k
    }

    /// Cells of `C_k`, in index order.
    pub fn annulus_cells(&self, k: i32) -> &[usize] {
        if k == ORIGIN_INDEX + 1 {
            return &[];
        }
        self.cells.get(&(k - 1)).map_or(&[], Vec::as_slice)
    }

    /// Cells of `B_k` (including an origin cell), in index order.
    pub fn ball_cells(&self, k: i32) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cells
            .range(..k)
            .flat_map(|(_, v)| v.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn annulus_mask(&self, k: i32) -> Vec<bool> {
        (0..self.index.len())
            .map(|i| self.in_annulus(i, k))
            .collect()
    }

    pub fn ball_mask(&self, k: i32) -> Vec<bool> {
        (0..self.index.len()).map(|i| self.in_ball(i, k)).collect()
    }

    pub fn annulus_count(&self, k: i32) -> usize {
        self.index
            .iter()
            .filter(|&&j| j != ORIGIN_INDEX && j == k - 1)
            .count()
    }

    pub fn ball_count(&self, k: i32) -> usize {
        self.index
            .iter()
            .filter(|&&j| j == ORIGIN_INDEX || j < k)
            .count()
    }

    /// Grid-measured `|B_k ∩ box|`.
    pub fn measured_ball_volume(&self, k: i32) -> f64 {
        self.ball_count(k) as f64 * self.grid.cell_volume()
    }

    /// Step quasi-norm of cell `i`.
    pub fn rho_at(&self, i: usize) -> f64 {
        match self.index[i] {
            ORIGIN_INDEX => 0.0,
            j => self.dilation.b().powi(j),
        }
    }

    /// Smallest `k` with every cell center inside `B_k`.
    pub fn k_max(&self) -> i32 {
        self.index
            .iter()
            .filter(|&&j| j != ORIGIN_INDEX)
            .map(|&j| j + 1)
            .max()
            .unwrap_or(0)
    }

    /// Largest `k` whose ball has diameter below four grid cells.
    pub fn k_min(&self) -> i32 {
        let limit = 4.0 * self.grid.spacing();
        let mut k = self.k_max();
        while self.dilation.ball_diameter(k) >= limit {
            k -= 1;
        }
        k
    }

    /// Default truncation range `[k_min, k_max]`.
    pub fn default_krange(&self) -> (i32, i32) {
        (self.k_min(), self.k_max())
    }

    /// `f · χ_{C_k}`.
    pub fn slice(&self, f: &GridFunction, k: i32) -> Result<GridFunction> {
        self.check(f)?;
        let values = (0..f.values.len())
            .map(|i| {
                if self.in_annulus(i, k) {
                    f.values[i]
                } else {
                    0.0
                }
            })
            .collect();
        Ok(GridFunction::from_values_unchecked(self.grid, values))
    }

    /// `f · χ_{B_k}`.
    pub fn restrict_to_ball(&self, f: &GridFunction, k: i32) -> Result<GridFunction> {
        self.check(f)?;
        let values = (0..f.values.len())
            .map(|i| if self.in_ball(i, k) { f.values[i] } else { 0.0 })
            .collect();
        Ok(GridFunction::from_values_unchecked(self.grid, values))
    }

    pub(crate) fn check(&self, f: &GridFunction) -> Result<()> {
        if f.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Sample a synthetic function on this grid.
    pub fn sample(&self, spec: &FunctionSpec) -> GridFunction {
        GridFunction::from_fn(self.grid, |x| spec.eval(x, &self.dilation))
    }
}

/// JSON-describable synthetic functions. Everything is evaluated pointwise so
/// the family is closed under dilation and translation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Zero,
    /// `χ_{B_k}`
    Indicator {
        k: i32,
    },
    /// `χ_{C_k}`
    Annulus {
        k: i32,
    },
    /// `χ_{[lo, hi)}` in the first coordinate.
    Interval {
        lo: f64,
        hi: f64,
    },
    /// Smooth Euclidean bump `exp(1 - 1/(1 - r²))`, `r = |x - center| / radius`.
    Bump {
        center: [f64; 2],
        radius: f64,
        amplitude: f64,
    },
    /// Seeded uniform noise in `[-amplitude, amplitude]` on `B_{k_hi} \ B_{k_lo}`.
    Noise {
        seed: u64,
        k_lo: i32,
        k_hi: i32,
        amplitude: f64,
    },
    /// `f(A^{-k} x)`
    Dilated {
        k: i32,
        inner: Box<FunctionSpec>,
    },
    /// `f(x - shift)`
    Translated {
        shift: [f64; 2],
        inner: Box<FunctionSpec>,
    },
    Scaled {
        factor: f64,
        inner: Box<FunctionSpec>,
    },
    Sum {
        parts: Vec<FunctionSpec>,
    },
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn hash_unit(seed: u64, x: &Point) -> f64 {
    let h = splitmix(seed ^ splitmix(x[0].to_bits() ^ splitmix(x[1].to_bits())));
    (h >> 11) as f64 / (1u64 << 53) as f64
}

impl FunctionSpec {
    pub fn eval(&self, x: &Point, d: &Dilation) -> f64 {
        match self {
            FunctionSpec::Zero => 0.0,
            FunctionSpec::Indicator { k } => {
                if d.in_ball(x, *k) {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Annulus { k } => {
                if d.in_ball(x, *k) && !d.in_ball(x, k - 1) {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Interval { lo, hi } => {
                if x[0] >= *lo && x[0] < *hi {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Bump {
                center,
                radius,
                amplitude,
            } => {
                let dx = x[0] - center[0];
                let dy = if d.dim() == 1 { 0.0 } else { x[1] - center[1] };
                let r2 = (dx * dx + dy * dy) / (radius * radius);
                if r2 < 1.0 {
                    amplitude * (1.0 - 1.0 / (1.0 - r2)).exp()
                } else {
                    0.0
                }
            }
            FunctionSpec::Noise {
                seed,
                k_lo,
                k_hi,
                amplitude,
            } => {
                if d.in_ball(x, *k_hi) && !d.in_ball(x, *k_lo) {
                    amplitude * (2.0 * hash_unit(*seed, x) - 1.0)
                } else {
                    0.0
                }
            }
            FunctionSpec::Dilated { k, inner } => inner.eval(&d.apply_power(-k, x), d),
            FunctionSpec::Translated { shift, inner } => {
                inner.eval(&[x[0] - shift[0], x[1] - shift[1]], d)
            }
            FunctionSpec::Scaled { factor, inner } => factor * inner.eval(x, d),
            FunctionSpec::Sum { parts } => parts.iter().map(|p| p.eval(x, d)).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::make_dilation;

    #[test]
    fn grid_layout() {
        let g = Grid::new(2, 1.0, 4).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.center(0), [-0.75, -0.75]);
        assert_eq!(g.center(5), [-0.25, -0.25]);
        assert_eq!(g.split(g.flat(3, 2)), (3, 2));
        assert!(Grid::new(3, 1.0, 4).is_err());
        assert!(Grid::new(1, -1.0, 4).is_err());
    }

    #[test]
    fn mismatched_grids_never_combine() {
        let a = GridFunction::zeros(Grid::new(1, 1.0, 8).unwrap());
        let b = GridFunction::zeros(Grid::new(1, 1.0, 16).unwrap());
        assert_eq!(a.add(&b), Err(Error::GridMismatch));
        assert!(GridFunction::new(*a.grid(), vec![f64::NAN; 8]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid::new(2, 1.5, 4).unwrap();
        let f = GridFunction::from_fn(g, |x| x[0] * 3.0 - x[1]);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = GridFunction::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, f);
        assert!(GridFunction::read_csv("nope\n".as_bytes()).is_err());
    }

    #[test]
    fn one_d_annuli_are_dyadic() {
        let d = make_dilation(&[vec![2.0]]).unwrap();
        let geo = GridGeometry::new(&d, Grid::new(1, 1.0, 64).unwrap()).unwrap();
        // B_0 = (-1/2, 1/2) holds exactly half the cells
        assert_eq!(geo.ball_count(0), 32);
        assert_eq!(geo.annulus_count(0), 16);
        assert_eq!(geo.k_max(), 1);
        // diam(B_k) = 2^k < 4 * (1/32)  =>  k_min = -4
        assert_eq!(geo.k_min(), -4);
        let f = geo.sample(&FunctionSpec::Indicator { k: 0 });
        assert!((f.integral() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spec_json_round_trip() {
        let s = FunctionSpec::Dilated {
            k: -2,
            inner: Box::new(FunctionSpec::Noise {
                seed: 9,
                k_lo: -1,
                k_hi: 0,
                amplitude: 2.0,
            }),
        };
        let text = serde_json::to_string(&s).unwrap();
        let back: FunctionSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}

//! Expansive dilations and the anisotropic geometry they generate.
//!
//! A [`Dilation`] fixes an ellipsoid `Δ = {x : xᵀ M x < r₀²}` of unit volume
//! with `A Δ ⊃ c Δ`, the nested balls `B_k = A^k Δ`, the annuli
//! `C_k = B_k \ B_{k-1}` and the step quasi-norm `ρ(x) = b^j` on
//! `B_{j+1} \ B_j`. Only `n = 1` and `n = 2` are supported; one-dimensional
//! data is stored zero-padded in the same 2×2 layout.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Point = [f64; 2];
pub type Mat2 = [[f64; 2]; 2];

const FORM_TERM_TOL: f64 = 1e-12;
const MAX_INDEX_STEPS: usize = 8192;

#[derive(Debug, Clone, Serialize)]
pub struct Dilation {
    dim: usize,
    matrix: Mat2,
    inverse: Mat2,
    b: f64,
    eigen_moduli: Vec<f64>,
    lambda_minus: f64,
    lambda_plus: f64,
    c_growth: f64,
    ellipsoid_form: Mat2,
    radius: f64,
    unit_form: Mat2,
    w: i32,
    form_terms: usize,
}

fn matvec(m: &Mat2, v: &Point) -> Point {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn quad_form(m: &Mat2, v: &Point) -> f64 {
    let mv = matvec(m, v);
    v[0] * mv[0] + v[1] * mv[1]
}

fn to_dmatrix(m: &Mat2, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| m[i][j])
}

fn from_dmatrix(m: &DMatrix<f64>) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[i][j] = m[(i, j)];
        }
    }
    out
}

/// Volume of the Euclidean unit ball in dimension `dim` (1 or 2).
pub fn unit_ball_volume(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        _ => std::f64::consts::PI,
    }
}

/// Build a [`Dilation`] from matrix rows.
pub fn make_dilation(rows: &[Vec<f64>]) -> Result<Dilation> {
    Dilation::new(rows)
}

impl Dilation {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        if n == 0 || n > 2 {
            return Err(Error::BadDim(n));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::BadParams("matrix entries must be finite".into()));
        }
        let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        let mut moduli: Vec<f64> = a.complex_eigenvalues().iter().map(|z| z.norm()).collect();
        moduli.sort_by(|x, y| x.total_cmp(y));
        if let Some(&m) = moduli.iter().find(|&&m| m <= 1.0) {
            return Err(Error::NotExpansive(m));
        }
        let inv = a.clone().try_inverse().ok_or(Error::NotExpansive(0.0))?;
        let b = a.determinant().abs();
        let lambda_minus = 0.5 * (1.0 + moduli[0]);
        let lambda_plus = 2.0 * moduli[n - 1];
        let c = 0.5 * (1.0 + lambda_minus);

        // M = Σ c^{2k} (A^{-k})ᵀ A^{-k}, truncated once a term drops below tolerance.
        let mut form = DMatrix::<f64>::zeros(n, n);
        let mut power = DMatrix::<f64>::identity(n, n);
        let mut weight = 1.0f64;
        let mut terms = 0;
        loop {
            let term = power.transpose() * &power * weight;
            let norm = term.norm();
            form += &term;
            terms += 1;
            if norm < FORM_TERM_TOL || terms > 100_000 {
                break;
            }
            power = &inv * power;
            weight *= c * c;
        }
        let det_m = form.determinant();
        let omega = unit_ball_volume(n);
        // r₀ⁿ ω_n / √det M = 1
        let r0_sq = match n {
            1 => det_m * 0.25,
            _ => det_m.sqrt() / omega,
        };
        let unit = &form / r0_sq;

        let mut d = Dilation {
            dim: n,
            matrix: from_dmatrix(&a),
            inverse: from_dmatrix(&inv),
            b,
            eigen_moduli: moduli,
            lambda_minus,
            lambda_plus,
            c_growth: c,
            ellipsoid_form: from_dmatrix(&form),
            radius: r0_sq.sqrt(),
            unit_form: from_dmatrix(&unit),
            w: 0,
            form_terms: terms,
        };
        d.w = d.compute_w()?;
        Ok(d)
    }

    /// Smallest `w ≥ 1` with `‖2 A^{-w}‖_{M→M} ≤ 1`, i.e. `2B₀ ⊂ B_w`.
    fn compute_w(&self) -> Result<i32> {
        let n = self.dim;
        let m = to_dmatrix(&self.ellipsoid_form, n);
        let chol = m
            .cholesky()
            .ok_or_else(|| Error::BadParams("ellipsoid form is not positive definite".into()))?;
        let l = chol.l();
        let lt = l.transpose();
        let lt_inv = lt
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::BadParams("singular Cholesky factor".into()))?;
        let inv = to_dmatrix(&self.inverse, n);
        let mut power = inv.clone();
        for w in 1..=256 {
            let s = &lt * (&power * 2.0) * &lt_inv;
            let norm = s.singular_values().max();
            if norm <= 1.0 + 1e-12 {
                return Ok(w);
            }
            power = &inv * power;
        }
        Err(Error::BadParams("could not determine w".into()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }
    /// `b = |det A|`.
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }
    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }
    pub fn eigen_moduli(&self) -> &[f64] {
        &self.eigen_moduli
    }
    pub fn c_growth(&self) -> f64 {
        self.c_growth
    }
    pub fn ellipsoid_form(&self) -> Mat2 {
        self.ellipsoid_form
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn w(&self) -> i32 {
        self.w
    }
    /// Quasi-triangle constant `b^w`.
    pub fn quasi_triangle_constant(&self) -> f64 {
        self.b.powi(self.w)
    }

    pub fn apply(&self, x: &Point) -> Point {
        matvec(&self.matrix, x)
    }

    pub fn apply_inverse(&self, x: &Point) -> Point {
        matvec(&self.inverse, x)
    }

    /// `A^k x` for any integer `k`.
    pub fn apply_power(&self, k: i32, x: &Point) -> Point {
        let m = if k >= 0 { &self.matrix } else { &self.inverse };
        let mut v = *x;
        for _ in 0..k.unsigned_abs() {
            v = matvec(m, &v);
        }
        v
    }

    /// `‖x‖_M = √(xᵀMx)`.
    pub fn form_norm(&self, x: &Point) -> f64 {
        quad_form(&self.ellipsoid_form, x).sqrt()
    }

    /// `xᵀUx`, below 1 exactly on Δ = B₀.
    #[inline]
    pub fn unit_quad(&self, x: &Point) -> f64 {
        quad_form(&self.unit_form, x)
    }

    /// Membership in the unit ellipsoid Δ = B₀.
    #[inline]
    pub fn in_unit_ball(&self, x: &Point) -> bool {
        self.unit_quad(x) < 1.0
    }

    /// `x ∈ B_k ⟺ A^{-k} x ∈ Δ`.
    pub fn in_ball(&self, x: &Point, k: i32) -> bool {
        self.in_unit_ball(&self.apply_power(-k, x))
    }

    /// The unique `j` with `x ∈ B_{j+1} \ B_j`.
    pub fn annulus_index(&self, x: &Point) -> Result<i32> {
        if x[0] == 0.0 && (self.dim == 1 || x[1] == 0.0) {
            return Err(Error::OriginQuery);
        }
        if !x[0].is_finite() || !x[1].is_finite() {
            return Err(Error::BadParams("non-finite point".into()));
        }
        let mut v = if self.dim == 1 { [x[0], 0.0] } else { *x };
        let mut k = 0i32;
        if self.in_unit_ball(&v) {
            // walk down while A^{-(k-1)} x stays inside Δ
            for _ in 0..MAX_INDEX_STEPS {
                let next = matvec(&self.matrix, &v);
                if self.in_unit_ball(&next) {
                    v = next;
                    k -= 1;
                } else {
                    break;
                }
            }
        } else {
            for _ in 0..MAX_INDEX_STEPS {
                v = matvec(&self.inverse, &v);
                k += 1;
                if self.in_unit_ball(&v) {
                    break;
                }
            }
        }
        // k is now the smallest index with x ∈ B_k
        Ok(k - 1)
    }

    /// Step quasi-norm: `b^j` on `B_{j+1} \ B_j`, zero at the origin.
    pub fn rho(&self, x: &Point) -> f64 {
        match self.annulus_index(x) {
            Ok(j) => self.b.powi(j),
            Err(_) => 0.0,
        }
    }

    /// Quadratic form describing `B_k = {x : xᵀ Q_k x < 1}`.
    pub fn ball_form(&self, k: i32) -> Mat2 {
        let m = if k >= 0 { &self.inverse } else { &self.matrix };
        let mut p: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
        for _ in 0..k.unsigned_abs() {
            p = matmul(m, &p);
        }
        matmul(&transpose(&p), &matmul(&self.unit_form, &p))
    }

    /// Euclidean diameter of `B_k`.
    pub fn ball_diameter(&self, k: i32) -> f64 {
        let q = self.ball_form(k);
        let min_eig = if self.dim == 1 {
            q[0][0]
        } else {
            let tr = q[0][0] + q[1][1];
            let det = q[0][0] * q[1][1] - q[0][1] * q[1][0];
            let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
            0.5 * tr - disc
        };
        2.0 / min_eig.sqrt()
    }

    /// Largest `|x_i|` over `B_k` along each coordinate axis.
    pub fn ball_extent(&self, k: i32) -> Point {
        let q = self.ball_form(k);
        if self.dim == 1 {
            return [1.0 / q[0][0].sqrt(), 0.0];
        }
        // support function of an ellipse: max x_i = sqrt((Q^{-1})_{ii})
        let det = q[0][0] * q[1][1] - q[0][1] * q[1][0];
        [(q[1][1] / det).sqrt(), (q[0][0] / det).sqrt()]
    }

    /// Nominal measure `|B_k| = b^k`.
    pub fn ball_volume(&self, k: i32) -> f64 {
        self.b.powi(k)
    }

    /// `‖A x‖_M / ‖x‖_M`; never below `c_growth` for `x ≠ 0`.
    pub fn growth_ratio(&self, x: &Point) -> f64 {
        self.form_norm(&self.apply(x)) / self.form_norm(x)
    }

    /// `(volume of Δ) = r₀ⁿ ω_n / √det M`.
    pub fn unit_ball_measure(&self) -> f64 {
        let m = to_dmatrix(&self.ellipsoid_form, self.dim);
        self.radius.powi(self.dim as i32) * unit_ball_volume(self.dim) / m.determinant().sqrt()
    }

    pub fn form_terms(&self) -> usize {
        self.form_terms
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct QuasiTriangleReport {
    pub check: String,
    pub max_ratio: f64,
    pub bound: f64,
    pub pass: bool,
    pub samples: usize,
}

/// Largest `ρ(x+y) / (ρ(x)+ρ(y))` over the sample pairs, checked against `b^w`.
pub fn check_quasi_triangle(
    d: &Dilation,
    samples: &[(Point, Point)],
) -> Result<QuasiTriangleReport> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let ratios = crate::par::map_slice(samples, |(x, y)| {
        let den = d.rho(x) + d.rho(y);
        if den == 0.0 {
            0.0
        } else {
            d.rho(&[x[0] + y[0], x[1] + y[1]]) / den
        }
    });
    let max_ratio = ratios.into_iter().fold(0.0, f64::max);
    let bound = d.quasi_triangle_constant();
    Ok(QuasiTriangleReport {
        check: "quasi_triangle".into(),
        max_ratio,
        bound,
        pass: max_ratio <= bound,
        samples: samples.len(),
    })
}

/// Parse `"2 1; 0 2"` (rows separated by `;`, entries by whitespace or `,`).
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|row| {
            row.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
                })
                .collect()
        })
        .collect()
}

//! Central atoms with vanishing moments, a fixed smooth mollifier and its
//! radial maximal function, and the atomic sum and size-condition checks.
//!
//! The grand maximal function over a whole test-function class is replaced
//! by the radial maximal function of one mollifier, which only bounds it
//! from below.

use serde::{Deserialize, Serialize};

use crate::dilation::{Dilation, Point};
use crate::error::{Error, Result};
use crate::grandseq::{grand_norm_detailed, Sequence};
use crate::grid::{GridFunction, GridGeometry};
use crate::herz::{grand_herz_norm, HerzSpaceParams};
use crate::operators::{support_list, OffsetTable, OperatorSpec};
use crate::par;
use crate::varlebesgue::luxemburg_norm;

/// Largest supported moment order.
pub const MAX_MOMENT_ORDER: u32 = 4;

fn bump_profile(r2: f64) -> f64 {
    if r2 < 1.0 {
        (-1.0 / (1.0 - r2)).exp()
    } else {
        0.0
    }
}

/// `∫_{|u|<1} exp(−1/(1−|u|²)) du` over the Euclidean unit ball, by
/// composite Simpson in the radius.
fn bump_mass(dim: usize) -> f64 {
    let n = 20_000;
    let h = 1.0 / n as f64;
    let g = |t: f64| {
        let w = if dim == 1 {
            2.0
        } else {
            2.0 * std::f64::consts::PI * t
        };
        w * bump_profile(t * t)
    };
    let mut s = g(0.0) + g(1.0);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
    }
    s * h / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormEntry {
    /// Derivative multi-index.
    pub order: [u32; 2],
    pub m: u32,
    pub value: f64,
}

/// `φ(x) = exp(−1/(1−xᵀUx)) / c` on `B₀`, with `c` the exact mass of the
/// profile over the unit-volume ellipsoid.
#[derive(Debug, Clone)]
pub struct Mollifier {
    dilation: Dilation,
    normalizer: f64,
    /// Samples on the grid, renormalized to unit discrete mass.
    pub phi: GridFunction,
    /// Grid mass of the analytic `φ` before renormalization.
    pub quadrature_mass: f64,
    pub seminorms: Vec<SeminormEntry>,
    /// Largest tracked `sup ρ(x)^m |∂^β φ(x)|`.
    pub seminorm_budget: f64,
}

impl Mollifier {
    pub fn new(geo: &GridGeometry) -> Result<Self> {
        let d = geo.dilation().clone();
        check_resolvable(geo, 0)?;
        // Δ is the image of the Euclidean unit ball under a map of determinant
        // 1/ω_n, so the profile mass scales the same way
        let normalizer = bump_mass(d.dim()) / crate::dilation::unit_ball_volume(d.dim());
        let raw = GridFunction::from_fn(*geo.grid(), |x| bump_profile(d.unit_quad(x)) / normalizer);
        let quadrature_mass = raw.integral();
        let phi = raw.scale(1.0 / quadrature_mass);
        let mut m = Mollifier {
            dilation: d,
            normalizer,
            phi,
            quadrature_mass,
            seminorms: Vec::new(),
            seminorm_budget: 0.0,
        };
        m.seminorms = m.estimate_seminorms(geo);
        m.seminorm_budget = m.seminorms.iter().map(|e| e.value).fold(0.0, f64::max);
        Ok(m)
    }

    /// Analytic `φ(x)`.
    pub fn eval(&self, x: &Point) -> f64 {
        bump_profile(self.dilation.unit_quad(x)) / self.normalizer
    }

    /// Analytic `φ_k(x) = b^{−k} φ(A^{−k} x)`.
    pub fn eval_dilate(&self, x: &Point, k: i32) -> f64 {
        self.dilation.b().powi(-k) * self.eval(&self.dilation.apply_power(-k, x))
    }

    fn estimate_seminorms(&self, geo: &GridGeometry) -> Vec<SeminormEntry> {
        let dim = geo.grid().dim();
        let step = 1e-4 * self.dilation.ball_diameter(0);
        let mut orders = vec![[0, 0], [1, 0]];
        if dim == 2 {
            orders.push([0, 1]);
        }
        let mut out = Vec::new();
        for order in orders {
            let deriv = |x: &Point| -> f64 {
                if order == [0, 0] {
                    return self.eval(x);
                }
                let axis = if order[0] == 1 { 0 } else { 1 };
                let mut a = *x;
                let mut b = *x;
                a[axis] += step;
                b[axis] -= step;
                (self.eval(&a) - self.eval(&b)) / (2.0 * step)
            };
            for m in 0..=2u32 {
                let value = par::max_range(geo.grid().len(), |i| {
                    let x = geo.grid().center(i);
                    geo.rho_at(i).powi(m as i32) * deriv(&x).abs()
                });
                out.push(SeminormEntry { order, m, value });
            }
        }
        out
    }
}

/// `supp φ_k = B_k` must span at least four cells along every axis.
fn check_resolvable(geo: &GridGeometry, k: i32) -> Result<()> {
    let ext = geo.dilation().ball_extent(k);
    let cells = 4.0 * geo.grid().spacing();
    let dim = geo.grid().dim();
    if ext.iter().take(dim).any(|e| 2.0 * e < cells) {
        return Err(Error::UnresolvableScale(k));
    }
    Ok(())
}

/// Sampled `φ_k`, renormalized to unit grid mass.
pub fn dilate_phi(phi: &Mollifier, geo: &GridGeometry, k: i32) -> Result<GridFunction> {
    check_resolvable(geo, k)?;
    if k == 0 {
        return Ok(phi.phi.clone());
    }
    let raw = GridFunction::from_fn(*geo.grid(), |x| phi.eval_dilate(x, k));
    let mass = raw.integral();
    Ok(raw.scale(1.0 / mass))
}

/// `max_{k ∈ krange} |f ∗ φ_k|` by discrete convolution on the grid.
pub fn radial_maximal(
    f: &GridFunction,
    phi: &Mollifier,
    geo: &GridGeometry,
    krange: (i32, i32),
) -> Result<GridFunction> {
    geo.check(f)?;
    if krange.0 > krange.1 {
        return Err(Error::BadParams(format!("empty krange {krange:?}")));
    }
    for k in krange.0..=krange.1 {
        check_resolvable(geo, k)?;
    }
    let grid = *geo.grid();
    let vol = grid.cell_volume();
    let support = support_list(f);
    let mut best = vec![0.0f64; grid.len()];
    for k in krange.0..=krange.1 {
        let table = OffsetTable::new(geo, |x| phi.eval_dilate(x, k));
        let conv = par::map_range(grid.len(), |i| {
            let (ix, iy) = grid.split(i);
            let (ix, iy) = (ix as i64, iy as i64);
            let s: f64 = support
                .iter()
                .map(|&(jx, jy, v)| v * table.get(ix, iy, jx, jy))
                .sum();
            (s * vol).abs()
        });
        for (b, c) in best.iter_mut().zip(conv) {
            *b = b.max(c);
        }
    }
    GridFunction::new(grid, best)
}

/// Multi-indices `β` with `|β| ≤ s`.
pub fn multi_indices(dim: usize, s: u32) -> Vec<[u32; 2]> {
    let mut out = Vec::new();
    for total in 0..=s {
        if dim == 1 {
            out.push([total, 0]);
        } else {
            for i in (0..=total).rev() {
                out.push([i, total - i]);
            }
        }
    }
    out
}

fn monomial(x: &Point, beta: [u32; 2]) -> f64 {
    x[0].powi(beta[0] as i32) * x[1].powi(beta[1] as i32)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEntry {
    pub beta: [u32; 2],
    pub value: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomReport {
    pub k: i32,
    pub s: u32,
    pub support_ok: bool,
    pub norm: f64,
    pub bound: f64,
    pub norm_ok: bool,
    pub moments: Vec<MomentEntry>,
    pub moments_ok: bool,
    /// Present when restricted type was requested: `k ≥ 0`.
    pub restricted_ok: Option<bool>,
    /// `⌊(α − δ₂) ln b / ln λ₋⌋` with `α = max(α(0), α_∞)`.
    pub s_min: i64,
    pub s_admissible: bool,
    pub pass: bool,
}

/// Relative moment tolerance, scaled by `‖a‖_{L¹} · sup_{supp a} |x^β|`.
pub const MOMENT_REL_TOL: f64 = 1e-8;

/// The four atom conditions at scale `k` and moment order `s`.
pub fn atom_validate(
    a: &GridFunction,
    k: i32,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    s: u32,
    restricted: bool,
) -> Result<AtomReport> {
    geo.check(a)?;
    let grid = geo.grid();
    let vals = a.values();
    let support_ok = (0..vals.len()).all(|i| vals[i] == 0.0 || geo.in_ball(i, k));
    let norm = luxemburg_norm(a, &params.q);
    let d = geo.dilation();
    let bound = d.ball_volume(k).powf(-params.alpha_for_scale(k)?);
    let norm_ok = norm <= bound * (1.0 + 1e-9);
    let l1 = a.l1_norm();
    let support = a.support();
    let vol = grid.cell_volume();
    let moments: Vec<MomentEntry> = multi_indices(grid.dim(), s)
        .into_iter()
        .map(|beta| {
            let value = vol
                * crate::numeric::compensated_sum(
                    support
                        .iter()
                        .map(|&i| vals[i] * monomial(&grid.center(i), beta)),
                );
            let scale = support
                .iter()
                .map(|&i| monomial(&grid.center(i), beta).abs())
                .fold(0.0, f64::max);
            let tolerance = MOMENT_REL_TOL * l1 * scale;
            MomentEntry {
                beta,
                value,
                tolerance,
                ok: value.abs() <= tolerance,
            }
        })
        .collect();
    let moments_ok = moments.iter().all(|m| m.ok);
    let restricted_ok = restricted.then_some(k >= 0);
    let alpha = params.alpha_at_origin().max(params.alpha_at_infinity()?);
    let delta2 = params.resolve_delta2(geo)?;
    let s_min = ((alpha - delta2) * d.b().ln() / d.lambda_minus().ln()).floor() as i64;
    Ok(AtomReport {
        k,
        s,
        support_ok,
        norm,
        bound,
        norm_ok,
        moments,
        moments_ok,
        restricted_ok,
        s_min,
        s_admissible: s as i64 >= s_min,
        pass: support_ok && norm_ok && moments_ok && restricted_ok.unwrap_or(true),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    /// `+1` where `(A^{−k}x)₁ < 0`, `−1` elsewhere on `B_k`.
    Haar,
    /// Smooth bump on `B_k` minus its projection onto polynomials of degree ≤ s.
    BumpCorrected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub data: GridFunction,
    pub k: i32,
    pub s: u32,
    pub kind: AtomKind,
    pub params: HerzSpaceParams,
}

/// Remove the span of `basis` from `v` under the plain dot product
/// (modified Gram–Schmidt, two passes). `basis` must be orthonormal.
fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for e in basis {
            let c: f64 = v.iter().zip(e).map(|(a, b)| a * b).sum();
            for (a, b) in v.iter_mut().zip(e) {
                *a -= c * b;
            }
        }
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Round to multiples of a power of two and push the integer residual into
/// the largest entry, so the plain sum of the result is exactly zero and
/// every partial sum is exact.
fn quantize_mean_zero(values: &mut [f64]) {
    let m = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return;
    }
    let cells = values.iter().filter(|v| **v != 0.0).count().max(1);
    let bits = 36.min(52 - (cells as f64).log2().ceil() as i32);
    let q = 2f64.powi(m.log2().floor() as i32 - bits);
    let mut ints: Vec<i64> = values.iter().map(|v| (v / q).round() as i64).collect();
    let total: i64 = ints.iter().sum();
    let (imax, _) = ints
        .iter()
        .enumerate()
        .max_by_key(|(_, v)| v.unsigned_abs())
        .expect("nonempty");
    ints[imax] -= total;
    for (v, i) in values.iter_mut().zip(ints) {
        *v = i as f64 * q;
    }
}

/// Build an atom of the given kind at scale `k` with vanishing moments up to
/// order `s`, scaled so its norm meets the size bound.
pub fn atom_make(
    kind: AtomKind,
    k: i32,
    s: u32,
    geo: &GridGeometry,
    params: &HerzSpaceParams,
) -> Result<Atom> {
    if s > MAX_MOMENT_ORDER {
        return Err(Error::IllConditioned(format!(
            "moment order {s} exceeds {MAX_MOMENT_ORDER}"
        )));
    }
    let grid = *geo.grid();
    let d = geo.dilation();
    let cells = geo.ball_cells(k);
    let betas = multi_indices(grid.dim(), s);
    if cells.len() < 4 * betas.len() {
        return Err(Error::UnresolvableScale(k));
    }
    // scaled coordinates u = A^{-k} x keep the monomials of order one
    let coords: Vec<Point> = cells
        .iter()
        .map(|&i| d.apply_power(-k, &grid.center(i)))
        .collect();
    let mut v: Vec<f64> = coords
        .iter()
        .map(|u| match kind {
            AtomKind::Haar => {
                if u[0] < 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            AtomKind::BumpCorrected => bump_profile(d.unit_quad(u)),
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(betas.len());
    for &beta in &betas {
        let mut e: Vec<f64> = coords.iter().map(|u| monomial(u, beta)).collect();
        let before = norm2(&e);
        project_out(&mut e, &basis);
        let after = norm2(&e);
        if !(after > 1e-8 * before) {
            return Err(Error::IllConditioned(format!(
                "monomial {beta:?} is dependent on lower orders at scale {k}"
            )));
        }
        e.iter_mut().for_each(|x| *x /= after);
        basis.push(e);
    }
    project_out(&mut v, &basis);
    if norm2(&v) == 0.0 {
        return Err(Error::IllConditioned(
            "projection removed the whole bump".into(),
        ));
    }
    let mut values = vec![0.0; grid.len()];
    for (&i, &x) in cells.iter().zip(&v) {
        values[i] = x;
    }
    let raw = GridFunction::new(grid, values)?;
    let bound = d.ball_volume(k).powf(-params.alpha_for_scale(k)?);
    let mut values = raw
        .scale(bound / luxemburg_norm(&raw, &params.q))
        .into_values();
    quantize_mean_zero(&mut values);
    Ok(Atom {
        data: GridFunction::new(grid, values)?,
        k,
        s,
        kind,
        params: params.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicSumReport {
    pub atoms: usize,
    /// Grand Herz norm of the radial maximal function of `Σ λ_i a_i`.
    pub maximal_norm: f64,
    /// Grand sequence norm of the coefficients.
    pub coefficient_norm: f64,
    pub ratio: f64,
    pub degenerate: bool,
}

/// `R = ‖M_φ(Σ λ_i a_i)‖ / ‖λ‖`; every atom must validate at its own scale.
pub fn atomic_sum_check(
    atoms: &[Atom],
    lambdas: &[f64],
    geo: &GridGeometry,
    params: &HerzSpaceParams,
    phi: &Mollifier,
    krange: (i32, i32),
) -> Result<AtomicSumReport> {
    if atoms.len() != lambdas.len() {
        return Err(Error::BadParams(format!(
            "{} atoms for {} coefficients",
            atoms.len(),
            lambdas.len()
        )));
    }
    let mut f = GridFunction::zeros(*geo.grid());
    for (atom, &lam) in atoms.iter().zip(lambdas) {
        let r = atom_validate(&atom.data, atom.k, geo, params, atom.s, false)?;
        if !r.pass {
            return Err(Error::InvalidAtom(format!(
                "atom at scale {} fails validation",
                atom.k
            )));
        }
        f = f.add(&atom.data.scale(lam))?;
    }
    let coefficient_norm = grand_norm_detailed(
        &Sequence::new(0, lambdas.to_vec())?.values,
        &params.seq_params()?,
    )
    .value;
    if coefficient_norm == 0.0 {
        return Ok(AtomicSumReport {
            atoms: atoms.len(),
            maximal_norm: 0.0,
            coefficient_norm,
            ratio: 0.0,
            degenerate: true,
        });
    }
    let m = radial_maximal(&f, phi, geo, krange)?;
    let maximal_norm = grand_herz_norm(&m, geo, params)?.norm;
    Ok(AtomicSumReport {
        atoms: atoms.len(),
        maximal_norm,
        coefficient_norm,
        ratio: maximal_norm / coefficient_norm,
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeConditionReport {
    pub operator: String,
    /// Cells satisfying the far-field trigger.
    pub far_field_points: usize,
    /// Tightest `C` in `|Ta(x)| ≤ C ‖a‖_{L¹} / ρ(x)²` over those cells.
    pub constant: f64,
    pub far_field_max: f64,
    /// Every far-field value is exactly zero.
    pub exact_zero: bool,
}

/// Far-field size condition for a mean-zero atom: at every cell with
/// `min_{y ∈ supp a} ρ(x − y) ≥ b^{−w}(1 − 1/b) ρ(x)` record
/// `|Ta(x)| ρ(x)² / ‖a‖_{L¹}`.
pub fn size_condition_check(
    op: &OperatorSpec,
    atom: &Atom,
    geo: &GridGeometry,
) -> Result<SizeConditionReport> {
    let a = &atom.data;
    geo.check(a)?;
    let l1 = a.l1_norm();
    let mean = a.integral();
    if mean.abs() > 1e-12 * l1 {
        return Err(Error::NonZeroMean(mean));
    }
    let ta = op.apply(a, geo)?;
    let d = geo.dilation();
    let grid = *geo.grid();
    let factor = d.b().powi(-d.w()) * (1.0 - 1.0 / d.b());
    let rho = OffsetTable::new(geo, |x| d.rho(x));
    let support = support_list(a);
    let rows = par::map_range(grid.len(), |i| {
        let r = geo.rho_at(i);
        if r == 0.0 || support.is_empty() {
            return None;
        }
        let (ix, iy) = grid.split(i);
        let (ix, iy) = (ix as i64, iy as i64);
        let dist = support
            .iter()
            .map(|&(jx, jy, _)| rho.get(ix, iy, jx, jy))
            .fold(f64::INFINITY, f64::min);
        (dist >= factor * r).then(|| ta.values()[i].abs() * r * r)
    });
    let far: Vec<f64> = rows.into_iter().flatten().collect();
    let far_field_max = far.iter().copied().fold(0.0, f64::max);
    let constant = if l1 > 0.0 { far_field_max / l1 } else { 0.0 };
    Ok(SizeConditionReport {
        operator: op.name().into(),
        far_field_points: far.len(),
        constant,
        far_field_max,
        exact_zero: far_field_max == 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FunctionSpec, Grid};

    fn line(n: usize) -> GridGeometry {
        let d = Dilation::new(&[vec![2.0]]).unwrap();
        GridGeometry::new(&d, Grid::new(1, 1.0, n).unwrap()).unwrap()
    }

    fn plane(n: usize) -> GridGeometry {
        let d = Dilation::new(&[vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap();
        GridGeometry::new(&d, Grid::new(2, 2.0, n).unwrap()).unwrap()
    }

    fn haar_params() -> HerzSpaceParams {
        HerzSpaceParams::constant(0.5, 1.0, 2.0, 1.0)
            .unwrap()
            .with_delta2(0.5)
    }

    #[test]
    fn mollifier_mass_and_dilates() {
        let geo = line(2048);
        let phi = Mollifier::new(&geo).unwrap();
        assert!((phi.quadrature_mass - 1.0).abs() < 1e-8);
        assert!((phi.phi.integral() - 1.0).abs() < 1e-12);
        assert_eq!(dilate_phi(&phi, &geo, 0).unwrap(), phi.phi);
        for k in -2..=2 {
            let pk = dilate_phi(&phi, &geo, k).unwrap();
            assert!((pk.integral() - 1.0).abs() < 1e-6);
            for i in pk.support() {
                assert!(geo.in_ball(i, k));
            }
        }
        assert_eq!(
            dilate_phi(&phi, &geo, -12),
            Err(Error::UnresolvableScale(-12))
        );
        assert!(phi.seminorm_budget.is_finite() && phi.seminorm_budget > 0.0);
        let geo2 = plane(64);
        let phi2 = Mollifier::new(&geo2).unwrap();
        assert!(
            (phi2.quadrature_mass - 1.0).abs() < 1e-3,
            "{}",
            phi2.quadrature_mass
        );
    }

    #[test]
    fn radial_maximal_basics() {
        let geo = line(512);
        let phi = Mollifier::new(&geo).unwrap();
        let kr = (-2, 1);
        let z = GridFunction::zeros(*geo.grid());
        assert!(radial_maximal(&z, &phi, &geo, kr).unwrap().is_zero());
        let m = radial_maximal(&phi.phi, &phi, &geo, kr).unwrap();
        assert!(m.values()[255] > 0.0);
        let m2 = radial_maximal(&phi.phi.scale(-3.0), &phi, &geo, kr).unwrap();
        assert!(m2.max_abs_diff(&m.scale(3.0)).unwrap() < 1e-12);
    }

    #[test]
    fn haar_example() {
        let geo = line(1024);
        let a = geo
            .sample(&FunctionSpec::Interval { lo: -0.5, hi: 0.0 })
            .sub(&geo.sample(&FunctionSpec::Interval { lo: 0.0, hi: 0.5 }))
            .unwrap();
        let params = haar_params();
        let r0 = atom_validate(&a, 0, &geo, &params, 0, false).unwrap();
        assert!(r0.pass && (r0.norm - 1.0).abs() < 1e-12 && r0.s_min == 0);
        let r1 = atom_validate(&a, 0, &geo, &params, 1, false).unwrap();
        assert!(!r1.pass);
        assert!((r1.moments[1].value + 0.25).abs() < 1e-8);
        let made = atom_make(AtomKind::Haar, 0, 0, &geo, &params).unwrap();
        assert_eq!(made.data, a);
        let z = GridFunction::zeros(*geo.grid());
        for s in 0..3 {
            assert!(atom_validate(&z, 0, &geo, &params, s, false).unwrap().pass);
        }
    }

    #[test]
    fn made_atoms_validate() {
        let params = haar_params();
        let geo = line(2048);
        for kind in [AtomKind::Haar, AtomKind::BumpCorrected] {
            for k in -3..=0 {
                for s in 0..=4 {
                    let atom = atom_make(kind, k, s, &geo, &params).unwrap();
                    let r = atom_validate(&atom.data, k, &geo, &params, s, false).unwrap();
                    assert!(r.pass, "{kind:?} k={k} s={s}: {r:?}");
                    assert!((r.norm - r.bound).abs() <= 1e-9 * r.bound);
                    assert_eq!(atom.data.values().iter().sum::<f64>(), 0.0);
                }
            }
        }
        let geo = plane(64);
        for s in 0..=2 {
            let atom = atom_make(AtomKind::BumpCorrected, 0, s, &geo, &params).unwrap();
            assert!(
                atom_validate(&atom.data, 0, &geo, &params, s, false)
                    .unwrap()
                    .pass
            );
        }
        assert!(matches!(
            atom_make(AtomKind::Haar, 0, 5, &geo, &params),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn hardy_far_field_exact_zero() {
        let geo = line(1024);
        let params = haar_params();
        for kind in [AtomKind::Haar, AtomKind::BumpCorrected] {
            let atom = atom_make(kind, -1, 1, &geo, &params).unwrap();
            let r = size_condition_check(&OperatorSpec::Hardy, &atom, &geo).unwrap();
            assert!(
                r.far_field_points > 0 && r.exact_zero && r.constant == 0.0,
                "{r:?}"
            );
            let r = size_condition_check(&OperatorSpec::Identity, &atom, &geo).unwrap();
            assert!(r.exact_zero);
        }
        let bump = geo.sample(&FunctionSpec::Indicator { k: 0 });
        let fake = Atom {
            data: bump,
            k: 0,
            s: 0,
            kind: AtomKind::Haar,
            params,
        };
        assert!(matches!(
            size_condition_check(&OperatorSpec::Hardy, &fake, &geo),
            Err(Error::NonZeroMean(_))
        ));
    }

    #[test]
    fn atomic_sum_homogeneity() {
        let geo = line(512);
        let params = haar_params();
        let phi = Mollifier::new(&geo).unwrap();
        let atoms: Vec<Atom> = (-2..=0)
            .map(|k| atom_make(AtomKind::BumpCorrected, k, 1, &geo, &params).unwrap())
            .collect();
        let kr = (-3, 1);
        let r = atomic_sum_check(&atoms, &[1.0, -0.5, 0.25], &geo, &params, &phi, kr).unwrap();
        let r2 = atomic_sum_check(&atoms, &[2.0, -1.0, 0.5], &geo, &params, &phi, kr).unwrap();
        assert!(r.ratio.is_finite() && r.ratio > 0.0);
        assert!((r.ratio - r2.ratio).abs() <= 1e-9 * r.ratio);
        let r0 = atomic_sum_check(&atoms, &[0.0; 3], &geo, &params, &phi, kr).unwrap();
        assert!(r0.degenerate);
    }
}

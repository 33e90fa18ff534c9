//! Independent reference values for the acceptance checks. Nothing here goes
//! through the grid, the slice machinery or the ε-grid optimizer of the main
//! code paths: the Herz values use closed-form geometric sums and every
//! supremum is taken on a dense grid.

use serde::Serialize;

/// Dense log-spaced maximization of `g(ln ε)` with a parabolic vertex
/// correction around the best sample.
fn dense_log_max<G: Fn(f64) -> f64>(g: G, eps_lo: f64, eps_hi: f64, points: usize) -> (f64, f64) {
    let (ulo, uhi) = (eps_lo.ln(), eps_hi.ln());
    let step = (uhi - ulo) / (points - 1) as f64;
    let mut best = (ulo, f64::NEG_INFINITY);
    let mut best_i = 0;
    for i in 0..points {
        let u = ulo + step * i as f64;
        let v = g(u);
        if v > best.1 {
            best = (u, v);
            best_i = i;
        }
    }
    if best_i > 0 && best_i + 1 < points {
        let (a, b, c) = (g(best.0 - step), best.1, g(best.0 + step));
        let denom = a - 2.0 * b + c;
        if denom < 0.0 {
            let shift = 0.5 * step * (a - c) / denom;
            let u = best.0 + shift;
            let v = g(u);
            if v > best.1 {
                best = (u, v);
            }
        }
    }
    (best.0.exp(), best.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: f64,
    /// Maximizing ε (`None` when the `ε → ∞` limit wins).
    pub argmax_eps: Option<f64>,
}

/// Grand sequence norm by a dense ε grid on `[1e-7, 1e7]`.
pub fn grand_seq_dense(x: &[f64], p: f64, theta: f64) -> OracleValue {
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return OracleValue {
            value: 0.0,
            argmax_eps: None,
        };
    }
    let g = |u: f64| {
        let eps = u.exp();
        let s = p * (1.0 + eps);
        let sum: f64 = x.iter().map(|v| (v.abs() / m).powf(s)).sum();
        (eps.powf(theta) * sum).powf(1.0 / s) * m
    };
    let (eps, v) = dense_log_max(g, 1e-7, 1e7, 50_001);
    if m > v {
        OracleValue {
            value: m,
            argmax_eps: None,
        }
    } else {
        OracleValue {
            value: v,
            argmax_eps: Some(eps),
        }
    }
}

/// Parameters of the constant-exponent unit-ball oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantHerzCase {
    /// `|det A|`.
    pub b: f64,
    pub alpha: f64,
    pub q: f64,
    pub p: f64,
    pub theta: f64,
    pub lambda: f64,
}

/// `Σ_{k ≤ top} t_k^s` for `f = χ_{B₀}`, where
/// `t_k = b^{kα} (b^k − b^{k−1})^{1/q}` for `k ≤ 0` and 0 above.
fn unit_ball_power_sum(c: &ConstantHerzCase, s: f64, top: i32) -> f64 {
    let top = top.min(0) as f64;
    let gamma = c.alpha + 1.0 / c.q;
    (1.0 - 1.0 / c.b).powf(s / c.q) * c.b.powf(top * s * gamma) / (1.0 - c.b.powf(-s * gamma))
}

/// Grand Herz norm of `χ_{B₀}` for constant exponents (the `ε`-sup of the
/// closed-form geometric sum).
pub fn constant_herz(c: &ConstantHerzCase) -> OracleValue {
    let g = |u: f64| {
        let eps = u.exp();
        let s = c.p * (1.0 + eps);
        (eps.powf(c.theta) * unit_ball_power_sum(c, s, 0)).powf(1.0 / s)
    };
    let (eps, v) = dense_log_max(g, 1e-7, 1e7, 200_001);
    let limit = (1.0 - 1.0 / c.b).powf(1.0 / c.q);
    if limit > v {
        OracleValue {
            value: limit,
            argmax_eps: None,
        }
    } else {
        OracleValue {
            value: v,
            argmax_eps: Some(eps),
        }
    }
}

/// Herz-Morrey norm of `χ_{B₀}` by brute force over `(ε, L)` with
/// `L ∈ [l_lo, l_hi]`.
pub fn constant_herz_morrey(c: &ConstantHerzCase, l_lo: i32, l_hi: i32) -> f64 {
    let mut best = 0.0f64;
    for l in l_lo..=l_hi {
        let weight = c.b.powf(-(l as f64) * c.lambda);
        let g = |u: f64| {
            let eps = u.exp();
            let s = c.p * (1.0 + eps);
            weight * (eps.powf(c.theta) * unit_ball_power_sum(c, s, l)).powf(1.0 / s)
        };
        let (_, v) = dense_log_max(g, 1e-7, 1e7, 50_001);
        let limit = weight
            * (1.0 - 1.0 / c.b).powf(1.0 / c.q)
            * c.b.powf(l.min(0) as f64 * (c.alpha + 1.0 / c.q));
        best = best.max(v).max(limit);
    }
    best
}

/// Luxemburg norm of a function taking value `value` on a set of measure
/// `mass` with constant exponent `exponent` on it, piece by piece:
/// the root of `Σ mass·(value/λ)^exponent = 1` by plain bisection on
/// `[1e-12, 1e12]` in `ln λ`.
pub fn luxemburg_piecewise(pieces: &[(f64, f64, f64)]) -> f64 {
    let modular = |lam: f64| -> f64 {
        pieces
            .iter()
            .map(|&(m, v, p)| m * (v.abs() / lam).powf(p))
            .sum()
    };
    if pieces.iter().all(|&(m, v, _)| m == 0.0 || v == 0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (
        -12.0f64 * std::f64::consts::LN_10,
        12.0 * std::f64::consts::LN_10,
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if modular(mid.exp()) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// `χ_{[0,2]}` with `p = 2` on `[0,1]` and `p = 4` on `[1,2]`: with
/// `t = λ^{-2}` the modular equation is `t + t² = 1`, so
/// `λ = ((√5 − 1)/2)^{−1/2}`.
pub fn luxemburg_two_piece() -> f64 {
    let t = (5f64.sqrt() - 1.0) / 2.0;
    t.powf(-0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_sequence() {
        let v = grand_seq_dense(&[1.0], 1.0, 1.0);
        assert!((v.value - 1.321_099_762_015_617_5).abs() < 1e-9);
        assert!((grand_seq_dense(&[1.0], 1.0, 2.0).value - 1.745_304_581_197_721).abs() < 1e-9);
    }

    #[test]
    fn two_piece_agrees() {
        let a = luxemburg_two_piece();
        let b = luxemburg_piecewise(&[(1.0, 1.0, 2.0), (1.0, 1.0, 4.0)]);
        assert!((a - 1.272_019_649_514_069).abs() < 1e-12);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn unit_ball_value() {
        let c = ConstantHerzCase {
            b: 2.0,
            alpha: 2.0,
            q: 2.0,
            p: 1.0,
            theta: 1.0,
            lambda: 0.0,
        };
        let v = constant_herz(&c);
        assert!((v.value - 0.934_230_579_341_922_7).abs() < 1e-10);
        assert!((constant_herz_morrey(&c, -30, 3) - v.value).abs() < 1e-9);
    }
}

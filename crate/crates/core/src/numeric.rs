//! Scalar numerics shared by the norm routines: golden-section maximization,
//! monotone bisection and compensated summation.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximize a unimodal `f` on `[lo, hi]` by golden-section search.
///
/// Stops when the bracket is narrower than `tol`. Returns `(argmax, max)`,
/// where the maximum also considers both endpoints so a monotone `f` is
/// handled correctly.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let (flo, fhi) = (f(lo), f(hi));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..500 {
        if hi - lo <= tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for cand in [(lo, flo), (hi, fhi)] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

/// Outcome of [`bisect_decreasing`].
#[derive(Debug, Clone, Copy)]
pub struct Bisection {
    pub root: f64,
    pub iterations: usize,
}

/// Find `x > 0` with `g(x) = target` for a strictly decreasing `g`.
///
/// The bracket starts at `start` and is grown or shrunk by powers of two
/// until it straddles the target; then bisection runs until the relative
/// width drops below `rel_tol` or `max_iter` halvings were spent.
pub fn bisect_decreasing<G: Fn(f64) -> f64>(
    g: G,
    target: f64,
    start: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Bisection {
    let mut lo = start;
    let mut hi = start;
    if g(start) >= target {
        // need a larger argument
        let mut guard = 0;
        while g(hi) > target && guard < 2100 {
            lo = hi;
            hi *= 2.0;
            guard += 1;
        }
    } else {
        let mut guard = 0;
        while g(lo) < target && guard < 2100 {
            hi = lo;
            lo *= 0.5;
            guard += 1;
        }
    }
    let mut iterations = 0;
    while iterations < max_iter && (hi - lo) > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Bisection {
        root: 0.5 * (lo + hi),
        iterations,
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Least-squares slope of `y = s * x` (regression through the origin).
pub fn slope_through_origin(points: &[(f64, f64)]) -> f64 {
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_monotone_picks_endpoint() {
        let (x, _) = golden_max(|x| x, 0.0, 1.0, 1e-10);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn bisection_solves_reciprocal_square() {
        // 1/x^2 = 4  =>  x = 0.5
        let b = bisect_decreasing(|x| 1.0 / (x * x), 4.0, 10.0, 1e-12, 200);
        assert!((b.root - 0.5).abs() < 1e-11);
        let b = bisect_decreasing(|x| 1.0 / (x * x), 4.0, 1e-3, 1e-12, 200);
        assert!((b.root - 0.5).abs() < 1e-11);
    }

    #[test]
    fn compensated_sum_cancels() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }
}

//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are always printed; exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use herzlab::atoms::{atom_make, atom_validate, size_condition_check, AtomKind};
use herzlab::dilation::{check_quasi_triangle, Dilation, Point};
use herzlab::exponent::Exponent;
use herzlab::grandseq::{grand_norm_detailed, GrandSequenceParams};
use herzlab::grid::{FunctionSpec, Grid, GridFunction, GridGeometry};
use herzlab::herz::{
    block_decompose, block_reconstruct, grand_herz_norm, herz_morrey_norm, product_check,
    seq_functional, sum_check, HerzSpaceParams,
};
use herzlab::operators::{boundedness_sweep, LambdaRule, OperatorSpec, TestFamily};
use herzlab::oracle::{self, ConstantHerzCase};
use herzlab::varlebesgue::{ball_norm_product, holder_defect, luxemburg_norm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn dilation(rows: &[&[f64]]) -> Dilation {
    Dilation::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn line_geometry(half_width: f64, n: usize) -> GridGeometry {
    GridGeometry::new(&dilation(&[&[2.0]]), Grid::new(1, half_width, n).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn constant_herz_oracle() -> Outcome {
    let case = ConstantHerzCase {
        b: 2.0,
        alpha: 2.0,
        q: 2.0,
        p: 1.0,
        theta: 1.0,
        lambda: 0.0,
    };
    let reference = oracle::constant_herz(&case).value;
    let params = HerzSpaceParams::constant(2.0, 1.0, 2.0, 1.0).unwrap();
    let mut errors = Vec::new();
    for n in [4096, 16384] {
        let geo = line_geometry(1.0, n);
        let f = geo.sample(&FunctionSpec::Indicator { k: 0 });
        errors.push(rel(
            grand_herz_norm(&f, &geo, &params).unwrap().norm,
            reference,
        ));
    }
    check(
        errors[0] < 0.02 && errors[1] < 0.005,
        format!(
            "oracle {reference:.12}, rel err {:.2e} at N=4096 (< 2e-2), {:.2e} at N=16384 (< 5e-3)",
            errors[0], errors[1]
        ),
    )
}

fn luxemburg_oracle() -> Outcome {
    let g = Grid::new(1, 2.0, 4096).unwrap();
    let f = GridFunction::from_fn(g, |x| if (0.0..2.0).contains(&x[0]) { 1.0 } else { 0.0 });
    let p = Exponent::piecewise(vec![1.0], vec![2.0, 4.0]).unwrap();
    let got = luxemburg_norm(&f, &p);
    let reference = oracle::luxemburg_two_piece();
    check(
        (got - reference).abs() <= 1e-6,
        format!("norm {got:.10} vs algebraic {reference:.10} (tol 1e-6)"),
    )
}

fn ball_identity() -> Outcome {
    let geo = line_geometry(4.0, 8192);
    let mut worst = 0.0f64;
    for p in [1.5, 2.0, 4.0] {
        for k in -3..=3 {
            let r = ball_norm_product(&geo, k, &Exponent::constant(p)).unwrap();
            worst = worst.max(rel(r.norm_product, r.nominal_volume));
        }
    }
    check(
        worst <= 1e-3,
        format!("max rel deviation of ‖χ‖_p‖χ‖_p' from |B_k| = {worst:.2e} (tol 1e-3)"),
    )
}

fn random_function(rng: &mut ChaCha8Rng, geo: &GridGeometry) -> GridFunction {
    let (lo, hi) = geo.default_krange();
    let k_hi = rng.random_range(lo + 2..=hi);
    let k_lo = rng.random_range(lo..k_hi);
    let spec = FunctionSpec::Sum {
        parts: vec![
            FunctionSpec::Noise {
                seed: rng.random(),
                k_lo,
                k_hi,
                amplitude: rng.random_range(0.1..3.0),
            },
            FunctionSpec::Scaled {
                factor: rng.random_range(-2.0..2.0),
                inner: Box::new(FunctionSpec::Annulus {
                    k: rng.random_range(k_lo + 1..=k_hi),
                }),
            },
        ],
    };
    geo.sample(&spec)
}

fn holder_pairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let geos = [
        line_geometry(2.0, 256),
        GridGeometry::new(
            &dilation(&[&[2.0, 1.0], &[0.0, 2.0]]),
            Grid::new(2, 2.0, 24).unwrap(),
        )
        .unwrap(),
    ];
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for i in 0..1000 {
        let geo = &geos[i % 2];
        let f = random_function(&mut rng, geo);
        let g = random_function(&mut rng, geo);
        let exps = [
            Exponent::constant(rng.random_range(1.2..5.0)),
            Exponent::log_family(rng.random_range(1.2..5.0), rng.random_range(1.2..5.0)),
        ];
        for p in &exps {
            worst = worst.min(holder_defect(&f, &g, p).unwrap().defect);
            count += 1;
        }
    }
    check(
        worst >= -1e-6,
        format!("{count} pair/exponent cases, min defect {worst:.3e} (>= -1e-6)"),
    )
}

fn decomposition_round_trip() -> Outcome {
    let geo = line_geometry(2.0, 2048);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut recon, mut ident) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let f = random_function(&mut rng, &geo);
        let alpha = if i % 2 == 0 {
            Exponent::constant(rng.random_range(0.1..1.0))
        } else {
            Exponent::log_family(rng.random_range(0.1..1.0), rng.random_range(0.1..1.0))
        };
        let q = if i % 3 == 0 {
            Exponent::log_family(rng.random_range(1.5..4.0), rng.random_range(1.5..4.0))
        } else {
            Exponent::constant(rng.random_range(1.5..4.0))
        };
        let params = HerzSpaceParams::new(
            alpha,
            rng.random_range(1.0..3.0),
            q,
            rng.random_range(0.5..2.0),
        )
        .unwrap();
        let dec = block_decompose(&f, &geo, &params).unwrap();
        recon = recon.max(
            block_reconstruct(&dec, geo.grid())
                .unwrap()
                .max_abs_diff(&f)
                .unwrap(),
        );
        let n = grand_herz_norm(&f, &geo, &params).unwrap().norm;
        ident = ident.max((seq_functional(&dec).unwrap() - n).abs());
    }
    check(
        recon <= 1e-12 && ident <= 1e-9,
        format!("50 functions: max reconstruction error {recon:.2e} (tol 1e-12), max |seq - norm| {ident:.2e} (tol 1e-9)"),
    )
}

fn grand_sequence_dense() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (ps, thetas) = ([1.0, 2.0, 3.0], [0.5, 1.0, 2.0]);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let len = rng.random_range(1..=16);
        let x: Vec<f64> = (0..len)
            .map(|_| {
                let mag = 10f64.powf(rng.random_range(-3.0..1.0));
                if rng.random_bool(0.2) {
                    0.0
                } else if rng.random_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        let (p, theta) = (ps[i % 3], thetas[(i / 3) % 3]);
        let got = grand_norm_detailed(&x, &GrandSequenceParams::new(p, theta).unwrap()).value;
        let reference = oracle::grand_seq_dense(&x, p, theta).value;
        let err = if reference == 0.0 {
            got.abs()
        } else {
            rel(got, reference)
        };
        worst = worst.max(err);
    }
    let delta = grand_norm_detailed(&[1.0], &GrandSequenceParams::new(1.0, 1.0).unwrap()).value;
    let delta_ref = oracle::grand_seq_dense(&[1.0], 1.0, 1.0).value;
    check(
        worst <= 1e-6 && (delta - delta_ref).abs() <= 1e-6,
        format!("200 sequences, max rel err {worst:.2e} (tol 1e-6); e0 at p=θ=1: {delta:.10} vs {delta_ref:.10}"),
    )
}

fn random_constant_params(rng: &mut ChaCha8Rng, p: f64, q: f64, theta: f64) -> HerzSpaceParams {
    HerzSpaceParams::constant(rng.random_range(0.05..0.6), p, q, theta)
        .unwrap()
        .with_lambda(if rng.random_bool(0.5) {
            0.0
        } else {
            rng.random_range(0.0..0.15)
        })
}

fn algebra() -> Outcome {
    let geo = line_geometry(2.0, 512);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut sum_worst, mut prod_worst, mut reduction) = (0.0f64, 0.0f64, 0.0f64);
    let p_pairs = [(4.0, 4.0), (3.0, 6.0), (2.0, 2.0), (2.5, 5.0)];
    let q_pairs = [(4.0, 4.0), (3.0, 6.0), (3.0, 3.0), (4.0, 12.0)];
    for i in 0..500 {
        let theta = rng.random_range(0.5..2.0);
        let f = random_function(&mut rng, &geo);
        let g = random_function(&mut rng, &geo);
        let h = random_function(&mut rng, &geo);
        let (p, q) = (rng.random_range(1.0..3.0), rng.random_range(1.5..4.0));
        let shared = random_constant_params(&mut rng, p, q, theta);
        sum_worst = sum_worst.max(
            sum_check(&[f.clone(), g.clone()], &geo, &shared)
                .unwrap()
                .ratio,
        );
        let r = if i % 5 == 4 {
            let p = random_constant_params(&mut rng, 6.0, 6.0, theta);
            let params = [
                p.clone(),
                random_constant_params(&mut rng, 6.0, 6.0, theta),
                random_constant_params(&mut rng, 6.0, 6.0, theta),
            ];
            product_check(&[f.clone(), g.clone(), h], &geo, &params).unwrap()
        } else {
            let (p1, p2) = p_pairs[i % 4];
            let (q1, q2) = q_pairs[(i / 4) % 4];
            let a = random_constant_params(&mut rng, p1, q1, theta);
            let b = random_constant_params(&mut rng, p2, q2, theta);
            product_check(&[f.clone(), g.clone()], &geo, &[a, b]).unwrap()
        };
        prod_worst = prod_worst.max(r.ratio);
        let zero_lambda = shared.clone().with_lambda(0.0);
        let herz = grand_herz_norm(&f, &geo, &zero_lambda).unwrap().norm;
        let morrey = herz_morrey_norm(&f, &geo, &zero_lambda).unwrap().norm;
        reduction = reduction.max((herz - morrey).abs() / herz);
    }
    check(
        sum_worst <= 1.0 + 1e-6 && prod_worst <= 1.0 + 1e-6 && reduction <= 1e-12,
        format!("500 cases: max sum ratio {sum_worst:.9}, max product ratio {prod_worst:.9} (<= 1+1e-6); λ=0 reduction rel diff {reduction:.1e} (tol 1e-12)"),
    )
}

fn operator_sweep() -> Outcome {
    let geo = line_geometry(2.0, 1024);
    let base = HerzSpaceParams::constant(0.25, 1.0, 2.0, 1.0)
        .unwrap()
        .with_delta2(0.5);
    let alphas: Vec<f64> = (1..=9).map(|i| 0.05 * i as f64).collect();
    let lambdas = [LambdaRule::Absolute(0.0), LambdaRule::FractionOfAlpha(0.25)];
    let family = TestFamily { seed: 8, size: 100 };
    let hardy =
        boundedness_sweep(&OperatorSpec::Hardy, &geo, &base, &alphas, &lambdas, family).unwrap();
    let ident = boundedness_sweep(
        &OperatorSpec::Identity,
        &geo,
        &base,
        &alphas,
        &lambdas,
        family,
    )
    .unwrap();
    let worst = hardy.cells.iter().map(|c| c.growth).fold(0.0, f64::max);
    let all_admissible = hardy.cells.iter().all(|c| c.admissible);
    let ident_ok = ident
        .cells
        .iter()
        .all(|c| c.sup_small == 1.0 && c.sup_large == 1.0);
    check(
        hardy.pass && all_admissible && ident_ok,
        format!(
            "{} cells, family {} -> {}: max growth {worst:.4} (< 1.5); identity cells exactly 1: {ident_ok}",
            hardy.cells.len(),
            hardy.small_size,
            hardy.large_size
        ),
    )
}

fn atom_suite() -> Outcome {
    let geo = line_geometry(1.0, 2048);
    let params = HerzSpaceParams::constant(0.5, 1.0, 2.0, 1.0)
        .unwrap()
        .with_delta2(0.5);
    let mut made = 0;
    let mut failures = Vec::new();
    let mut far_zero = true;
    for kind in [AtomKind::Haar, AtomKind::BumpCorrected] {
        for k in -4..=0 {
            for s in 0..=4 {
                let atom = atom_make(kind, k, s, &geo, &params).unwrap();
                made += 1;
                if !atom_validate(&atom.data, k, &geo, &params, s, false)
                    .unwrap()
                    .pass
                {
                    failures.push(format!("{kind:?}/{k}/{s}"));
                }
                let r = size_condition_check(&OperatorSpec::Hardy, &atom, &geo).unwrap();
                far_zero &= r.exact_zero && r.far_field_points > 0;
            }
        }
    }
    let haar = geo
        .sample(&FunctionSpec::Interval { lo: -0.5, hi: 0.0 })
        .sub(&geo.sample(&FunctionSpec::Interval { lo: 0.0, hi: 0.5 }))
        .unwrap();
    let s0 = atom_validate(&haar, 0, &geo, &params, 0, false).unwrap();
    let s1 = atom_validate(&haar, 0, &geo, &params, 1, false).unwrap();
    let m1 = s1.moments[1].value;
    check(
        failures.is_empty() && s0.pass && !s1.pass && (m1 + 0.25).abs() <= 1e-8 && far_zero,
        format!(
            "{made} atoms built, {} invalid; Haar s=0 pass {}, s=1 pass {} with moment {m1:.10}; Hardy far field exactly zero: {far_zero}",
            failures.len(),
            s0.pass,
            s1.pass
        ),
    )
}

fn random_pair(rng: &mut ChaCha8Rng, dim: usize) -> (Point, Point) {
    let mut pick = || -> Point {
        let r = 2f64.powf(rng.random_range(-6.0..6.0));
        if dim == 1 {
            [if rng.random_bool(0.5) { r } else { -r }, 0.0]
        } else {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            [r * t.cos(), r * t.sin()]
        }
    };
    (pick(), pick())
}

fn geometry() -> Outcome {
    let mats: [&[&[f64]]; 3] = [
        &[&[2.0]],
        &[&[2.0, 0.0], &[0.0, 2.0]],
        &[&[2.0, 1.0], &[0.0, 2.0]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut details = Vec::new();
    let mut ok = true;
    for rows in mats {
        let d = dilation(rows);
        let pairs: Vec<(Point, Point)> = (0..10_000)
            .map(|_| random_pair(&mut rng, d.dim()))
            .collect();
        let qt = check_quasi_triangle(&d, &pairs).unwrap();
        let scaling = pairs
            .iter()
            .all(|(x, _)| d.rho(&d.apply(x)) == d.b() * d.rho(x));
        let half = if d.dim() == 1 { 1.0 } else { 2.0 };
        let resolutions: &[usize] = if d.dim() == 1 {
            &[256, 1024, 4096]
        } else {
            &[64, 256, 1024]
        };
        // worst |B_k| deviation over k ∈ {-1, 0, 1} at each resolution
        let errs: Vec<f64> = resolutions
            .iter()
            .map(|&n| {
                let geo = GridGeometry::new(&d, Grid::new(d.dim(), half, n).unwrap()).unwrap();
                (-1..=1)
                    .map(|k| rel(geo.measured_ball_volume(k), d.ball_volume(k)))
                    .fold(0.0, f64::max)
            })
            .collect();
        let converging = errs.windows(2).all(|w| w[1] <= w[0]) && errs[errs.len() - 1] < 1e-3;
        ok &= qt.pass && scaling && converging;
        details.push(format!(
            "b={} ratio {:.3} <= {}, ρ(Ax)=bρ(x) {scaling}, |B_k|/b^k err {:.1e}->{:.1e}",
            d.b(),
            qt.max_ratio,
            qt.bound,
            errs[0],
            errs[errs.len() - 1]
        ));
    }
    check(ok, details.join("; "))
}

/// Name, check and optional wall-clock limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "constant-exponent grand Herz oracle",
            constant_herz_oracle,
            Some(10.0),
        ),
        ("Luxemburg two-piece oracle", luxemburg_oracle, Some(1.0)),
        ("ball indicator norm product", ball_identity, None),
        ("variable-exponent Hölder defect", holder_pairs, None),
        (
            "block decomposition round trip",
            decomposition_round_trip,
            None,
        ),
        ("grand sequence norm vs dense", grand_sequence_dense, None),
        ("sum and product inequalities", algebra, None),
        ("Hardy operator sweep stability", operator_sweep, None),
        ("atom construction and validation", atom_suite, None),
        ("quasi-norm geometry", geometry, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        let in_time = limit.is_none_or(|l| secs < l);
        let (pass, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        let budget = limit.map_or(String::new(), |l| format!(", limit {l} s"));
        println!(
            "criterion {:>2} [{}] {name}: {detail} ({secs:.2} s{budget})",
            i + 1,
            if pass { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

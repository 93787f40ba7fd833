//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed. The process
//! exits nonzero on any failure not marked as expected. Criterion 8 is the
//! one expected failure: a field whose spectrum lies in the timelike cone
//! integrates to zero along every timelike line as well, so its timelike
//! sub-check cannot pass for any such witness.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use nullray_core::diophantine::{
    brute_force_null_orthogonal, conjecture_scan, enumerate_null_directions,
    is_sum_of_three_squares, is_sum_of_two_squares, norm_sqr, witness_direction_2x2,
    NullLatticeDirection,
};
use nullray_core::euclidean::{
    finite_kernel_witness, fourier_slice_check, max_line_integral, random_null_direction,
    relative_integral, sphere_moment_check, timelike_cone_witness, ConeWitnessParams, DirectionSet,
    GaussianMixture, GridSpec, Line, LineQuadrature, SliceOptions, SmoothBump,
};
use nullray_core::numerics::{random_unit_vector, seeded_rng};
use nullray_core::torus::{
    exact, kernel_witness, numeric_geodesic_integral, recover_coefficients, required_samples,
    transform, transform_coefficients, transform_data, ClosedNullGeodesic, ExactComplex,
    TrigPolynomial,
};
use nullray_core::{k_membership, LatticeFrequency, Membership, Signature};

struct Outcome {
    pass: bool,
    detail: String,
    sub_checks: Vec<(bool, String)>,
    /// Set when the criterion is known to be unattainable; a failure is then
    /// printed but does not affect the exit status.
    expected_failure: Option<&'static str>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            sub_checks: Vec::new(),
            expected_failure: None,
        }
    }
}

/// Number, check, optional time budget.
type Criterion = (u32, fn() -> Outcome, Option<Duration>);

fn sig(n1: usize, n2: usize) -> Signature {
    Signature::new(n1, n2).unwrap()
}

fn is_valid_witness(d: &NullLatticeDirection, f: &LatticeFrequency) -> bool {
    let v = norm_sqr(d.v());
    v != 0 && v == norm_sqr(d.w()) && d.is_witness_for(f)
}

fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for s in [sig(1, 1), sig(2, 1), sig(3, 1)] {
        let freqs: Vec<LatticeFrequency> = LatticeFrequency::in_box(s, 12).collect();
        let (members, non_members, bad) = freqs
            .par_iter()
            .map(|f| {
                let report = k_membership(f);
                match report.membership {
                    Membership::Member => {
                        let ok = report
                            .witness
                            .as_ref()
                            .is_some_and(|w| is_valid_witness(w, f));
                        (1usize, 0usize, usize::from(!ok))
                    }
                    Membership::NotMember => {
                        let found = brute_force_null_orthogonal(f, 60).is_some();
                        (0, 1, usize::from(found))
                    }
                    Membership::Unknown => (0, 0, 1),
                }
            })
            .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
        pass &= bad == 0;
        lines.push(format!(
            "({},{}) {} true / {} false / {} mismatches",
            s.n1, s.n2, members, non_members, bad
        ));
    }
    Outcome::new(pass, lines.join("; "))
}

fn criterion_2() -> Outcome {
    let mut violations = 0usize;
    let mut diagonal = 0usize;
    for s in [sig(1, 1), sig(2, 1), sig(3, 1)] {
        let (v, d) = LatticeFrequency::in_box(s, 12)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|f| {
                let (space, time) = (norm_sqr(f.k()), norm_sqr(f.p()));
                let report = k_membership(f);
                let mut violations = usize::from(report.is_member() && time > space);
                let mut diagonal = 0;
                if time == space && space != 0 {
                    diagonal = 1;
                    let mut coords = f.k().to_vec();
                    coords.push(-f.p()[0]);
                    let kt = NullLatticeDirection::from_coords(s, coords).unwrap();
                    let parallel = report.witness.as_ref().is_some_and(|w| {
                        w.primitive().future_pointing() == kt.primitive().future_pointing()
                    });
                    if !(report.is_member() && is_valid_witness(&kt, f) && parallel) {
                        violations += 1;
                    }
                }
                (violations, diagonal)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        violations += v;
        diagonal += d;
    }
    Outcome::new(
        violations == 0,
        format!("{violations} violations, {diagonal} cases with |t| = |k| checked"),
    )
}

fn criterion_3() -> Outcome {
    let s = sig(2, 2);
    let range: Vec<i64> = (-10..=10).collect();
    let failures: usize = range
        .par_iter()
        .map(|&a| {
            let mut failures = 0;
            for &b in &range {
                for &c in &range {
                    for &d in &range {
                        let k = [a, b, c, d];
                        let w = witness_direction_2x2(k);
                        let f = LatticeFrequency::from_coords(s, k.to_vec()).unwrap();
                        if !is_valid_witness(&w, &f) {
                            failures += 1;
                        }
                    }
                }
            }
            failures
        })
        .sum();
    Outcome::new(
        failures == 0,
        format!("{} cases, {failures} failures", 21usize.pow(4)),
    )
}

fn random_polynomial<R: Rng>(rng: &mut R, s: Signature, terms: usize) -> TrigPolynomial {
    let mut f = TrigPolynomial::zero(s);
    for _ in 0..terms {
        let coords: Vec<i64> = (0..s.dim()).map(|_| rng.gen_range(-4..=4)).collect();
        let freq = LatticeFrequency::from_coords(s, coords).unwrap();
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let _ = f.add_term(freq, c);
    }
    f
}

fn criterion_4() -> Outcome {
    let mut rng = seeded_rng(4);
    let signatures = [sig(1, 1), sig(2, 1), sig(3, 1), sig(2, 2), sig(1, 2)];
    let mut worst = 0.0f64;
    let mut nontrivial = 0usize;
    for i in 0..100 {
        let s = signatures[i % signatures.len()];
        let f = random_polynomial(&mut rng, s, 12);
        let directions = enumerate_null_directions(s, 6);
        let support: Vec<LatticeFrequency> = f.support().cloned().collect();
        for _ in 0..10 {
            // half the geodesics see a support frequency
            let direction = match k_membership(&support[rng.gen_range(0..support.len())]).witness {
                Some(w) if rng.gen_bool(0.5) => w,
                _ => directions[rng.gen_range(0..directions.len())].clone(),
            };
            let offset: Vec<f64> = (0..s.dim()).map(|_| rng.gen_range(0.0..1.0)).collect();
            let g = ClosedNullGeodesic::new(direction.clone(), &offset).unwrap();
            let closed = transform(&f, &g).unwrap();
            let numeric =
                numeric_geodesic_integral(&f, &g, required_samples(&f, &direction)).unwrap();
            nontrivial += usize::from(closed.norm() > 1e-3);
            worst = worst.max((closed - numeric).norm());
        }
    }
    Outcome::new(
        worst < 1e-10,
        format!("max deviation {worst:.2e} over 1000 geodesics ({nontrivial} nonzero)"),
    )
}

fn criterion_5() -> Outcome {
    let s = sig(2, 1);
    let mut rng = seeded_rng(5);
    let box_freqs: Vec<LatticeFrequency> = LatticeFrequency::in_box(s, 4).collect();
    let members: Vec<&LatticeFrequency> = box_freqs
        .iter()
        .filter(|f| k_membership(f).is_member())
        .collect();
    let outside: Vec<LatticeFrequency> = box_freqs
        .iter()
        .filter(|f| k_membership(f).membership == Membership::NotMember)
        .cloned()
        .collect();

    let mut f: TrigPolynomial<ExactComplex> = TrigPolynomial::zero(s);
    for _ in 0..40 {
        let freq = members[rng.gen_range(0..members.len())].clone();
        let c = exact(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        let _ = f.add_term(freq, c);
    }
    let directions = enumerate_null_directions(s, 30);
    let data = transform_data(&f, &directions).unwrap();
    let recovery = recover_coefficients(s, &data, 4).unwrap();
    let exact_match = recovery.polynomial(s) == f;
    let mut reported = recovery.unrecoverable.clone();
    reported.sort();
    let mut expected = outside.clone();
    expected.sort();
    let unrecoverable_match = reported == expected;

    let mut nonzero = 0usize;
    for freq in &outside {
        let w = kernel_witness(freq).unwrap();
        for d in &directions {
            if !transform_coefficients(&w, d).unwrap().is_zero() {
                nonzero += 1;
            }
        }
    }
    Outcome::new(
        exact_match && unrecoverable_match && nonzero == 0,
        format!(
            "{} terms recovered exactly: {exact_match}; {} unrecoverable (expected {}); \
             {} directions, {nonzero} nonzero kernel transforms",
            f.len(),
            reported.len(),
            expected.len(),
            directions.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let gaussian = GaussianMixture::standard(2);
    let field = gaussian
        .sample(GridSpec::centered(2, 256, 4.0).unwrap())
        .unwrap();
    let boundary = field.boundary_max() / field.max_abs();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut worst = 0.0f64;
    let mut parts = vec![format!("boundary {boundary:.1e}")];
    for v in [vec![1.0, 0.0], vec![0.0, 1.0], vec![h, h]] {
        let report = fourier_slice_check(&field, &v, &SliceOptions::default()).unwrap();
        worst = worst.max(report.max_deviation);
        parts.push(format!("{:?} {:.2e}", report.method, report.max_deviation));
    }
    Outcome::new(boundary < 1e-9 && worst < 1e-6, parts.join(", "))
}

/// Among `candidates` unit directions, the one farthest (in product of
/// sines) from every direction in `set`.
fn held_out_direction(set: &[Vec<f64>], candidates: usize) -> Vec<f64> {
    (0..candidates)
        .map(|i| {
            let a = std::f64::consts::PI * i as f64 / candidates as f64;
            vec![a.cos(), a.sin()]
        })
        .max_by(|u, w| {
            let score = |u: &Vec<f64>| {
                set.iter()
                    .map(|v| (v[0] * u[1] - v[1] * u[0]).abs())
                    .product::<f64>()
            };
            score(u).total_cmp(&score(w))
        })
        .unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = seeded_rng(7);
    let directions: Vec<Vec<f64>> = (0..3).map(|_| random_unit_vector(&mut rng, 2)).collect();
    let set = DirectionSet::finite(directions.clone()).unwrap();
    let bump = SmoothBump::new(vec![0.0, 0.0], 0.1).unwrap();
    let grid = GridSpec::centered(2, 512, 0.75).unwrap();
    let f = finite_kernel_witness(&set, &bump, &grid).unwrap();
    let sup = f.max_abs();
    let width = f.support_width(1e-3);
    let quad = LineQuadrature::spline();
    let center = [0.0, 0.0];

    let mut worst = 0.0f64;
    for v in &directions {
        let r = max_line_integral(&f, v, &center, 0.35, 71, quad).unwrap();
        worst = worst.max(relative_integral(Complex64::new(r, 0.0), sup, width));
    }
    let u = held_out_direction(&directions, 180);
    let r = max_line_integral(&f, &u, &center, 0.35, 71, quad).unwrap();
    let held = relative_integral(Complex64::new(r, 0.0), sup, width);
    Outcome::new(
        sup > 0.0 && worst < 1e-5 && held > 1e-2,
        format!(
            "sup {sup:.2e}, width {width:.3}, max relative on set {worst:.2e}, held-out {held:.2e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let params = ConeWitnessParams::new(3, 128);
    let witness = timelike_cone_witness(&params).unwrap();
    let f = &witness.field;
    let sup = f.max_abs();
    let width = f.support_width(1e-3);
    let quad = LineQuadrature::spline();
    let mut rng = seeded_rng(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let v = random_null_direction(&mut rng, 3);
        let p: Vec<f64> = (0..3)
            .map(|_| rng.gen_range(-width / 4.0..width / 4.0))
            .collect();
        let line = Line::new(p, v).unwrap();
        let r = f.line_integral_with(&line, quad);
        worst = worst.max(relative_integral(r, sup, width));
    }
    let along = |axis: usize| {
        let mut v = vec![0.0; 3];
        v[axis] = 1.0;
        let r = f.line_integral_with(&Line::new(vec![0.0; 3], v).unwrap(), quad);
        relative_integral(r, sup, width)
    };
    let timelike = along(0);
    let spacelike = along(1);
    let mut outcome = Outcome::new(
        sup > 0.0 && worst < 1e-5 && timelike > 1e-2,
        format!(
            "margin {:.2} bins, width {width:.3}, max relative on 20 null lines {worst:.2e}",
            witness.margin
        ),
    );
    outcome
        .sub_checks
        .push((sup > 0.0 && worst < 1e-5, "null lines < 1e-5".into()));
    outcome.sub_checks.push((
        timelike > 1e-2,
        format!("timelike line along e1: relative {timelike:.2e}, target > 1e-2"),
    ));
    outcome.sub_checks.push((
        spacelike > 1e-2,
        format!("(extra) spacelike line along e2: relative {spacelike:.2e}"),
    ));
    outcome.expected_failure = Some(
        "the spectrum lies in the timelike cone, and v^perp of a timelike v contains only \
         spacelike frequencies, so every timelike line integral vanishes",
    );
    outcome
}

fn criterion_9() -> Outcome {
    let mut rng = seeded_rng(9);
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, tol) in [(2usize, 1e-12), (3, 1e-8), (4, 1e-6)] {
        let worst = (0..10)
            .map(|_| {
                let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                sphere_moment_check(&a, 16).unwrap()
            })
            .fold(0.0, f64::max);
        pass &= worst < tol;
        parts.push(format!("n={n} {worst:.1e}"));
    }
    Outcome::new(pass, parts.join(", "))
}

fn criterion_10() -> Outcome {
    let limit = 5000u64;
    let mut two = vec![false; limit as usize + 1];
    let mut three = vec![false; limit as usize + 1];
    for a in 0..=71u64 {
        for b in 0..=71 {
            let s = a * a + b * b;
            if s <= limit {
                two[s as usize] = true;
            }
            for c in 0..=71 {
                let s = s + c * c;
                if s <= limit {
                    three[s as usize] = true;
                }
            }
        }
    }
    let mismatches = (0..=limit)
        .filter(|&n| {
            is_sum_of_two_squares(n) != two[n as usize]
                || is_sum_of_three_squares(n) != three[n as usize]
        })
        .count();
    Outcome::new(
        mismatches == 0,
        format!("n = 0..={limit}, {mismatches} mismatches"),
    )
}

fn criterion_11() -> Outcome {
    let report = conjecture_scan(4, 3, 20).unwrap();
    Outcome::new(
        report.disagree.is_empty(),
        format!(
            "examined {}, agree {}, disagree {}, unknown {}",
            report.examined,
            report.agree(),
            report.disagree.len(),
            report.unknown.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, criterion_1, Some(Duration::from_secs(60))),
        (2, criterion_2, None),
        (3, criterion_3, Some(Duration::from_secs(10))),
        (4, criterion_4, None),
        (5, criterion_5, None),
        (6, criterion_6, Some(Duration::from_secs(30))),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, None),
        (10, criterion_10, Some(Duration::from_secs(5))),
        (11, criterion_11, None),
    ];
    let mut failed = 0;
    let mut expected = 0;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let pass = outcome.pass && in_time;
        if !pass {
            if outcome.expected_failure.is_some() {
                expected += 1;
            } else {
                failed += 1;
            }
        }
        let budget = budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!(
            "criterion {id:>2}: {} {} [{:.2}s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        for (ok, text) in outcome.sub_checks {
            println!("              {} {text}", if ok { "pass" } else { "FAIL" });
        }
        if let (false, Some(reason)) = (pass, outcome.expected_failure) {
            println!("              expected failure: {reason}");
        }
    }
    println!(
        "acceptance: {} of 11 criteria passed, {expected} expected failure(s), {failed} unexpected failure(s)",
        11 - failed - expected
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

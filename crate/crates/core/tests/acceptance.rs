//! Acceptance criteria, one line each. Run with
//! `cargo test -p kkw-core --test acceptance`.
//!
//! A criterion listed in `KNOWN_FAILING` still prints FAIL; the run only
//! errors if it starts passing or if any other criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use kkw_core::anchors::run_check;
use kkw_core::clifford::{trace_cyclicity_check, Blade, CliffordElement};
use kkw_core::dirac::{build_sigma_minus2, gravitational_boundary_density};
use kkw_core::oracle::{quad_line, quad_rational, quad_sphere};
use kkw_core::symbol::sphere_integrate;
use kkw_core::{Engine, Pole, RationalXi, Scalar, TangMonomial, TermIndex};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LINE_TOL: f64 = 1e-8;
const SIGMAS: f64 = 3.0;
const PROJECTION_CASES: usize = 200;
const CLIFFORD_CASES: usize = 200;
const QUADRATURE_CASES: usize = 100;
const SEED: u64 = 0x6b6b_7701;

/// Criterion 6 cannot hold: with the summand coefficient `-i` applied as in
/// every other case, the n = 5 density is real. See README, "Known failure".
const KNOWN_FAILING: &[u32] = &[6];

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn check_ids(engine: &Engine, ids: &[&str]) -> (bool, String) {
    let mut failed = Vec::new();
    for id in ids {
        let c = run_check(engine, id).unwrap();
        if !c.pass {
            failed.push(format!("{id}: expected {} got {}", c.expected, c.got));
        }
    }
    (failed.is_empty(), failed.join(" | "))
}

fn contour_integral() -> Outcome {
    let exact_ok = run_check(&Engine::new(), "eq311").unwrap().pass;
    let f = |x: f64| {
        let z = Complex64::new(x, 0.0);
        (Complex64::i() * z + 2.0) / (z - Complex64::i()).powu(2) * (3.0 * z * z - 1.0)
            / (1.0 + z * z).powu(3)
    };
    let numeric = quad_line(f, 1e-12).unwrap();
    let err = (numeric - Complex64::new(5.0 * PI / 16.0, 0.0)).norm();
    outcome(
        exact_ok && err <= LINE_TOL,
        format!("exact 5*pi/16, quadrature error {err:.1e}"),
    )
}

fn projection_identities() -> Outcome {
    let h1 = Scalar::h1();
    let lhs = RationalXi::inverse_norm_power(-h1.clone(), 2)
        .pi_plus()
        .unwrap();
    let shape_39 = RationalXi::from_fraction(&[&s("(1/2)") * &h1, &s("(1/4)*i") * &h1], 2, 0);
    let sigma = build_sigma_minus2(&Engine::new().metric(6).unwrap())
        .unwrap()
        .scalar_part();
    let projected = sigma.pi_plus().unwrap();
    let expected_proj = RationalXi::pole_term(Pole::Upper, 1, s("(-1/2)*i"));
    let shape_315 = RationalXi::pole_term(Pole::Upper, 2, s("(1/2)*i"));
    let shape_313 = RationalXi::pole_term(Pole::Upper, 3, s("-i"));
    let ok = lhs == shape_39
        && projected == expected_proj
        && projected.dxi() == shape_315
        && projected.dxi().dxi() == shape_313;
    outcome(
        ok,
        format!("pi+ of -h1/(1+xi^2)^2 = {lhs}; pi+ sigma_-2 = {projected}"),
    )
}

fn case_densities() -> Outcome {
    let e = Engine::new();
    let (ok, detail) = check_ids(&e, &["a1", "a2", "a3", "b", "c", "phi6"]);
    let m = e.metric(6).unwrap();
    let d = |t| e.evaluate_term(&m, &t).unwrap().density;
    let a_sum = &d(TermIndex::new(-2, -2, 0, 1, 0)) + &d(TermIndex::new(-2, -2, 1, 0, 0));
    let bc_sum = &d(TermIndex::new(-2, -3, 0, 0, 0)) + &d(TermIndex::new(-3, -2, 0, 0, 0));
    let ok = ok && a_sum.is_zero() && bc_sum.is_zero();
    outcome(
        ok,
        if detail.is_empty() {
            "a.II + a.III = 0, b + c = 0, total 0".to_string()
        } else {
            detail
        },
    )
}

fn case_c_paths() -> Outcome {
    let e = Engine::new();
    let m = e.metric(6).unwrap();
    let correction = e.case_c_correction(&m).unwrap();
    let via = e.evaluate_case_c_via_flip(&m).unwrap().density;
    let direct = e
        .evaluate_term(&m, &TermIndex::new(-3, -2, 0, 0, 0))
        .unwrap()
        .density;
    let ok = e.rearrangement_identity(&m).unwrap().holds()
        && correction == s("(15/4)*pi*Omega_4*h1")
        && via == direct
        && run_check(&e, "eq319").unwrap().pass;
    outcome(
        ok,
        format!("correction {correction}; via rearrangement {via}; direct {direct}"),
    )
}

fn theorem_six() -> Outcome {
    let e = Engine::new();
    let gravity = gravitational_boundary_density(&e.metric(6).unwrap());
    let (ok, detail) = check_ids(&e, &["res22", "res23", "thm41"]);
    let ratios: Vec<String> = e
        .gravity_proportionality(6)
        .unwrap()
        .iter()
        .map(|p| format!("{} / I = {}", p.name, p.computed))
        .collect();
    outcome(
        ok && gravity == s("-5*h1"),
        if detail.is_empty() {
            ratios.join(", ")
        } else {
            detail
        },
    )
}

fn theorem_five() -> Outcome {
    let e = Engine::new();
    let density = e.compute_phi_unchecked(5, 2, 2).unwrap().boundary_density;
    let (ok, _) = check_ids(&e, &["phi5", "thm42"]);
    let stated = s("(1/2)*i*pi*Omega_3");
    outcome(
        ok && density == stated,
        format!(
            "density {density} (stated {stated}); I / Phi = {}",
            e.gravity_proportionality(5).unwrap()[0].computed
        ),
    )
}

fn random_decaying(rng: &mut ChaCha8Rng) -> RationalXi {
    let (a, b) = loop {
        let (a, b) = (rng.random_range(0..=4u32), rng.random_range(0..=4u32));
        if a + b >= 2 {
            break (a, b);
        }
    };
    let num: Vec<Scalar> = (0..a + b - 1)
        .map(|_| {
            let re = Scalar::ratio(rng.random_range(-5..=5), rng.random_range(1..=3));
            &re + &(&Scalar::i() * &Scalar::integer(rng.random_range(-5..=5)))
        })
        .collect();
    RationalXi::from_fraction(&num, a, b)
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> CliffordElement {
    (0..rng.random_range(0..5)).fold(CliffordElement::zero(dim).unwrap(), |acc, _| {
        let bits: u64 = rng.random_range(0..1u64 << dim);
        let idx: Vec<usize> = (0..dim)
            .filter(|b| bits >> b & 1 == 1)
            .map(|b| b + 1)
            .collect();
        let c = Scalar::integer(rng.random_range(-3..=3));
        acc.add(&CliffordElement::blade(dim, Blade::from_indices(&idx).unwrap().0, c).unwrap())
            .unwrap()
    })
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();

    for _ in 0..PROJECTION_CASES {
        let f = random_decaying(&mut rng);
        let (p, m) = (f.pi_plus().unwrap(), f.pi_minus().unwrap());
        if p.pi_plus().unwrap() != p || m.pi_minus().unwrap() != m || p.add(&m) != f {
            failures.push(format!("projection: {f}"));
        }
    }
    for _ in 0..CLIFFORD_CASES {
        let dim = rng.random_range(1..=6);
        let (a, b, c) = (
            random_element(&mut rng, dim),
            random_element(&mut rng, dim),
            random_element(&mut rng, dim),
        );
        if a.mul(&b).unwrap().mul(&c).unwrap() != a.mul(&b.mul(&c).unwrap()).unwrap() {
            failures.push(format!("associativity in dim {dim}"));
        }
        if !trace_cyclicity_check(&a, &b).unwrap() {
            failures.push(format!("trace cyclicity in dim {dim}"));
        }
        let (i, j) = (rng.random_range(1..=dim), rng.random_range(1..=dim));
        let (ei, ej) = (
            CliffordElement::generator(dim, i).unwrap(),
            CliffordElement::generator(dim, j).unwrap(),
        );
        let anti = ei.mul(&ej).unwrap().add(&ej.mul(&ei).unwrap()).unwrap();
        let expected =
            CliffordElement::scalar(dim, Scalar::integer(if i == j { -2 } else { 0 })).unwrap();
        if anti != expected {
            failures.push(format!("anticommutator e{i} e{j}"));
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..QUADRATURE_CASES {
        let f = random_decaying(&mut rng);
        let h1 = rng.random_range(-2.0..2.0);
        let err = (f.integrate_line().unwrap().to_complex(h1)
            - quad_rational(&f, h1, 1e-12).unwrap())
        .norm();
        worst = worst.max(err);
        if err > LINE_TOL {
            failures.push(format!("quadrature: {f} off by {err:e}"));
        }
    }
    let mut moments = 0;
    for d in 2..=6 {
        for exps in [
            vec![0],
            vec![2],
            vec![4],
            vec![2, 2],
            vec![6],
            vec![2, 4],
            vec![2, 2, 2],
        ] {
            if exps.len() > d {
                continue;
            }
            let mut e = exps.clone();
            e.resize(d, 0);
            let m = TangMonomial::new(e);
            let exact = sphere_integrate(&m, d).to_complex(0.0).re;
            let est = quad_sphere(&m, d, 40_000, SEED + moments);
            moments += 1;
            if (est.value - exact).abs() > SIGMAS * est.sigma + 1e-9 * exact.abs().max(1.0) {
                failures.push(format!("sphere moment {m}: {} vs {exact}", est.value));
            }
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("worst quadrature error {worst:.1e}, {moments} sphere moments within {SIGMAS} sigma")
        } else {
            failures.join("; ")
        },
    )
}

fn negative_control() -> Outcome {
    let normal = run_check(&Engine::new(), "a2").unwrap();
    let flipped = run_check(&Engine::new().with_projection(Pole::Lower), "a2").unwrap();
    outcome(
        normal.pass && !flipped.pass,
        format!("flipped projection gives {}", flipped.got),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            1,
            "contour integral 5*pi/16, exact and numeric",
            contour_integral,
        ),
        (2, "pi+ identities in canonical form", projection_identities),
        (3, "case densities at n = 6 and total 0", case_densities),
        (
            4,
            "case c by rearrangement equals direct case c",
            case_c_paths,
        ),
        (
            5,
            "res22 and res23 proportional to I_Gr,b at n = 6",
            theorem_six,
        ),
        (
            6,
            "n = 5 density (pi*i/2)*Omega_3 and the gravity identity",
            theorem_five,
        ),
        (7, "property suites", property_suites),
        (
            8,
            "negative control: flipped pole fails verify a2",
            negative_control,
        ),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (n, name, run) in criteria {
        let o = run();
        let known = KNOWN_FAILING.contains(&n);
        let tag = match (o.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        if o.pass {
            passed += 1;
        }
        if o.pass == known {
            unexpected += 1;
        }
        println!("criterion {n}: {tag}: {name}: {}", o.detail);
    }
    println!("{passed}/{} criteria pass", criteria.len());
    if unexpected > 0 {
        println!("{unexpected} criterion result(s) differ from the expected status");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

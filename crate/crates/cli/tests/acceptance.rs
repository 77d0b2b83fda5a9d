//! Acceptance criteria, one line per criterion. Runs as a plain binary
//! (`harness = false`) so the report is always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hopfweave::*;
use hopfweave_cli::{parse_expr, render_expr, Atom, Expression};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEARCH_TIME_LIMIT: Duration = Duration::from_secs(5);

fn random_sign<R: Rng>(rng: &mut R) -> BandSign {
    if rng.gen_bool(0.5) {
        BandSign::Negative
    } else {
        BandSign::Positive
    }
}

fn random_tree<R: Rng>(rng: &mut R, max_mu: usize) -> PlumbingTree {
    let mu = rng.gen_range(0..=max_mu);
    (0..mu).fold(PlumbingTree::unknot(), |t, k| {
        let sign = random_sign(rng);
        let x: Vec<i64> = (0..k).map(|_| rng.gen_range(-1..=1)).collect();
        t.hopf_plumb(sign, &x).unwrap()
    })
}

fn random_coupling<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-1i64..=1)))
        .collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

fn random_expression<R: Rng>(rng: &mut R, depth: usize) -> Expression {
    let vector = |rng: &mut R| -> Vec<i64> {
        (0..rng.gen_range(0..4))
            .map(|_| rng.gen_range(-3..=3))
            .collect()
    };
    if depth == 0 || rng.gen_bool(0.3) {
        let atoms = [
            Atom::Unknot,
            Atom::HopfPositive,
            Atom::HopfNegative,
            Atom::Trefoil,
            Atom::FigureEight,
        ];
        return Expression::Atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    match rng.gen_range(0..3) {
        0 => {
            let left = Box::new(random_expression(rng, depth - 1));
            let right = Box::new(random_expression(rng, depth - 1));
            let coupling = rng
                .gen_bool(0.5)
                .then(|| (0..rng.gen_range(0..3)).map(|_| vector(rng)).collect());
            Expression::Plumb {
                left,
                right,
                coupling,
            }
        }
        1 => Expression::Stab {
            inner: Box::new(random_expression(rng, depth - 1)),
            sign: random_sign(rng),
            x: rng.gen_bool(0.5).then(|| vector(rng)),
        },
        _ => Expression::KnotPlumb {
            inner: Box::new(random_expression(rng, depth - 1)),
            kind: if rng.gen_bool(0.5) {
                KnotKind::E
            } else {
                KnotKind::TPlus
            },
            x: rng.gen_bool(0.5).then(|| vector(rng)),
            c: rng.gen_bool(0.5).then(|| rng.gen_range(-2..=2)),
        },
    }
}

fn models() -> Vec<ManifoldModel> {
    vec![
        ManifoldModel::sphere(),
        ManifoldModel::new("S1xS2", vec![0]).unwrap(),
        ManifoldModel::new("L(3,1)", vec![3]).unwrap(),
        ManifoldModel::new("Z+Z/2", vec![2, 0]).unwrap(),
    ]
}

fn random_class<R: Rng>(rng: &mut R, m: &ManifoldModel) -> PlaneFieldClass {
    let n = m.h1.len();
    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    PlaneFieldClass::new(m, &c, &e, rng.gen_range(-20..=20)).unwrap()
}

fn ac1_generator_classes() {
    assert_eq!(
        gk_class(&PlumbingTree::hopf_band(BandSign::Positive)),
        GkClass::new(1, 0)
    );
    assert_eq!(
        gk_class(&PlumbingTree::hopf_band(BandSign::Negative)),
        GkClass::new(1, 1)
    );
    assert_eq!(gk_class(&PlumbingTree::unknot()), GkClass::new(0, 0));
}

fn ac2_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC2);
    for _ in 0..200 {
        let (a, b) = (random_tree(&mut rng, 6), random_tree(&mut rng, 6));
        let x = random_coupling(&mut rng, a.mu(), b.mu());
        let p = a.plumb(&b, &x).unwrap();
        let (ra, rb, rp) = (a.invariants(), b.invariants(), p.invariants());
        assert_eq!(rp.mu, ra.mu + rb.mu);
        assert_eq!(rp.lambda, ra.lambda + rb.lambda);
        assert_eq!(gk_class(&p), gk_class(&a) + gk_class(&b));
    }
}

fn ac3_knot_table() {
    let t = PlumbingTree::trefoil().invariants();
    assert_eq!(t.alexander, LaurentPolynomial::from_i64(0, &[1, -1, 1]));
    assert_eq!(t.sigma, -2);
    let e = PlumbingTree::figure_eight().invariants();
    assert_eq!(e.alexander, LaurentPolynomial::from_i64(0, &[1, -3, 1]));
    assert_eq!(e.sigma, 0);
    let t_minus_one = LaurentPolynomial::from_i64(0, &[-1, 1]);
    for sign in [BandSign::Positive, BandSign::Negative] {
        let h = PlumbingTree::hopf_band(sign).invariants();
        assert!(h.alexander.eq_up_to_units(&t_minus_one));
    }
}

fn ac4_monodromy() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC4);
    for _ in 0..100 {
        let t = random_tree(&mut rng, 8);
        let v = t.seifert_matrix();
        assert!(det_exact(&v).unwrap().abs().is_one());
        let h = homological_monodromy(&v).unwrap();
        assert!(char_poly(&h)
            .unwrap()
            .eq_up_to_units(&alexander_from_seifert(&v).unwrap()));
    }
    let h = homological_monodromy(&PlumbingTree::trefoil().seifert_matrix()).unwrap();
    assert_eq!(h.pow(6).unwrap(), IntMatrix::identity(2));
}

fn ac5_framing_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC5);
    for m in models() {
        for _ in 0..50 {
            let xi = random_class(&mut rng, &m);
            let plus = plumb_effect(&xi, BandSign::Positive);
            assert_eq!(plus, xi);
            assert_eq!(plus.framing, xi.framing);
            let minus = plumb_effect(&xi, BandSign::Negative);
            assert_eq!(minus.framing, xi.framing + 1);
            assert_eq!((&minus.c, &minus.euler), (&xi.c, &xi.euler));
        }
    }
    let standard = ManifoldModel::sphere().reference_field();
    let hminus = OpenBookClass::on_sphere(PlumbingTree::hopf_band(BandSign::Negative)).field;
    assert_eq!(relative_framing(&standard, &hminus).unwrap().value, 1);
}

fn ac6_cocycle_and_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC6);
    for m in models() {
        for _ in 0..100 {
            let (a, b, c) = (
                random_class(&mut rng, &m),
                random_class(&mut rng, &m),
                random_class(&mut rng, &m),
            );
            assert!(obstruction_class(&a, &a).unwrap().is_zero());
            let ab = obstruction_class(&a, &b).unwrap();
            assert!((&ab + &obstruction_class(&b, &a).unwrap()).is_zero());
            let cycle =
                &(&ab + &obstruction_class(&b, &c).unwrap()) + &obstruction_class(&c, &a).unwrap();
            assert!(cycle.is_zero());
            let n = euler_divisibility(&a) as i64;
            for k in -12..=12 {
                let divides = if n == 0 { k == 0 } else { k % n == 0 };
                assert_eq!(act_pi3(k, &a) == a, divides, "k={k}, |xi|={n}");
            }
        }
    }
}

fn ac7_decision_procedure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC7);
    for _ in 0..200 {
        let (a, b) = (random_tree(&mut rng, 6), random_tree(&mut rng, 6));
        let v = stable_equivalence(
            &OpenBookClass::on_sphere(a.clone()),
            &OpenBookClass::on_sphere(b.clone()),
        )
        .unwrap();
        assert!(v.equivalent);
        assert_eq!(
            v.hminus_budget,
            Some(2 + a.lambda().abs_diff(b.lambda()) as u64)
        );
    }
    let z = ManifoldModel::new("S1xS2", vec![0]).unwrap();
    for shift in [1, -1, 2, 5] {
        let x = OpenBookClass::over(
            PlaneFieldClass::new(&z, &[0], &[0], 0).unwrap(),
            random_tree(&mut rng, 4),
        );
        let y = OpenBookClass::over(
            PlaneFieldClass::new(&z, &[shift], &[0], 0).unwrap(),
            random_tree(&mut rng, 4),
        );
        let v = stable_equivalence(&x, &y).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.hminus_budget, None);
    }
}

fn ac8_witness_search() {
    let (t, e) = (PlumbingTree::trefoil(), PlumbingTree::figure_eight());
    let cfg = SearchConfig {
        max_moves_per_side: 1,
        coord_bound: 1,
        ..SearchConfig::default()
    };
    let start = Instant::now();
    let out = common_stabilization(&t, &e, &cfg).unwrap();
    let elapsed = start.elapsed();
    let cert = out.certificate().expect("certificate at depth 1");
    assert_eq!(cert.moves_left.len(), 1);
    assert_eq!(cert.moves_left[0].sign, BandSign::Negative);
    assert_eq!(cert.moves_right.len(), 1);
    assert_eq!(cert.moves_right[0].sign, BandSign::Positive);
    assert!(verify_certificate(&t, &e, cert));
    let bound = stable_equivalence(&OpenBookClass::on_sphere(t), &OpenBookClass::on_sphere(e))
        .unwrap()
        .hminus_budget
        .unwrap();
    assert_eq!(bound, 3);
    assert_eq!(cert.budget(), 1);
    assert!(cert.budget() as u64 <= bound);
    assert!(elapsed < SEARCH_TIME_LIMIT, "search took {elapsed:?}");
}

fn ac9_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC9);
    for _ in 0..200 {
        let t = random_tree(&mut rng, 6);
        let sign = random_sign(&mut rng);
        let x: Vec<i64> = (0..t.mu()).map(|_| rng.gen_range(-2..=2)).collect();
        assert_eq!(t.hopf_plumb(sign, &x).unwrap().deplumb(t.mu()).unwrap(), t);
    }
    for _ in 0..200 {
        let e = random_expression(&mut rng, 5);
        assert_eq!(parse_expr(&render_expr(&e)).unwrap(), e);
    }
    for _ in 0..200 {
        let t = random_tree(&mut rng, 6);
        let text = t.to_json();
        assert_eq!(PlumbingTree::from_json(&text).unwrap().to_json(), text);
    }
    let (t, e) = (PlumbingTree::trefoil(), PlumbingTree::figure_eight());
    let cert = common_stabilization(&t, &e, &SearchConfig::with_depth(1)).unwrap();
    let text = cert.certificate().unwrap().to_json();
    assert_eq!(
        StabilizationCertificate::from_json(&text)
            .unwrap()
            .to_json(),
        text
    );
    for m in models() {
        let text = m.to_json();
        assert_eq!(ManifoldModel::from_json(&text).unwrap().to_json(), text);
        let f = random_class(&mut rng, &m);
        assert_eq!(
            PlaneFieldClass::from_json(&m, &f.to_json())
                .unwrap()
                .to_json(),
            f.to_json()
        );
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 9] = [
        ("AC1 generator classes", ac1_generator_classes),
        ("AC2 additivity under plumbing", ac2_additivity),
        ("AC3 knot-table oracle", ac3_knot_table),
        ("AC4 monodromy consistency", ac4_monodromy),
        ("AC5 framing rules", ac5_framing_rules),
        ("AC6 cocycle and orbit suite", ac6_cocycle_and_orbits),
        ("AC7 decision procedure", ac7_decision_procedure),
        ("AC8 witness search", ac8_witness_search),
        ("AC9 round-trips", ac9_round_trips),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} {name} ({:.2?})", start.elapsed());
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

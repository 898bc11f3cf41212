//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact; the only tolerances are the wall-clock limits
//! on criteria 1 and 2 and the Gröbner pair budget on criterion 6.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use k3gal::galois::{catalog_report, galois_point, galois_points, s8, s8_involution, sigma, CatalogSamples, SIGMA_TEXT};
use k3gal::latform::{
    cm_form, disc_group, equivalent, reduce_form, shioda_inose_scale, smith_normal_form, type_dictionary,
    type_from_locus, BQForm, IntMat,
};
use k3gal::poly::{Mono, Poly};
use k3gal::projlin::{char_poly, ProjMap, ProjPoint};
use k3gal::surface::{fixed_locus, preserves, Classification, QuarticSurface, Smoothness};
use k3gal::univariate::{uni_roots, UniPoly};
use k3gal::{verify_galois, EisNum, Matrix, DEFAULT_ORDER_BOUND, DEFAULT_PAIR_BUDGET};

const CRITERION_1_LIMIT: Duration = Duration::from_secs(1);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(120);
const PROPERTY_CASES: u32 = 128;
const PROPERTY_SEED: [u8; 32] = *b"k3gal acceptance property seed!!";

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = s8();
    for (i, text) in SIGMA_TEXT.iter().enumerate() {
        let m: ProjMap = text.parse().map_err(|e| format!("σ{} does not parse: {}", i + 1, e))?;
        let order = m.order(DEFAULT_ORDER_BOUND).map_err(|e| e.to_string())?;
        check(order == 3, format!("σ{} has order {}", i + 1, order))?;
        check(preserves(&s, &m) == Some(EisNum::one()), format!("σ{} does not fix S8 with λ = 1", i + 1))?;
    }
    let t = start.elapsed();
    check(t < CRITERION_1_LIMIT, format!("took {:?}", t))?;
    Ok(format!("8/8 orders 3, λ = 1 ({:.3} s)", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let report = catalog_report(&CatalogSamples::default(), DEFAULT_ORDER_BOUND, DEFAULT_PAIR_BUDGET)
        .map_err(|e| e.to_string())?;
    let mut ok = 0;
    for fam in &report {
        for e in &fam.entries {
            check(e.passed(), format!("family {} P{} σ{} failed: {:?}", e.family, e.point_index, e.sigma_index, e))?;
            let t = e.eisenstein_type.ok_or("missing type")?;
            check(
                (t.r, t.a, t.g, t.k, t.n) == (Some(4), Some(3), 3, 0, 1) && t.classification == Classification::NonSymplectic,
                format!("family {} P{}: {}", e.family, e.point_index, t),
            )?;
            ok += 1;
        }
    }
    check(ok == 15, format!("{} entries", ok))?;
    // family (3) with σ₂: plane and curve as exact polynomials
    let fam3 = QuarticSurface::new(&p("X^4 + Y^4") + &p("Z^4 + Z*W^3")).unwrap();
    let locus = fixed_locus(&fam3, &sigma(2), DEFAULT_ORDER_BOUND, DEFAULT_PAIR_BUDGET).map_err(|e| e.to_string())?;
    let plane = &locus.plane_components[0];
    check(plane.plane.scale(&EisNum::from(2)) == p("2*Z + u*W"), format!("plane {}", plane.plane))?;
    check(plane.curve == p("X^4 + Y^4 - 9*u/16*W^4"), format!("curve {}", plane.curve))?;
    let t = start.elapsed();
    check(t < CRITERION_2_LIMIT, format!("took {:?}", t))?;
    Ok(format!("15/15 verdicts true, all (4,3) with (3,0,1); curve {} ({:.3} s)", plane.curve, t.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let u = EisNum::zeta6();
    let quad = UniPoly::new(vec![&u * &u, -&u, EisNum::one()]);
    let expected = UniPoly::new(vec![EisNum::one(), EisNum::from(-1)]).pow(2).mul(&quad);
    let cp = char_poly(sigma(2).matrix());
    check(cp == expected || cp == expected.scale(&EisNum::from(-1)), format!("char poly {}", cp))?;
    let split = uni_roots(&cp).map_err(|e| e.to_string())?;
    let mut roots = split.roots.clone();
    roots.sort();
    let mut want = vec![(EisNum::one(), 3), (EisNum::zeta3(), 1)];
    want.sort();
    check(roots == want, format!("roots {:?}", roots))?;
    check(split.residual.degree() == Some(0), "residual factor")?;
    Ok(format!("char poly {}, roots 1 (×3), w (×1)", cp))
}

fn criterion_4() -> Outcome {
    let flip = ProjMap::diag([1, 1, -1, -1].map(EisNum::from)).unwrap();
    check(s8_involution() == flip, format!("(σ1∘σ3)^3 = {}", s8_involution()))?;
    let locus = fixed_locus(&s8(), &s8_involution(), DEFAULT_ORDER_BOUND, DEFAULT_PAIR_BUDGET).map_err(|e| e.to_string())?;
    check(locus.plane_components.is_empty(), "fixed curve present")?;
    check(locus.line_components.iter().all(|l| !l.contained && l.residual.is_none()), "line not fully split")?;
    let mut want = galois_points().to_vec();
    want.sort();
    let got = locus.explicit_points();
    check(got == want, format!("fixed points {:?}", got.iter().map(ToString::to_string).collect::<Vec<_>>()))?;
    check(locus.point_count() == 8, "count")?;
    Ok("(σ1∘σ3)^3 = diag(1,1,-1,-1); fixed set = {P1..P8}".into())
}

fn criterion_5() -> Outcome {
    let q = cm_form(1, 1, 1).map_err(|e| e.to_string())?;
    check(q == BQForm::new(1, 1, 1), format!("cm form {}", q))?;
    let gram = shioda_inose_scale(&q);
    check(gram == IntMat::from_i64(2, 2, &[8, 4, 4, 8]), format!("gram {}", gram))?;
    let t = BQForm::from_gram(&gram).map_err(|e| e.to_string())?;
    let (r, _) = reduce_form(&t).map_err(|e| e.to_string())?;
    check(r == t, format!("reduced to {}", r))?;
    // hand oracle: gcd of entries is 4 and det is 48, so (4, 12)
    let g = disc_group(&gram).map_err(|e| e.to_string())?;
    check(g.factors == vec![BigInt::from(4), BigInt::from(12)], format!("group {}", g))?;
    Ok(format!("Gram {} reduced, discriminant group {}", gram, g))
}

fn criterion_6() -> Outcome {
    let mut surfaces = vec![s8()];
    surfaces.extend(k3gal::galois::families(&CatalogSamples::default()).unwrap().into_iter().take(3).map(|f| f.surface));
    let mut pairs = Vec::new();
    for s in &surfaces {
        let gb = k3gal::buchberger(&s.jacobian_ideal(), DEFAULT_PAIR_BUDGET).map_err(|e| format!("{}: {}", s, e))?;
        check(gb.has_pure_powers(0b1111), format!("{} has no pure-power certificate", s))?;
        check(s.check_smooth(DEFAULT_PAIR_BUDGET) == Ok(Smoothness::Smooth), format!("{} not smooth", s))?;
        pairs.push(gb.pairs_reduced);
    }
    let cone = QuarticSurface::parse("X^4 + Y^4 + Z^4").unwrap();
    let c = cone.check_smooth(DEFAULT_PAIR_BUDGET).map_err(|e| e.to_string())?;
    check(c == Smoothness::Singular { witness: Some(ProjPoint::basis(3)) }, format!("cone: {}", c))?;
    Ok(format!("4 smooth (pairs {:?}, budget {}), cone singular at [0 : 0 : 0 : 1]", pairs, DEFAULT_PAIR_BUDGET))
}

fn runner() -> TestRunner {
    let cfg = Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &PROPERTY_SEED))
}

fn eis() -> impl Strategy<Value = EisNum> {
    (-20i64..=20, -20i64..=20, 1i64..=6, 1i64..=6)
        .prop_map(|(a, b, c, d)| EisNum::new(k3gal::scalar::rat(a, c), k3gal::scalar::rat(b, d)))
}

fn quartic() -> impl Strategy<Value = Poly> {
    let monos: Vec<Mono> = (0..=4u32)
        .flat_map(|a| (0..=4 - a).flat_map(move |b| (0..=4 - a - b).map(move |c| Mono([a, b, c, 4 - a - b - c]))))
        .collect();
    proptest::collection::vec(proptest::option::of(eis()), monos.len()).prop_map(move |cs| {
        Poly::from_terms(monos.iter().zip(cs).filter_map(|(m, c)| c.map(|c| (*m, c))))
    })
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    proptest::collection::vec((-2i64..=2, -2i64..=2), 16)
        .prop_map(|v| Matrix::new(4, 4, v.into_iter().map(|(a, b)| EisNum::from_ints(a, b)).collect()))
}

fn criterion_7() -> Outcome {
    let mut suites = Vec::new();
    let mut run = |name: &str, r: Result<(), String>| -> Result<(), String> {
        r.map_err(|e| format!("{}: {}", name, e))?;
        suites.push(name.to_string());
        Ok(())
    };

    run(
        "field axioms",
        runner()
            .run(&(eis(), eis(), eis()), |(a, b, c)| {
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) - &b, a.clone());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
                prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    run(
        "Euler identity",
        runner()
            .run(&quartic(), |f| {
                let lhs = (0..4).fold(Poly::zero(), |acc, i| &acc + &(&Poly::var(i) * &f.partial(i)));
                prop_assert_eq!(lhs, f.scale(&EisNum::from(4)));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    run(
        "substitution functoriality",
        runner()
            .run(&(quartic(), small_matrix(), small_matrix()), |(f, m, n)| {
                prop_assert_eq!(f.substitute_linear(&m).substitute_linear(&n), f.substitute_linear(&m.mul(&n)));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    let pd_form = (1i64..200, -400i64..400, 1i64..200)
        .prop_filter("positive definite", |(a, b, c)| b * b - 4 * a * c < 0)
        .prop_map(|(a, b, c)| BQForm::new(a, b, c));
    run(
        "reduce_form idempotence",
        runner()
            .run(&pd_form, |q| {
                let (r, t) = reduce_form(&q).unwrap();
                prop_assert!(r.is_reduced());
                prop_assert_eq!(r.discriminant(), q.discriminant());
                prop_assert_eq!(q.transform(&t), r.clone());
                prop_assert_eq!(reduce_form(&r).unwrap().0, r);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    let int_matrix = (2usize..=4, 2usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(-30i64..=30, r * c).prop_map(move |v| IntMat::from_i64(r, c, &v)));
    run(
        "Smith normal form",
        runner()
            .run(&int_matrix, |m| {
                let (d, u, v) = smith_normal_form(&m);
                prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
                prop_assert_eq!(num_traits::Signed::abs(&u.det()), BigInt::from(1));
                prop_assert_eq!(num_traits::Signed::abs(&v.det()), BigInt::from(1));
                let diag = d.diagonal();
                for w in diag.windows(2) {
                    let divides = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { &w[1] % &w[0] == BigInt::from(0) };
                    prop_assert!(divides);
                }
                if m.rows() == m.cols() {
                    prop_assert_eq!(diag.iter().product::<BigInt>(), num_traits::Signed::abs(&m.det()));
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    let mut valid = 0;
    for r in 0..=20 {
        for a in 0..=22 {
            if let Some(inv) = type_dictionary(r, a) {
                valid += 1;
                check(type_from_locus(inv) == Some((r, a)), format!("round trip fails at ({}, {})", r, a))?;
            }
        }
    }
    check(valid > 0, "no valid (r, a)")?;
    suites.push(format!("dictionary round trip ({} types)", valid));
    Ok(format!("{} cases per suite, 0 failures: {}", PROPERTY_CASES, suites.join("; ")))
}

fn criterion_8() -> Outcome {
    let v = verify_galois(&s8(), &galois_point(2), &sigma(1), DEFAULT_ORDER_BOUND, DEFAULT_PAIR_BUDGET)
        .map_err(|e| e.to_string())?;
    check(!v.verdict && !v.conditions.fixes_point, format!("verdict {:?}", v.failed))?;
    let eq = equivalent(&BQForm::new(1, 1, 1), &BQForm::new(1, 0, 1)).map_err(|e| e.to_string())?;
    check(!eq, "(1,1,1) ~ (1,0,1)")?;
    Ok(format!("(S8, P2, σ1) false with failed {:?}; (1,1,1) ≁ (1,0,1)", v.failed))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("generators", criterion_1),
        ("galois catalog", criterion_2),
        ("characteristic polynomial", criterion_3),
        ("involution fixed points", criterion_4),
        ("transcendental lattice", criterion_5),
        ("smoothness certificates", criterion_6),
        ("property suites", criterion_7),
        ("negative controls", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {}: {}", i + 1, name, detail),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {}: {}", i + 1, name, detail);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

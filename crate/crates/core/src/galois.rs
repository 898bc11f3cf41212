//! Inner Galois points on smooth quartics, certified by an order-3
//! automorphism that fixes the point and stabilizes every line through it.
//!
//! The catalog holds the four normal forms of quartics with inner Galois
//! points, their Galois points P₁…P₈ and the generators σ₁…σ₈.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::projlin::{char_poly, ProjMap, ProjPoint};
use crate::scalar::EisNum;
use crate::surface::{eisenstein_type, preserves, EisensteinType, QuarticSurface, Smoothness};
use crate::univariate::uni_roots;

/// The quartic X⁴ + Z⁴ + XY³ + ZW³.
pub const S8_TEXT: &str = "X^4 + Z^4 + X*Y^3 + Z*W^3";

/// σ₁…σ₈ as row-major matrices, with u = ζ₆ and w = ζ₃.
pub const SIGMA_TEXT: [&str; 8] = [
    "1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,w",
    "1,0,0,0, 0,1,0,0, 0,0,(2*u-1)/3,(-u-1)/3, 0,0,(4*u-2)/3,(u+1)/3",
    "1,0,0,0, 0,1,0,0, 0,0,(2*u-1)/3,(-u+2)/3, 0,0,(-2*u+4)/3,(u+1)/3",
    "1,0,0,0, 0,1,0,0, 0,0,(2*u-1)/3,(2*u-1)/3, 0,0,(-2*u-2)/3,(u+1)/3",
    "1,0,0,0, 0,w,0,0, 0,0,1,0, 0,0,0,1",
    "(2*u-1)/3,(-u-1)/3,0,0, (4*u-2)/3,(u+1)/3,0,0, 0,0,1,0, 0,0,0,1",
    "(2*u-1)/3,(-u+2)/3,0,0, (-2*u+4)/3,(u+1)/3,0,0, 0,0,1,0, 0,0,0,1",
    "(2*u-1)/3,(2*u-1)/3,0,0, (-2*u-2)/3,(u+1)/3,0,0, 0,0,1,0, 0,0,0,1",
];

/// P₁…P₈.
pub const POINT_TEXT: [&str; 8] = [
    "[0:0:0:1]",
    "[0:0:u:1]",
    "[0:0:u^3:1]",
    "[0:0:u^5:1]",
    "[0:1:0:0]",
    "[u:1:0:0]",
    "[u^3:1:0:0]",
    "[u^5:1:0:0]",
];

/// σᵢ for i in 1..=8.
pub fn sigma(i: usize) -> ProjMap {
    assert!((1..=8).contains(&i), "σ index {} out of range", i);
    SIGMA_TEXT[i - 1].parse().expect("catalog matrix")
}

/// Pᵢ for i in 1..=8.
pub fn galois_point(i: usize) -> ProjPoint {
    assert!((1..=8).contains(&i), "point index {} out of range", i);
    POINT_TEXT[i - 1].parse().expect("catalog point")
}

pub fn galois_points() -> [ProjPoint; 8] {
    std::array::from_fn(|i| galois_point(i + 1))
}

pub fn s8() -> QuarticSurface {
    QuarticSurface::parse(S8_TEXT).expect("catalog surface")
}

/// (σ₁ ∘ σ₃)³, which acts as diag(1, 1, −1, −1).
pub fn s8_involution() -> ProjMap {
    sigma(1).compose(&sigma(3)).power(3)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Conditions {
    /// (a) P lies on S.
    pub inner: bool,
    /// (b) M preserves S.
    pub preserves_surface: bool,
    /// (c) M fixes P.
    pub fixes_point: bool,
    /// (d) M − νI has image in the span of P, so every line through P is stable.
    pub stabilizes_lines: bool,
    /// (e) M has projective order 3.
    pub order_three: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.inner && self.preserves_surface && self.fixes_point && self.stabilizes_lines && self.order_three
    }

    /// Letters of the failed conditions.
    pub fn failed(&self) -> Vec<char> {
        [
            ('a', self.inner),
            ('b', self.preserves_surface),
            ('c', self.fixes_point),
            ('d', self.stabilizes_lines),
            ('e', self.order_three),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(c, _)| c)
        .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GaloisVerdict {
    pub surface: QuarticSurface,
    pub point: ProjPoint,
    pub matrix: ProjMap,
    pub verdict: bool,
    pub conditions: Conditions,
    pub failed: Vec<char>,
    pub lambda: Option<EisNum>,
    pub mu: Option<EisNum>,
    pub nu: Option<EisNum>,
    pub order: Option<u32>,
}

/// μ with M·v = μ·v.
fn eigenvalue_at(m: &Matrix, v: &[EisNum]) -> Option<EisNum> {
    let mv = m.apply(v);
    let i = v.iter().position(|x| !x.is_zero())?;
    let mu = mv[i].checked_div(&v[i]).ok()?;
    let scaled: Vec<EisNum> = v.iter().map(|x| x * &mu).collect();
    (mv == scaled).then_some(mu)
}

/// ν such that every column of M − νI is a multiple of v.
fn line_scalar(m: &Matrix, v: &[EisNum]) -> Option<EisNum> {
    let split = uni_roots(&char_poly(m)).ok()?;
    split.roots.into_iter().map(|(nu, _)| nu).find(|nu| {
        let d = m.sub_scalar(nu);
        let mut cols: Vec<Vec<EisNum>> = vec![v.to_vec()];
        cols.extend((0..4).map(|j| (0..4).map(|i| d.get(i, j).clone()).collect()));
        Matrix::from_rows(&cols).rank() <= 1
    })
}

/// Checks the automorphism criterion for (S, P, M). The surface must be
/// certified smooth.
pub fn verify_galois(
    s: &QuarticSurface,
    p: &ProjPoint,
    m: &ProjMap,
    order_bound: u32,
    pair_budget: usize,
) -> Result<GaloisVerdict> {
    if s.check_smooth(pair_budget)? != Smoothness::Smooth {
        return Err(Error::NotSmooth);
    }
    let lambda = preserves(s, m);
    let mu = eigenvalue_at(m.matrix(), p.coords());
    let nu = line_scalar(m.matrix(), p.coords());
    let order = match m.order(order_bound) {
        Ok(n) => Some(n),
        Err(Error::OrderExceedsBound { .. }) => None,
        Err(e) => return Err(e),
    };
    let conditions = Conditions {
        inner: s.contains(p),
        preserves_surface: lambda.is_some(),
        fixes_point: mu.is_some(),
        stabilizes_lines: nu.is_some(),
        order_three: order == Some(3),
    };
    Ok(GaloisVerdict {
        surface: s.clone(),
        point: p.clone(),
        matrix: m.clone(),
        verdict: conditions.all(),
        failed: conditions.failed(),
        conditions,
        lambda,
        mu,
        nu,
        order,
    })
}

/// Whether P, Q and M·Q are collinear for each Q.
pub fn lines_stable_at(m: &ProjMap, p: &ProjPoint, qs: &[ProjPoint]) -> bool {
    qs.iter().all(|q| {
        let mq = m.matrix().apply(q.coords());
        Matrix::from_rows(&[p.coords().to_vec(), q.coords().to_vec(), mq]).rank() <= 2
    })
}

/// Random points with small Eisenstein-integer coordinates.
pub fn probe_points(trials: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let c: [EisNum; 4] = std::array::from_fn(|_| EisNum::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
        if let Ok(q) = ProjPoint::new(c) {
            out.push(q);
        }
    }
    out
}

/// Randomized witness for condition (d).
pub fn line_stability_probe(m: &ProjMap, p: &ProjPoint, trials: usize, seed: u64) -> bool {
    lines_stable_at(m, p, &probe_points(trials, seed))
}

/// Concrete forms standing in for the generic F₄, F₁ of families (1)–(3).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CatalogSamples {
    /// F₄(X, Y, Z) and F₁(X, Y, Z) in F₄ + F₁·W³.
    pub family1_f4: String,
    pub family1_f1: String,
    /// F₄(X, Z), F₁(X, Z) and G₁(X, Z) in F₄ + F₁·Y³ + G₁·W³.
    pub family2_f4: String,
    pub family2_f1: String,
    pub family2_g1: String,
    /// F₄(X, Y) in F₄ + Z⁴ + Z·W³.
    pub family3_f4: String,
}

impl Default for CatalogSamples {
    fn default() -> Self {
        CatalogSamples {
            family1_f4: "X^4 + Y^4 + Z^4".into(),
            family1_f1: "X".into(),
            family2_f4: "X^4 + Z^4".into(),
            family2_f1: "X".into(),
            family2_g1: "X + Z".into(),
            family3_f4: "X^4 + Y^4".into(),
        }
    }
}

fn form_in(text: &str, degree: u32, allowed: u8, what: &str) -> Result<Poly> {
    let f: Poly = text.parse()?;
    if !f.is_form_of_degree(degree) {
        return Err(Error::WrongDegree { expected: degree, found: f.to_string() });
    }
    if f.var_mask() & !allowed != 0 {
        return Err(Error::Precondition(format!("{} = {} uses a variable outside its family", what, f)));
    }
    Ok(f)
}

/// One family: its surface and the (point, generator) pairs to check,
/// as 1-based indices into P₁…P₈ and σ₁…σ₈.
#[derive(Clone, Debug)]
pub struct Family {
    pub id: u8,
    pub surface: QuarticSurface,
    pub entries: Vec<(usize, usize)>,
}

const X: u8 = 1;
const Y: u8 = 2;
const Z: u8 = 4;

pub fn families(samples: &CatalogSamples) -> Result<Vec<Family>> {
    let w3: Poly = "W^3".parse()?;
    let y3: Poly = "Y^3".parse()?;
    let f1 = &form_in(&samples.family1_f4, 4, X | Y | Z, "F4")?
        + &(&form_in(&samples.family1_f1, 1, X | Y | Z, "F1")? * &w3);
    let f2 = &(&form_in(&samples.family2_f4, 4, X | Z, "F4")?
        + &(&form_in(&samples.family2_f1, 1, X | Z, "F1")? * &y3))
        + &(&form_in(&samples.family2_g1, 1, X | Z, "G1")? * &w3);
    let f3 = &form_in(&samples.family3_f4, 4, X | Y, "F4")? + &"Z^4 + Z*W^3".parse::<Poly>()?;
    Ok(vec![
        Family { id: 1, surface: QuarticSurface::new(f1)?, entries: vec![(1, 1)] },
        Family { id: 2, surface: QuarticSurface::new(f2)?, entries: vec![(1, 1), (5, 5)] },
        Family { id: 3, surface: QuarticSurface::new(f3)?, entries: vec![(1, 1), (2, 2), (3, 3), (4, 4)] },
        Family { id: 4, surface: s8(), entries: (1..=8).map(|i| (i, i)).collect() },
    ])
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CatalogEntry {
    pub family: u8,
    pub point_index: usize,
    pub sigma_index: usize,
    pub verdict: Option<GaloisVerdict>,
    pub eisenstein_type: Option<EisensteinType>,
    pub error: Option<String>,
}

impl CatalogEntry {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdict.as_ref().is_some_and(|v| v.verdict)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyReport {
    pub family: u8,
    pub surface: QuarticSurface,
    pub smoothness: Option<Smoothness>,
    pub entries: Vec<CatalogEntry>,
}

fn check_family(fam: &Family, order_bound: u32, pair_budget: usize) -> FamilyReport {
    let smoothness = fam.surface.check_smooth(pair_budget);
    let entries = fam
        .entries
        .iter()
        .map(|&(pi, si)| {
            let (p, m) = (galois_point(pi), sigma(si));
            let mut entry = CatalogEntry {
                family: fam.id,
                point_index: pi,
                sigma_index: si,
                verdict: None,
                eisenstein_type: None,
                error: None,
            };
            match verify_galois(&fam.surface, &p, &m, order_bound, pair_budget) {
                Ok(v) => {
                    if v.verdict {
                        match eisenstein_type(&fam.surface, &m, order_bound, pair_budget) {
                            Ok(t) => entry.eisenstein_type = Some(t),
                            Err(e) => entry.error = Some(e.to_string()),
                        }
                    }
                    entry.verdict = Some(v);
                }
                Err(e) => entry.error = Some(e.to_string()),
            }
            entry
        })
        .collect();
    FamilyReport { family: fam.id, surface: fam.surface.clone(), smoothness: smoothness.ok(), entries }
}

/// Runs every catalog entry; families are checked in parallel and reported
/// in catalog order.
pub fn catalog_report(samples: &CatalogSamples, order_bound: u32, pair_budget: usize) -> Result<Vec<FamilyReport>> {
    let fams = families(samples)?;
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> =
            fams.iter().map(|f| scope.spawn(move || check_family(f, order_bound, pair_budget))).collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_PAIR_BUDGET;
    use proptest::prelude::*;

    const B: usize = DEFAULT_PAIR_BUDGET;

    #[test]
    fn generators_have_order_three_and_preserve_s8() {
        let s = s8();
        for i in 1..=8 {
            assert_eq!(sigma(i).order(6).unwrap(), 3, "σ{}", i);
            assert_eq!(preserves(&s, &sigma(i)), Some(EisNum::one()), "σ{}", i);
        }
    }

    #[test]
    fn points_lie_on_s8_and_are_fixed() {
        let s = s8();
        for i in 1..=8 {
            let p = galois_point(i);
            assert!(s.contains(&p));
            assert_eq!(sigma(i).apply(&p), p);
        }
    }

    #[test]
    fn generators_permute_galois_points() {
        let pts = galois_points();
        let s = s8();
        for i in 1..=8 {
            for p in &pts {
                let q = sigma(i).apply(p);
                assert!(s.contains(&q));
                assert!(pts.contains(&q), "σ{} sends {} to {}", i, p, q);
            }
        }
    }

    #[test]
    fn s8_first_point() {
        let v = verify_galois(&s8(), &galois_point(1), &sigma(1), 6, B).unwrap();
        assert!(v.verdict);
        assert_eq!(v.lambda, Some(EisNum::one()));
        assert_eq!(v.mu, Some(EisNum::zeta3()));
        assert_eq!(v.nu, Some(EisNum::one()));
    }

    #[test]
    fn negative_control() {
        let v = verify_galois(&s8(), &galois_point(2), &sigma(1), 6, B).unwrap();
        assert!(!v.verdict);
        assert_eq!(v.failed, vec!['c', 'd']);
        // P₅ is fixed by σ₁ but lines through it are not stable
        let v = verify_galois(&s8(), &galois_point(5), &sigma(1), 6, B).unwrap();
        assert!(!v.verdict && v.conditions.fixes_point);
        assert_eq!(v.failed, vec!['d']);
    }

    #[test]
    fn unsmooth_surface_is_rejected() {
        let cone = QuarticSurface::parse("X^4 + Y^4 + Z^4").unwrap();
        assert_eq!(verify_galois(&cone, &ProjPoint::basis(3), &sigma(1), 6, B), Err(Error::NotSmooth));
    }

    #[test]
    fn probes() {
        assert!(line_stability_probe(&sigma(1), &galois_point(1), 50, 0));
        assert!(line_stability_probe(&sigma(2), &galois_point(2), 100, 3));
        let q = ProjPoint::from_ints([0, 0, 1, 1]);
        assert!(!lines_stable_at(&sigma(1), &galois_point(5), &[q]));
        assert!(lines_stable_at(&sigma(1), &galois_point(5), &[ProjPoint::basis(3)]));
    }

    #[test]
    fn probe_points_depend_on_seed() {
        assert_eq!(probe_points(5, 7), probe_points(5, 7));
        assert_ne!(probe_points(5, 7), probe_points(5, 8));
    }

    #[test]
    fn samples_are_validated() {
        let bad = CatalogSamples { family3_f4: "X^4 + Z^4".into(), ..Default::default() };
        assert!(families(&bad).is_err());
        let bad = CatalogSamples { family1_f1: "X^2".into(), ..Default::default() };
        assert!(families(&bad).is_err());
        let json = r#"{"family1_f4": "X^4 + 2*Y^4 + Z^4"}"#;
        let s: CatalogSamples = serde_json::from_str(json).unwrap();
        assert_eq!(s.family1_f4, "X^4 + 2*Y^4 + Z^4");
        assert_eq!(s.family3_f4, CatalogSamples::default().family3_f4);
        assert!(serde_json::from_str::<CatalogSamples>(r#"{"family5": "X"}"#).is_err());
    }

    fn arb_unit() -> impl Strategy<Value = EisNum> {
        (-4i64..=4, -4i64..=4).prop_filter_map("nonzero", |(a, b)| {
            let x = EisNum::from_ints(a, b);
            (!x.is_zero()).then_some(x)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn verdict_ignores_representatives(i in 1usize..=8, j in 1usize..=8, c in arb_unit(), d in arb_unit()) {
            let s = s8();
            let m = sigma(i);
            let p = galois_point(j);
            let v1 = verify_galois(&s, &p, &m, 6, B).unwrap();
            let scaled_p = ProjPoint::new(p.coords().clone().map(|x| &x * &d)).unwrap();
            let v2 = verify_galois(&s, &scaled_p, &m.scaled(&c).unwrap(), 6, B).unwrap();
            prop_assert_eq!(v1.conditions, v2.conditions);
            prop_assert_eq!(v1.verdict, i == j);
            if v1.conditions.stabilizes_lines {
                prop_assert!(line_stability_probe(&m, &p, 20, c.norm().numer().try_into().unwrap_or(0)));
            }
        }
    }
}

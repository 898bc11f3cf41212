//! Quartic surfaces in P³: smoothness, invariance under a linear map,
//! fixed loci of finite-order maps and the resulting Eisenstein type.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{projective_empty, projective_empty_in};
use crate::latform::{type_dictionary, LocusInvariants};
use crate::linalg::{normalize_vector, Matrix};
use crate::modp::find_exact_zero;
use crate::poly::{Mono, Poly, NVARS};
use crate::projlin::{eigen, ProjMap, ProjPoint};
use crate::scalar::EisNum;
use crate::univariate::{uni_roots, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Smoothness {
    Smooth,
    Singular { witness: Option<ProjPoint> },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Smooth => write!(f, "smooth"),
            Smoothness::Singular { witness: Some(p) } => write!(f, "singular at {}", p),
            Smoothness::Singular { witness: None } => write!(f, "singular"),
        }
    }
}

/// A quartic form f(X, Y, Z, W) with a lazily computed smoothness
/// certificate.
#[derive(Debug)]
pub struct QuarticSurface {
    f: Poly,
    cert: OnceLock<Smoothness>,
}

impl Clone for QuarticSurface {
    fn clone(&self) -> Self {
        let cert = OnceLock::new();
        if let Some(c) = self.cert.get() {
            let _ = cert.set(c.clone());
        }
        QuarticSurface { f: self.f.clone(), cert }
    }
}

impl PartialEq for QuarticSurface {
    fn eq(&self, o: &Self) -> bool {
        self.f == o.f
    }
}

impl Eq for QuarticSurface {}

impl QuarticSurface {
    pub fn new(f: Poly) -> Result<Self> {
        if !f.is_form_of_degree(4) {
            return Err(Error::WrongDegree { expected: 4, found: f.to_string() });
        }
        Ok(QuarticSurface { f, cert: OnceLock::new() })
    }

    pub fn parse(text: &str) -> Result<Self> {
        QuarticSurface::new(text.parse()?)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn jacobian_ideal(&self) -> Vec<Poly> {
        std::iter::once(self.f.clone()).chain((0..NVARS).map(|i| self.f.partial(i))).collect()
    }

    /// The certificate, if one has been computed.
    pub fn smoothness(&self) -> Option<&Smoothness> {
        self.cert.get()
    }

    /// Jacobian criterion. A singular point found over a small prime and
    /// lifted exactly is returned as the witness; otherwise the Gröbner
    /// basis decides.
    pub fn check_smooth(&self, pair_budget: usize) -> Result<Smoothness> {
        if let Some(c) = self.cert.get() {
            return Ok(c.clone());
        }
        let gens = self.jacobian_ideal();
        let cert = match find_exact_zero(&gens, 0b1111) {
            Some(p) => Smoothness::Singular { witness: Some(p) },
            None if projective_empty(&gens, pair_budget)? => Smoothness::Smooth,
            None => Smoothness::Singular { witness: None },
        };
        Ok(self.cert.get_or_init(|| cert).clone())
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.f.eval(p.coords()).is_zero()
    }
}

impl fmt::Display for QuarticSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

impl Serialize for QuarticSurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.f.to_string())
    }
}

/// λ with f(M·x) = λ·f(x), if the map preserves the surface.
pub fn preserves(s: &QuarticSurface, m: &ProjMap) -> Option<EisNum> {
    let g = s.f.substitute_linear(m.matrix());
    let (mono, c) = s.f.leading()?;
    let lambda = g.coeff(mono).checked_div(c).ok()?;
    (!lambda.is_zero() && g == s.f.scale(&lambda)).then_some(lambda)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Genus {
    Known(u32),
    SingularUnresolved,
}

impl Serialize for Genus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Genus::Known(g) => s.serialize_u32(*g),
            Genus::SingularUnresolved => s.serialize_str("singular-unresolved"),
        }
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Known(g) => write!(f, "{}", g),
            Genus::SingularUnresolved => write!(f, "singular-unresolved"),
        }
    }
}

/// A fixed plane and the plane quartic it cuts out.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PlaneComponent {
    /// Linear form with first nonzero coefficient 1.
    pub plane: Poly,
    /// f restricted to the plane, in the three variables other than `eliminated`.
    pub curve: Poly,
    pub eliminated: usize,
    pub genus: Genus,
}

/// A fixed line and its intersection with the surface.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LineComponent {
    pub forms: [Poly; 2],
    /// Intersection points with coordinates in Q(ζ₃).
    pub points: Vec<ProjPoint>,
    /// Factor of the restricted binary quartic with no roots in Q(ζ₃).
    pub residual: Option<UniPoly>,
    /// Distinct roots of `residual`, i.e. points not written out.
    pub extra_points: usize,
    /// The whole line lies on the surface.
    pub contained: bool,
}

impl LineComponent {
    pub fn point_count(&self) -> usize {
        self.points.len() + self.extra_points
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct FixedLocus {
    pub plane_components: Vec<PlaneComponent>,
    pub line_components: Vec<LineComponent>,
    pub isolated_points: Vec<ProjPoint>,
}

impl FixedLocus {
    /// Every fixed point not lying on a fixed curve.
    pub fn point_count(&self) -> usize {
        self.isolated_points.len()
            + self.line_components.iter().filter(|l| !l.contained).map(LineComponent::point_count).sum::<usize>()
    }

    /// Explicit points: isolated ones plus those on non-contained lines.
    pub fn explicit_points(&self) -> Vec<ProjPoint> {
        let mut v = self.isolated_points.clone();
        for l in self.line_components.iter().filter(|l| !l.contained) {
            v.extend(l.points.iter().cloned());
        }
        v.sort();
        v
    }
}

/// Linear forms vanishing exactly on the span of `vectors`.
fn annihilator(vectors: &[Vec<EisNum>]) -> Vec<Poly> {
    Matrix::from_rows(vectors).kernel().into_iter().map(|v| Poly::linear(&normalize_vector(&v))).collect()
}

/// f(s·v1 + t·v2) as a form in X (for s) and Y (for t).
fn restrict_to_line(f: &Poly, v1: &[EisNum], v2: &[EisNum]) -> Poly {
    let subs: [Poly; NVARS] = std::array::from_fn(|i| {
        let mut c = vec![EisNum::zero(); NVARS];
        c[0] = v1[i].clone();
        c[1] = v2[i].clone();
        Poly::linear(&c)
    });
    f.compose(&subs)
}

fn line_component(f: &Poly, v1: &[EisNum], v2: &[EisNum]) -> Result<LineComponent> {
    let forms: [Poly; 2] = annihilator(&[v1.to_vec(), v2.to_vec()]).try_into().expect("two independent vectors");
    let g = restrict_to_line(f, v1, v2);
    if g.is_zero() {
        return Ok(LineComponent { forms, points: Vec::new(), residual: None, extra_points: 0, contained: true });
    }
    let mut points = Vec::new();
    // t = 0 is the point v1
    if g.coeff(&Mono([4, 0, 0, 0])).is_zero() {
        points.push(ProjPoint::from_slice(v1)?);
    }
    // t = 1: roots s of g(s, 1) give s·v1 + v2
    let uni = UniPoly::new((0..=4).map(|i| g.coeff(&Mono([i, 4 - i, 0, 0]))).collect());
    let split = uni_roots(&uni)?;
    for (s, _) in &split.roots {
        let p: Vec<EisNum> = v1.iter().zip(v2).map(|(a, b)| &(a * s) + b).collect();
        points.push(ProjPoint::from_slice(&p)?);
    }
    points.sort();
    let (residual, extra_points) = match split.residual.degree() {
        Some(d) if d > 0 => {
            let n = split.residual.distinct_root_count();
            (Some(split.residual), n)
        }
        _ => (None, 0),
    };
    Ok(LineComponent { forms, points, residual, extra_points, contained: false })
}

fn plane_component(f: &Poly, basis: &[Vec<EisNum>], pair_budget: usize) -> Result<PlaneComponent> {
    let plane = annihilator(basis).pop().expect("three independent vectors");
    let l = plane.linear_coeffs().expect("linear form");
    // solve for the first variable with nonzero coefficient (which is 1)
    let j = (0..NVARS).find(|&i| !l[i].is_zero()).expect("nonzero form");
    let subs: [Poly; NVARS] = std::array::from_fn(|i| {
        if i == j {
            let c: Vec<EisNum> = (0..NVARS).map(|k| if k == j { EisNum::zero() } else { -&l[k] }).collect();
            Poly::linear(&c)
        } else {
            Poly::var(i)
        }
    });
    let curve = f.compose(&subs);
    if curve.is_zero() {
        return Err(Error::Precondition(format!("surface contains the fixed plane {}", plane)));
    }
    let vars = 0b1111 & !(1u8 << j);
    let gens: Vec<Poly> = std::iter::once(curve.clone())
        .chain((0..NVARS).filter(|&i| i != j).map(|i| curve.partial(i)))
        .collect();
    let genus = if projective_empty_in(&gens, vars, pair_budget)? { Genus::Known(3) } else { Genus::SingularUnresolved };
    Ok(PlaneComponent { plane, curve, eliminated: j, genus })
}

/// Fixed locus on S of a finite-order map of order 2, 3 or 6.
pub fn fixed_locus(s: &QuarticSurface, m: &ProjMap, order_bound: u32, pair_budget: usize) -> Result<FixedLocus> {
    if preserves(s, m).is_none() {
        return Err(Error::Precondition("the map does not preserve the surface".into()));
    }
    let order = m.order(order_bound)?;
    if ![2, 3, 6].contains(&order) {
        return Err(Error::Precondition(format!("fixed loci are computed for orders 2, 3, 6, not {}", order)));
    }
    let data = eigen(m, order_bound)?;
    let mut locus = FixedLocus::default();
    for space in &data.spaces {
        match space.basis.len() {
            1 => {
                let p = ProjPoint::from_slice(&space.basis[0])?;
                if s.contains(&p) {
                    locus.isolated_points.push(p);
                }
            }
            2 => locus.line_components.push(line_component(&s.f, &space.basis[0], &space.basis[1])?),
            3 => locus.plane_components.push(plane_component(&s.f, &space.basis, pair_budget)?),
            d => return Err(Error::Precondition(format!("eigenspace of dimension {}", d))),
        }
    }
    locus.isolated_points.sort();
    locus.line_components.sort_by_key(|l| l.forms.iter().map(Poly::to_string).collect::<Vec<_>>());
    locus.plane_components.sort_by_key(|p| p.plane.to_string());
    Ok(locus)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    NonSymplectic,
    Symplectic,
    Inconsistent,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NonSymplectic => "non-symplectic",
            Classification::Symplectic => "symplectic",
            Classification::Inconsistent => "inconsistent",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct EisensteinType {
    pub r: Option<i64>,
    pub a: Option<i64>,
    pub g: i64,
    pub k: i64,
    pub n: i64,
    pub classification: Classification,
}

impl fmt::Display for EisensteinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(r), Some(a)) = (self.r, self.a) {
            write!(f, "(r,a) = ({},{}), ", r, a)?;
        }
        write!(f, "(g,k,n) = ({},{},{}), {}", self.g, self.k, self.n, self.classification)
    }
}

/// Reads (g, k, n) off a fixed locus and inverts the type formulas.
pub fn classify_locus(locus: &FixedLocus) -> Result<EisensteinType> {
    if locus.plane_components.iter().any(|p| p.genus == Genus::SingularUnresolved) {
        return Err(Error::UnresolvedGenus);
    }
    let positive: Vec<i64> = locus
        .plane_components
        .iter()
        .filter_map(|p| match p.genus {
            Genus::Known(g) if g > 0 => Some(g as i64),
            _ => None,
        })
        .collect();
    if positive.len() > 1 {
        return Err(Error::MultiplePositiveGenus);
    }
    let g = positive.first().copied().unwrap_or(0);
    let rational_planes = locus.plane_components.len() - positive.len();
    let k = (rational_planes + locus.line_components.iter().filter(|l| l.contained).count()) as i64;
    let n = locus.point_count() as i64;
    if locus.plane_components.is_empty() && k == 0 && n == 6 {
        return Ok(EisensteinType { r: None, a: None, g, k, n, classification: Classification::Symplectic });
    }
    let r = 2 * (n + 1);
    let a = n + 2 - 2 * k;
    let consistent = type_dictionary(r, a) == Some(LocusInvariants { g, k, n });
    let classification = if consistent { Classification::NonSymplectic } else { Classification::Inconsistent };
    Ok(EisensteinType { r: Some(r), a: Some(a), g, k, n, classification })
}

/// Eisenstein type of an order-3 automorphism of S.
pub fn eisenstein_type(s: &QuarticSurface, m: &ProjMap, order_bound: u32, pair_budget: usize) -> Result<EisensteinType> {
    let order = m.order(order_bound)?;
    if order != 3 {
        return Err(Error::Precondition(format!("Eisenstein type needs order 3, found {}", order)));
    }
    classify_locus(&fixed_locus(s, m, order_bound, pair_budget)?)
}

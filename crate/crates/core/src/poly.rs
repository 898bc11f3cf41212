//! Sparse polynomials over Q(ζ₃) in the variables X, Y, Z, W.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::EisNum;

pub const NVARS: usize = 4;
pub const VAR_NAMES: [char; NVARS] = ['X', 'Y', 'Z', 'W'];

/// Exponent vector for X, Y, Z, W.
///
/// Ordered by graded reverse lexicographic order with X > Y > Z > W.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Mono(e)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut e = o.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Mono(e)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = (*a).max(b);
        }
        Mono(e)
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// The variable index when this monomial is `x_i^e` with e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..NVARS).rev() {
            if self.0[i] != o.0[i] {
                return o.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, EisNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: EisNum) -> Self {
        Poly::monomial(Mono::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(Mono::var(i), EisNum::one())
    }

    pub fn monomial(m: Mono, c: EisNum) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, &c);
        p
    }

    /// Linear form Σ cᵢ·xᵢ.
    pub fn linear(coeffs: &[EisNum]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::var(i), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, EisNum)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: &EisNum) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &EisNum)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> EisNum {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<EisNum> {
        match self.terms.len() {
            0 => Some(EisNum::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &EisNum)> {
        self.terms.last_key_value()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Nonzero and homogeneous of degree `d`.
    pub fn is_form_of_degree(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.degree() == d)
    }

    /// Bitmask of the variables that occur.
    pub fn var_mask(&self) -> u8 {
        self.terms
            .keys()
            .flat_map(|m| (0..NVARS).filter(move |&i| m.0[i] > 0))
            .fold(0, |acc, i| acc | (1 << i))
    }

    pub fn scale(&self, c: &EisNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Mono, c: &EisNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(EisNum::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[var] -= 1;
            out.add_term(dm, &(c * &EisNum::from(e as i64)));
        }
        out
    }

    pub fn eval(&self, pt: &[EisNum]) -> EisNum {
        assert!(pt.len() >= self.used_arity(), "evaluation point has too few coordinates");
        let mut acc = EisNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &pt[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    fn used_arity(&self) -> usize {
        let mask = self.var_mask();
        (0..NVARS).rev().find(|&i| mask & (1 << i) != 0).map_or(0, |i| i + 1)
    }

    /// Substitutes `subs[i]` for variable i.
    pub fn compose(&self, subs: &[Poly; NVARS]) -> Poly {
        let maxe: Vec<u32> = (0..NVARS)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Poly>> = (0..NVARS)
            .map(|i| {
                let mut v = vec![Poly::constant(EisNum::one())];
                for k in 1..=maxe[i] as usize {
                    let next = &v[k - 1] * &subs[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for i in 0..NVARS {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Returns f(M·x): each variable xᵢ is replaced by Σⱼ M[i][j]·xⱼ.
    pub fn substitute_linear(&self, m: &Matrix) -> Poly {
        assert_eq!((m.rows(), m.cols()), (NVARS, NVARS), "substitution needs a 4×4 matrix");
        let subs: [Poly; NVARS] = std::array::from_fn(|i| Poly::linear(m.row(i)));
        self.compose(&subs)
    }

    /// Coefficients of a linear form, or `None` if not linear homogeneous.
    pub fn linear_coeffs(&self) -> Option<[EisNum; NVARS]> {
        if !self.is_form_of_degree(1) {
            return None;
        }
        Some(std::array::from_fn(|i| self.coeff(&Mono::var(i))))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&EisNum::from(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Splits a coefficient into a sign and a printable magnitude for a
/// term that is followed by a monomial. `None` magnitude means "1".
fn split_coeff(c: &EisNum) -> (bool, Option<String>) {
    if c.is_rational() {
        let neg = c.re().is_negative();
        let abs = EisNum::from_rat(c.re().abs());
        let s = if abs.re().is_one() { None } else { Some(abs.to_string()) };
        (neg, s)
    } else if c.re().is_zero() {
        let neg = c.im().is_negative();
        (neg, Some(EisNum::new(c.re().clone(), c.im().abs()).to_string()))
    } else {
        (false, Some(format!("({})", c)))
    }
}

impl fmt::Display for Poly {
    /// Canonical form: terms in descending grevlex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_coeff(c);
            let body = match (mag, *m == Mono::one()) {
                (None, true) => "1".to_string(),
                (None, false) => m.to_string(),
                (Some(s), true) => s,
                (Some(s), false) => format!("{}*{}", s, m),
            };
            match (idx, neg) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_poly(s)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn s8() -> Poly {
        p("X^4 + Z^4 + X*Y^3 + Z*W^3")
    }

    #[test]
    fn grevlex_order() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        let w = Mono::var(3);
        assert!(x > y);
        assert!(y > w);
        // X*W^2 vs Y^3 in degree 3: last differing exponent W: 2 vs 0
        assert!(Mono([0, 3, 0, 0]) > Mono([1, 0, 0, 2]));
        assert!(Mono([0, 0, 0, 2]) > x);
    }

    #[test]
    fn canonical_print() {
        assert_eq!(s8().to_string(), "X^4 + X*Y^3 + Z^4 + Z*W^3");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("(1+2*w)*X - (1+2*w)*X").to_string(), "0");
        assert_eq!(p("-X + 1/2*w*Y - (1+w)*Z + 3").to_string(), "-X + 1/2*w*Y + (-1 - w)*Z + 3");
    }

    #[test]
    fn substitution_examples() {
        let f = p("X^4 + Y^4 + Z^4 + X*W^3");
        let sigma1 = Matrix::diag(&[EisNum::one(), EisNum::one(), EisNum::one(), EisNum::zeta3()]);
        assert_eq!(f.substitute_linear(&sigma1), f);
        assert_eq!(p("X").substitute_linear(&Matrix::identity(4)), p("X"));
        let flip = Matrix::diag(&[1, 1, -1, -1].map(EisNum::from));
        assert_eq!(s8().substitute_linear(&flip), s8());
    }

    #[test]
    fn partials() {
        assert_eq!(s8().partial(0), p("4*X^3 + Y^3"));
        assert_eq!(p("X^4").partial(3), Poly::zero());
        assert_eq!(p("X*Y^3").partial(1), p("3*X*Y^2"));
    }

    #[test]
    fn evaluation() {
        let e = |a: i64, b: i64, c: i64, d: i64| [a, b, c, d].map(EisNum::from);
        assert!(s8().eval(&e(0, 0, 0, 1)).is_zero());
        let p2 = [EisNum::zero(), EisNum::zero(), EisNum::zeta6(), EisNum::one()];
        assert!(s8().eval(&p2).is_zero());
        assert!(p("X^4").eval(&e(0, 0, 0, 1)).is_zero());
        assert!(p("X^4").eval(&e(1, 0, 0, 0)).is_one());
    }

    #[test]
    fn pure_power_detection() {
        assert_eq!(Mono([0, 0, 5, 0]).pure_power_var(), Some(2));
        assert_eq!(Mono([1, 0, 5, 0]).pure_power_var(), None);
        assert_eq!(Mono::one().pure_power_var(), None);
    }

    fn arb_coeff() -> impl Strategy<Value = EisNum> {
        (-5i64..=5, 1i64..4, -5i64..=5).prop_map(|(a, d, b)| EisNum::new(rat(a, d), rat(b, 1)))
    }

    fn arb_quartic() -> impl Strategy<Value = Poly> {
        let monos: Vec<Mono> = quartic_monomials();
        proptest::collection::vec((0..monos.len(), arb_coeff()), 1..8).prop_map(move |ts| {
            Poly::from_terms(ts.into_iter().map(|(i, c)| (monos[i], c)))
        })
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-2i64..=2, -1i64..=1), 16)
            .prop_map(|v| Matrix::new(4, 4, v.into_iter().map(|(a, b)| EisNum::from_ints(a, b)).collect()))
    }

    pub(crate) fn quartic_monomials() -> Vec<Mono> {
        let mut out = Vec::new();
        for a in 0..=4u32 {
            for b in 0..=4 - a {
                for c in 0..=4 - a - b {
                    out.push(Mono([a, b, c, 4 - a - b - c]));
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn euler_identity(f in arb_quartic()) {
            let mut lhs = Poly::zero();
            for i in 0..NVARS {
                lhs = &lhs + &(&Poly::var(i) * &f.partial(i));
            }
            prop_assert_eq!(lhs, f.scale(&EisNum::from(4)));
        }

        #[test]
        fn substitution_composes(f in arb_quartic(), m in arb_matrix(), n in arb_matrix()) {
            let lhs = f.substitute_linear(&m).substitute_linear(&n);
            prop_assert_eq!(lhs, f.substitute_linear(&m.mul(&n)));
        }

        #[test]
        fn print_parse_round_trip(f in arb_quartic()) {
            prop_assert_eq!(f.to_string().parse::<Poly>().unwrap(), f);
        }
    }
}

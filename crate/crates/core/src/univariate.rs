//! Dense univariate polynomials over Q(ζ₃) and an exact root finder for
//! degree ≤ 4.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{EisNum, Rat};

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<EisNum>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<EisNum>) -> Self {
        while coeffs.last().is_some_and(EisNum::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: EisNum) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `k`.
    pub fn x() -> Self {
        UniPoly::new(vec![EisNum::zero(), EisNum::one()])
    }

    /// `k − r`.
    pub fn linear_factor(r: &EisNum) -> Self {
        UniPoly::new(vec![-r, EisNum::one()])
    }

    pub fn coeffs(&self) -> &[EisNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&EisNum> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &EisNum) -> EisNum {
        let mut acc = EisNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = EisNum::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&EisNum::from(-1)))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![EisNum::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &EisNum) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::constant(EisNum::one()), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => UniPoly::zero(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &EisNum::from(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![EisNum::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let q = rem[top].clone() * &lead_inv;
            let shift = top - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&q * c);
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(EisNum::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "k".into(),
                _ => format!("k^{}", i),
            };
            match (c.is_one(), i) {
                (true, 0) => write!(f, "1")?,
                (true, _) => write!(f, "{}", mono)?,
                (false, 0) => write!(f, "({})", c)?,
                (false, _) => write!(f, "({})*{}", c, mono)?,
            }
        }
        Ok(())
    }
}

/// Result of splitting a univariate polynomial over Q(ζ₃).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSplit {
    /// Distinct roots in Q(ζ₃) with multiplicities, sorted.
    pub roots: Vec<(EisNum, u32)>,
    /// Monic factor with no roots in Q(ζ₃); the constant 1 when the
    /// polynomial splits completely.
    pub residual: UniPoly,
}

impl RootSplit {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| *m as usize).sum()
    }
}

/// Norms above this bound are not searched for divisors.
const NORM_SEARCH_LIMIT: u128 = 1 << 46;

/// All roots of `p` lying in Q(ζ₃), with multiplicities.
pub fn uni_roots(p: &UniPoly) -> Result<RootSplit> {
    let deg = p.degree().ok_or_else(|| Error::Precondition("root finding on the zero polynomial".into()))?;
    if deg > 4 {
        return Err(Error::DegreeTooLarge(deg));
    }
    let mut rest = p.monic();
    let mut found: Vec<(EisNum, u32)> = Vec::new();
    fn push(r: EisNum, found: &mut Vec<(EisNum, u32)>) {
        if let Some(slot) = found.iter_mut().find(|(x, _)| *x == r) {
            slot.1 += 1;
        } else {
            found.push((r, 1));
        }
    }
    loop {
        let d = rest.degree().unwrap_or(0);
        if d == 0 {
            break;
        }
        let root = match d {
            1 => Some(-&rest.coeffs[0]),
            2 => quadratic_root(&rest),
            _ => find_root(&rest),
        };
        match root {
            Some(r) => {
                debug_assert!(rest.eval(&r).is_zero());
                rest = rest.div_rem(&UniPoly::linear_factor(&r)).0;
                push(r, &mut found);
            }
            None => break,
        }
    }
    found.sort();
    Ok(RootSplit { roots: found, residual: rest })
}

fn quadratic_root(p: &UniPoly) -> Option<EisNum> {
    // monic k² + b·k + c
    let b = &p.coeffs[1];
    let c = &p.coeffs[0];
    let disc = &(b * b) - &(c * &EisNum::from(4));
    let (s, _) = disc.sqrt()?;
    Some(&(&s - b) / &EisNum::from(2))
}

/// Finds one root of a monic polynomial of degree ≥ 3 by searching the
/// divisors of the constant term of an integral rescaling.
fn find_root(p: &UniPoly) -> Option<EisNum> {
    if p.coeffs[0].is_zero() {
        return Some(EisNum::zero());
    }
    // Roots of unity cover every normalized finite-order eigenvalue.
    for i in 0..6 {
        let z = EisNum::zeta6_pow(i);
        if p.eval(&z).is_zero() {
            return Some(z);
        }
    }
    // q(y) = D^n p(y/D) is monic over Z[ζ₃]; its roots divide q(0).
    let n = p.degree()?;
    let denom = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let dd = EisNum::from_rat(Rat::from_integer(denom.clone()));
    let q0 = &p.coeffs[0] * &dd.pow(n as u32);
    let norm = q0.norm().to_integer().abs().to_u128()?;
    if norm > NORM_SEARCH_LIMIT {
        return None;
    }
    for m in divisors(norm) {
        for y in elements_of_norm(m) {
            let k = &y / &dd;
            if p.eval(&k).is_zero() {
                return Some(k);
            }
        }
    }
    None
}

fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut i = 1u128;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// All a + bζ₃ in Z[ζ₃] with a² − ab + b² = m.
fn elements_of_norm(m: u128) -> Vec<EisNum> {
    // 4m = (2a − b)² + 3b², so |b| ≤ sqrt(4m/3)
    let m = m as i128;
    let mut out = Vec::new();
    let bmax = ((4 * m / 3) as f64).sqrt() as i128 + 1;
    for b in -bmax..=bmax {
        let rest = 4 * m - 3 * b * b;
        if rest < 0 {
            continue;
        }
        let s = isqrt(rest);
        if s * s != rest {
            continue;
        }
        for t in [s, -s] {
            if (t + b) % 2 == 0 {
                let a = (t + b) / 2;
                let x = EisNum::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()));
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn k_minus(r: EisNum) -> UniPoly {
        UniPoly::linear_factor(&r)
    }

    #[test]
    fn eigen_polynomial_from_mt1() {
        // (1−k)²(k² − ζ₆k + ζ₆²)
        let u = EisNum::zeta6();
        let quad = UniPoly::new(vec![&u * &u, -&u, EisNum::one()]);
        let one_minus_k = UniPoly::new(vec![EisNum::one(), EisNum::from(-1)]);
        let p = one_minus_k.pow(2).mul(&quad);
        let split = uni_roots(&p).unwrap();
        assert_eq!(split.roots, vec![(EisNum::zeta3(), 1), (EisNum::one(), 3)]);
        assert_eq!(split.residual, UniPoly::constant(EisNum::one()));
    }

    #[test]
    fn cube_roots_of_minus_one() {
        let p = UniPoly::new(vec![EisNum::one(), EisNum::zero(), EisNum::zero(), EisNum::one()]);
        let split = uni_roots(&p).unwrap();
        let w = EisNum::zeta3();
        let mut expected = vec![EisNum::from(-1), -&w, -(&w * &w)];
        expected.sort();
        let got: Vec<EisNum> = split.roots.iter().map(|(r, m)| {
            assert_eq!(*m, 1);
            r.clone()
        }).collect();
        assert_eq!(got, expected);
        for r in &got {
            assert_eq!(r.pow(3), EisNum::from(-1));
        }
    }

    #[test]
    fn irreducible_quadratic_is_residual() {
        let p = UniPoly::new(vec![EisNum::from(-2), EisNum::zero(), EisNum::one()]);
        let split = uni_roots(&p).unwrap();
        assert!(split.roots.is_empty());
        assert_eq!(split.residual, p);
        assert_eq!(split.residual.distinct_root_count(), 2);
    }

    #[test]
    fn non_unit_roots() {
        let r1 = EisNum::new(rat(3, 2), rat(-1, 1));
        let r2 = EisNum::from_ints(2, 5);
        let r3 = EisNum::from(7);
        let p = k_minus(r1.clone()).mul(&k_minus(r2.clone())).mul(&k_minus(r3.clone())).mul(&k_minus(r3.clone()));
        let split = uni_roots(&p).unwrap();
        let mut expected = vec![(r1, 1), (r2, 1), (r3, 2)];
        expected.sort();
        assert_eq!(split.roots, expected);
    }

    #[test]
    fn degree_limit() {
        let p = UniPoly::x().pow(5);
        assert!(matches!(uni_roots(&p), Err(Error::DegreeTooLarge(5))));
    }

    #[test]
    fn division_and_gcd() {
        let a = k_minus(EisNum::from(1)).mul(&k_minus(EisNum::zeta3()));
        let b = k_minus(EisNum::zeta3()).mul(&k_minus(EisNum::from(5)));
        assert_eq!(a.gcd(&b), k_minus(EisNum::zeta3()));
        let (q, r) = a.mul(&b).div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
    }
}

//! Exact arithmetic in the Eisenstein field Q(ζ₃).
//!
//! Elements are stored on the basis {1, ζ₃} and multiplied using
//! ζ₃² = −1 − ζ₃. The primitive sixth root of unity is ζ₆ = 1 + ζ₃.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// An element `re + im·ζ₃` of Q(ζ₃).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct EisNum {
    re: Rat,
    im: Rat,
}

impl EisNum {
    pub fn new(re: Rat, im: Rat) -> Self {
        EisNum { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        EisNum::new(rat_int(re), rat_int(im))
    }

    pub fn from_rat(re: Rat) -> Self {
        EisNum::new(re, Rat::zero())
    }

    pub fn zero() -> Self {
        EisNum::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        EisNum::from_ints(1, 0)
    }

    /// ζ₃, a primitive cube root of unity.
    pub fn zeta3() -> Self {
        EisNum::from_ints(0, 1)
    }

    /// ζ₆ = 1 + ζ₃, a primitive sixth root of unity.
    pub fn zeta6() -> Self {
        EisNum::from_ints(1, 1)
    }

    /// ζ₆ⁱ for any integer exponent.
    pub fn zeta6_pow(i: i64) -> Self {
        EisNum::zeta6().pow(i.rem_euclid(6) as u32)
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Galois conjugate: ζ₃ ↦ ζ₃² = −1 − ζ₃.
    pub fn conj(&self) -> Self {
        EisNum::new(&self.re - &self.im, -&self.im)
    }

    /// Field norm a² − ab + b².
    pub fn norm(&self) -> Rat {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    /// Field trace x + conj(x) = 2a − b.
    pub fn trace(&self) -> Rat {
        &self.re + &self.re - &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(EisNum::new(c.re / &n, c.im / n))
    }

    pub fn checked_div(&self, other: &EisNum) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        EisNum::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = EisNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square roots inside Q(ζ₃): returns `(y, −y)` with y² = self, or
    /// `None` when self is not a square in the field.
    ///
    /// With n = √N(x) and t = tr(x), a root y = p + qζ₃ satisfies
    /// q² = (2n − t)/3 and (2p − q)² = t + 2n.
    pub fn sqrt(&self) -> Option<(EisNum, EisNum)> {
        if self.is_zero() {
            return Some((EisNum::zero(), EisNum::zero()));
        }
        let n = rat_sqrt(&self.norm())?;
        let t = self.trace();
        let two_n = &n + &n;
        let q = rat_sqrt(&((&two_n - &t) / rat_int(3)))?;
        let s = rat_sqrt(&(&t + &two_n))?;
        for (sq, ss) in [(1, 1), (1, -1)] {
            let qq = &q * rat_int(sq);
            let sv = &s * rat_int(ss);
            let p = (&sv + &qq) / rat_int(2);
            let y = EisNum::new(p, qq);
            if &(&y * &y) == self {
                let neg = -&y;
                return Some(if y >= neg { (y, neg) } else { (neg, y) });
            }
        }
        None
    }

    /// Least common multiple of the two coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Complex embedding sending ζ₃ to e^{2πi/3}. Display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let a = self.re.to_f64().unwrap_or(f64::NAN);
        let b = self.im.to_f64().unwrap_or(f64::NAN);
        (a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

impl From<i64> for EisNum {
    fn from(n: i64) -> Self {
        EisNum::from_ints(n, 0)
    }
}

impl From<Rat> for EisNum {
    fn from(r: Rat) -> Self {
        EisNum::from_rat(r)
    }
}

impl<'a> Add<&'a EisNum> for &'a EisNum {
    type Output = EisNum;
    fn add(self, o: &EisNum) -> EisNum {
        EisNum::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a EisNum> for &'a EisNum {
    type Output = EisNum;
    fn sub(self, o: &EisNum) -> EisNum {
        EisNum::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a EisNum> for &'a EisNum {
    type Output = EisNum;
    fn mul(self, o: &EisNum) -> EisNum {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd·w², w² = −1 − w
        let ac = &self.re * &o.re;
        let bd = &self.im * &o.im;
        let cross = &self.re * &o.im + &self.im * &o.re;
        EisNum::new(ac - &bd, cross - bd)
    }
}

impl Neg for &EisNum {
    type Output = EisNum;
    fn neg(self) -> EisNum {
        EisNum::new(-&self.re, -&self.im)
    }
}

impl Neg for EisNum {
    type Output = EisNum;
    fn neg(self) -> EisNum {
        EisNum::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<EisNum> for EisNum {
            type Output = EisNum;
            fn $m(self, o: EisNum) -> EisNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a EisNum> for EisNum {
            type Output = EisNum;
            fn $m(self, o: &EisNum) -> EisNum {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<EisNum> for &'a EisNum {
            type Output = EisNum;
            fn $m(self, o: EisNum) -> EisNum {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Panics on division by zero; use [`EisNum::checked_div`] otherwise.
impl<'a> Div<&'a EisNum> for &'a EisNum {
    type Output = EisNum;
    fn div(self, o: &EisNum) -> EisNum {
        self.checked_div(o).expect("division by zero in Q(ζ₃)")
    }
}

impl Div<EisNum> for EisNum {
    type Output = EisNum;
    fn div(self, o: EisNum) -> EisNum {
        &self / &o
    }
}

impl AddAssign<&EisNum> for EisNum {
    fn add_assign(&mut self, o: &EisNum) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&EisNum> for EisNum {
    fn sub_assign(&mut self, o: &EisNum) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&EisNum> for EisNum {
    fn mul_assign(&mut self, o: &EisNum) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `p/q*w` without a leading sign; `w` alone for unit coefficient.
fn fmt_w_term(abs: &Rat) -> String {
    if abs.is_one() {
        "w".to_string()
    } else {
        format!("{}*w", fmt_rat(abs))
    }
}

impl fmt::Display for EisNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{}{}", sign, fmt_w_term(&self.im.abs()))
            }
            (false, false) => {
                let op = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}", fmt_rat(&self.re), op, fmt_w_term(&self.im.abs()))
            }
        }
    }
}

impl FromStr for EisNum {
    type Err = Error;

    /// Accepts any constant expression of the polynomial grammar, e.g.
    /// `-1/2 + 3*w`, `u`, `(2*u - 1)/3`.
    fn from_str(s: &str) -> Result<Self> {
        let p = crate::parse::parse_poly(s)?;
        p.as_constant().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected a constant, found polynomial `{}`", p),
        })
    }
}

impl serde::Serialize for EisNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w() -> EisNum {
        EisNum::zeta3()
    }

    #[test]
    fn zeta6_squared_is_zeta3() {
        let u = EisNum::zeta6();
        assert_eq!(&u * &u, w());
    }

    #[test]
    fn zeta3_cubed_is_one() {
        assert_eq!(w().pow(3), EisNum::one());
        assert_eq!(&(&w() * &w()) * &w(), EisNum::one());
    }

    #[test]
    fn sqrt_minus_three() {
        let s = EisNum::from_ints(1, 2);
        assert_eq!(&s * &s, EisNum::from(-3));
    }

    #[test]
    fn inverses() {
        assert_eq!(w().inv().unwrap(), EisNum::from_ints(-1, -1));
        // (1+ζ₃)⁻¹ = −ζ₃, checked by expanding (1+ζ₃)(−ζ₃) = −ζ₃ − ζ₃² = 1
        let u = EisNum::zeta6();
        assert_eq!(u.inv().unwrap(), EisNum::from_ints(0, -1));
        assert_eq!(&u * &EisNum::from_ints(0, -1), EisNum::one());
        assert_eq!(EisNum::from(2).inv().unwrap(), EisNum::from_rat(rat(1, 2)));
        assert!(matches!(EisNum::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn square_roots() {
        let (y, ny) = w().sqrt().unwrap();
        assert_eq!(y, EisNum::zeta6());
        assert_eq!(ny, -EisNum::zeta6());
        let (y, _) = EisNum::from(-3).sqrt().unwrap();
        assert!(y == EisNum::from_ints(1, 2) || y == EisNum::from_ints(-1, -2));
        assert!(EisNum::from(2).sqrt().is_none());
        assert!(EisNum::from(-1).sqrt().is_none());
        let (y, _) = EisNum::from_rat(rat(9, 4)).sqrt().unwrap();
        assert_eq!(y, EisNum::from_rat(rat(3, 2)));
    }

    #[test]
    fn no_rational_root_of_two_by_search() {
        // p² − q² = 2 and 2pq − q² = 0 with small rational p, q
        for pn in -20i64..=20 {
            for qn in -20i64..=20 {
                for d in 1i64..=6 {
                    let y = EisNum::new(rat(pn, d), rat(qn, d));
                    assert_ne!(&y * &y, EisNum::from(2));
                }
            }
        }
    }

    #[test]
    fn conj_of_zeta3_is_its_square() {
        assert_eq!(w().conj(), &w() * &w());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(EisNum::zero().to_string(), "0");
        assert_eq!(EisNum::from_ints(1, 1).to_string(), "1 + w");
        assert_eq!(EisNum::new(rat(-1, 2), rat(-3, 4)).to_string(), "-1/2 - 3/4*w");
        assert_eq!(EisNum::from_ints(0, -1).to_string(), "-w");
        assert_eq!(EisNum::new(rat(0, 1), rat(2, 6)).to_string(), "1/3*w");
    }

    #[test]
    fn parse_sugar() {
        assert_eq!("u".parse::<EisNum>().unwrap(), EisNum::zeta6());
        assert_eq!("(2*u - 1)/3".parse::<EisNum>().unwrap(), EisNum::new(rat(1, 3), rat(2, 3)));
        assert!("X".parse::<EisNum>().is_err());
    }

    fn arb_eis() -> impl Strategy<Value = EisNum> {
        (-50i64..50, 1i64..8, -50i64..50, 1i64..8)
            .prop_map(|(a, b, c, d)| EisNum::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_eis(), y in arb_eis(), z in arb_eis()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), EisNum::one());
            }
        }

        #[test]
        fn norm_multiplicative(x in arb_eis(), y in arb_eis()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!(&x.conj() * &x, EisNum::from_rat(x.norm()));
        }

        #[test]
        fn sqrt_of_square(x in arb_eis()) {
            let sq = &x * &x;
            let (y, ny) = sq.sqrt().unwrap();
            prop_assert_eq!(&y * &y, sq.clone());
            prop_assert!(y == x || ny == x);
        }

        #[test]
        fn display_parses_back(x in arb_eis()) {
            prop_assert_eq!(x.to_string().parse::<EisNum>().unwrap(), x);
        }
    }
}

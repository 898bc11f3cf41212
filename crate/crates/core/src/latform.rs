//! Integral binary quadratic forms and small lattice invariants.
//!
//! A form (a, b, c) stands for ax² + bxy + cy², with even Gram matrix
//! [[2a, b], [b, 2c]].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BQForm {
    #[serde(serialize_with = "ser_big")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub b: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub c: BigInt,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl BQForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BQForm { a: a.into(), b: b.into(), c: c.into() }
    }

    /// Reads an even Gram matrix [[2a, b], [b, 2c]].
    pub fn from_gram(g: &IntMat) -> Result<Self> {
        if g.rows() != 2 || g.cols() != 2 || g.get(0, 1) != g.get(1, 0) {
            return Err(Error::MatrixFormat("expected a symmetric 2×2 Gram matrix".into()));
        }
        let two = BigInt::from(2);
        if !g.get(0, 0).is_multiple_of(&two) || !g.get(1, 1).is_multiple_of(&two) {
            return Err(Error::MatrixFormat("Gram matrix must be even".into()));
        }
        Ok(BQForm::new(g.get(0, 0) / &two, g.get(0, 1).clone(), g.get(1, 1) / &two))
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn gram(&self) -> IntMat {
        IntMat::new(2, 2, vec![&self.a * 2, self.b.clone(), self.b.clone(), &self.c * 2])
    }

    /// |b| ≤ a ≤ c, with b ≥ 0 when |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let babs = self.b.abs();
        babs <= self.a && self.a <= self.c && ((babs != self.a && self.a != self.c) || !self.b.is_negative())
    }

    /// Gram matrix of the form in the basis given by the rows of `t`.
    pub fn transform(&self, t: &IntMat) -> BQForm {
        let g = t.mul(&self.gram()).mul(&t.transpose());
        BQForm::from_gram(&g).expect("congruent even matrix stays even")
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl FromStr for BQForm {
    type Err = Error;

    /// Gram-matrix text `2a,b,2c`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<BigInt> = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| Error::MatrixFormat(format!("`{}`: {}", t.trim(), e))))
            .collect::<Result<_>>()?;
        if v.len() != 3 {
            return Err(Error::MatrixFormat(format!("expected `2a,b,2c`, found {} entries", v.len())));
        }
        BQForm::from_gram(&IntMat::new(2, 2, vec![v[0].clone(), v[1].clone(), v[1].clone(), v[2].clone()]))
    }
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        IntMat::new(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::new(n, n, vec![BigInt::zero(); n * n]);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMat::new(self.rows, o.cols, vec![BigInt::zero(); self.rows * o.cols]);
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..o.cols {
                    *out.at(i, j) += self.get(i, k) * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> IntMat {
        IntMat::new(self.rows, self.cols, self.data.iter().map(|x| x * c).collect())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::new(self.cols, self.rows, vec![BigInt::zero(); self.data.len()]);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.at(i, j) = v;
                }
                *a.at(i, k) = BigInt::zero();
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += k · row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(j, c) * k;
            *self.at(i, c) += v;
        }
    }

    /// col_i += k · col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, j) * k;
            *self.at(r, i) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c);
            *self.at(i, c) = v;
        }
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }
}

impl fmt::Display for IntMat {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntMat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|t| t.trim().parse::<BigInt>().map_err(|e| Error::MatrixFormat(format!("`{}`: {}", t.trim(), e))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MatrixFormat("rows must be nonempty and of equal length".into()));
        }
        let n = rows.len();
        Ok(IntMat::new(n, cols, rows.into_iter().flatten().collect()))
    }
}

impl Serialize for IntMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Gauss reduction. Returns the reduced form and T ∈ SL₂(Z) with
/// Gram(reduced) = T · Gram(q) · Tᵀ.
pub fn reduce_form(q: &BQForm) -> Result<(BQForm, IntMat)> {
    if !q.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (mut a, mut b, mut c) = (q.a.clone(), q.b.clone(), q.c.clone());
    let mut t = IntMat::identity(2);
    loop {
        // translate: e₂ ↦ e₂ + m·e₁ puts b into (−a, a]
        let two_a = &a * 2;
        let m = (&a - &b).div_floor(&two_a);
        if !m.is_zero() {
            let new_c = &a * &m * &m + &b * &m + &c;
            b = &b + &two_a * &m;
            c = new_c;
            t.add_row(1, 0, &m);
        }
        let swap = c < a || (c == a && b.is_negative());
        if !swap {
            break;
        }
        // e₁ ↦ e₂, e₂ ↦ −e₁
        std::mem::swap(&mut a, &mut c);
        b = -b;
        t.swap_rows(0, 1);
        t.negate_row(1);
    }
    let r = BQForm { a, b, c };
    debug_assert!(r.is_reduced());
    Ok((r, t))
}

pub fn equivalent(q1: &BQForm, q2: &BQForm) -> Result<bool> {
    Ok(reduce_form(q1)?.0 == reduce_form(q2)?.0)
}

/// Smith normal form: returns (D, U, V) with U·m·V = D diagonal,
/// d₁ | d₂ | …, all dᵢ ≥ 0, and U, V unimodular.
pub fn smith_normal_form(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(r);
    let mut v = IntMat::identity(c);
    let n = r.min(c);
    let mut k = 0;
    while k < n {
        // pivot: smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..r {
            for j in k..c {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        let mut clean = true;
        for i in k + 1..r {
            let q = d.get(i, k).div_floor(d.get(k, k));
            if !q.is_zero() {
                d.add_row(i, k, &-&q);
                u.add_row(i, k, &-&q);
            }
            if !d.get(i, k).is_zero() {
                clean = false;
            }
        }
        for j in k + 1..c {
            let q = d.get(k, j).div_floor(d.get(k, k));
            if !q.is_zero() {
                d.add_col(j, k, &-&q);
                v.add_col(j, k, &-&q);
            }
            if !d.get(k, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-multiple from the block into row k
        let piv = d.get(k, k).clone();
        let bad = (k + 1..r).find_map(|i| (k + 1..c).find(|&j| !d.get(i, j).is_multiple_of(&piv)).map(|_| i));
        if let Some(i) = bad {
            let one = BigInt::one();
            d.add_row(k, i, &one);
            u.add_row(k, i, &one);
            continue;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    (d, u, v)
}

/// Discriminant group Hom(L, Z)/L of a lattice with the given Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiscGroup {
    /// Invariant factors greater than 1, in divisibility order.
    #[serde(serialize_with = "ser_bigs")]
    pub factors: Vec<BigInt>,
}

fn ser_bigs<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for v in x {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

impl DiscGroup {
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when the group is (Z/p)^a for some a ≥ 0.
    pub fn is_p_elementary(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.factors.iter().all(|f| *f == p)
    }

    pub fn length(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for DiscGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("Z/{}", x)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn disc_group(gram: &IntMat) -> Result<DiscGroup> {
    if gram.rows != gram.cols || gram.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let (d, _, _) = smith_normal_form(gram);
    Ok(DiscGroup { factors: d.diagonal().into_iter().filter(|x| !x.is_one()).collect() })
}

/// The form attached to a CM point τ with primitive minimal polynomial
/// A·t² + B·t + C: (a, b, c) = (A, B, C), so that
/// τ = (−b + √(b² − 4ac)) / 2a.
///
/// The caller is responsible for the curves actually being isogenous
/// with CM by this order; that hypothesis is not checked here.
pub fn cm_form(a: i64, b: i64, c: i64) -> Result<BQForm> {
    if a <= 0 {
        return Err(Error::NotImaginaryQuadratic(format!("leading coefficient {} must be positive", a)));
    }
    if a.gcd(&b).gcd(&c) != 1 {
        return Err(Error::NotImaginaryQuadratic(format!("coefficients ({}, {}, {}) are not coprime", a, b, c)));
    }
    let q = BQForm::new(a, b, c);
    if !q.discriminant().is_negative() {
        return Err(Error::NotImaginaryQuadratic(format!("discriminant {} is not negative", q.discriminant())));
    }
    Ok(q)
}

/// Gram matrix of the transcendental lattice of the Shioda–Inose partner:
/// 4 · [[2a, b], [b, 2c]].
pub fn shioda_inose_scale(q: &BQForm) -> IntMat {
    q.gram().scale(4)
}

/// Fixed-locus invariants of an Eisenstein K3 surface of type (r, a).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LocusInvariants {
    pub g: i64,
    pub k: i64,
    pub n: i64,
}

/// (r, a) ↦ (g, k, n) with g = (22 − r − 2a)/4, k = (2 + r − 2a)/4,
/// n = r/2 − 1; `None` unless all three are non-negative integers.
pub fn type_dictionary(r: i64, a: i64) -> Option<LocusInvariants> {
    let g4 = 22 - r - 2 * a;
    let k4 = 2 + r - 2 * a;
    if g4 < 0 || k4 < 0 || g4 % 4 != 0 || k4 % 4 != 0 || r % 2 != 0 || r < 2 {
        return None;
    }
    Some(LocusInvariants { g: g4 / 4, k: k4 / 4, n: r / 2 - 1 })
}

/// Inverse direction: r = 2(n + 1), a = n + 2 − 2k, accepted only when the
/// forward formulas reproduce (g, k, n).
pub fn type_from_locus(inv: LocusInvariants) -> Option<(i64, i64)> {
    let r = 2 * (inv.n + 1);
    let a = inv.n + 2 - 2 * inv.k;
    (type_dictionary(r, a) == Some(inv)).then_some((r, a))
}

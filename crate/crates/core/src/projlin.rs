//! Points and finite-order transformations of P³ over Q(ζ₃).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{normalize_vector, Matrix};
use crate::scalar::EisNum;
use crate::univariate::{uni_roots, UniPoly};

/// Default bound for projective orders: Q(ζ₃) contains exactly the sixth
/// roots of unity.
pub const DEFAULT_ORDER_BOUND: u32 = 6;

/// A point of P³ stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    coords: [EisNum; 4],
}

impl ProjPoint {
    pub fn new(coords: [EisNum; 4]) -> Result<Self> {
        if coords.iter().all(EisNum::is_zero) {
            return Err(Error::Precondition("projective point with all coordinates zero".into()));
        }
        let v = normalize_vector(&coords);
        Ok(ProjPoint { coords: v.try_into().expect("length 4") })
    }

    pub fn from_slice(v: &[EisNum]) -> Result<Self> {
        let arr: [EisNum; 4] = v
            .to_vec()
            .try_into()
            .map_err(|_| Error::Precondition("projective point needs 4 coordinates".into()))?;
        ProjPoint::new(arr)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        ProjPoint::new(c.map(EisNum::from)).expect("nonzero point")
    }

    /// The coordinate point eᵢ.
    pub fn basis(i: usize) -> Self {
        let mut c = [0; 4];
        c[i] = 1;
        ProjPoint::from_ints(c)
    }

    pub fn coords(&self) -> &[EisNum; 4] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {} : {}]", self.coords[0], self.coords[1], self.coords[2], self.coords[3])
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Accepts `[a : b : c : d]`, `a:b:c:d` or `a,b,c,d`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let sep = if t.contains(':') { ':' } else { ',' };
        let parts: Vec<EisNum> = t.split(sep).map(str::parse).collect::<Result<_>>()?;
        if parts.len() != 4 {
            return Err(Error::MatrixFormat(format!("expected 4 coordinates, found {}", parts.len())));
        }
        ProjPoint::from_slice(&parts)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An invertible 4×4 matrix up to nonzero scalars.
#[derive(Debug)]
pub struct ProjMap {
    matrix: Matrix,
    order: OnceLock<u32>,
}

impl Clone for ProjMap {
    fn clone(&self) -> Self {
        let order = OnceLock::new();
        if let Some(&n) = self.order.get() {
            let _ = order.set(n);
        }
        ProjMap { matrix: self.matrix.clone(), order }
    }
}

impl PartialEq for ProjMap {
    fn eq(&self, o: &Self) -> bool {
        self.matrix.normalized() == o.matrix.normalized()
    }
}

impl Eq for ProjMap {}

impl ProjMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::MatrixFormat("a projective map needs a 4×4 matrix".into()));
        }
        if matrix.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMap { matrix, order: OnceLock::new() })
    }

    pub fn identity() -> Self {
        ProjMap::new(Matrix::identity(4)).unwrap()
    }

    pub fn diag(d: [EisNum; 4]) -> Result<Self> {
        ProjMap::new(Matrix::diag(&d))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Representative with first nonzero entry 1.
    pub fn canonical(&self) -> Matrix {
        self.matrix.normalized()
    }

    pub fn scaled(&self, c: &EisNum) -> Result<Self> {
        ProjMap::new(self.matrix.scale(c))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        ProjMap::new(self.matrix.mul(&other.matrix).normalized()).expect("product of invertible maps")
    }

    pub fn power(&self, k: u32) -> ProjMap {
        ProjMap::new(self.matrix.pow(k).normalized()).expect("power of an invertible map")
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap::new(self.matrix.inverse().expect("invertible").normalized()).expect("invertible")
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_slice(&self.matrix.apply(p.coords())).expect("invertible map")
    }

    /// Least n ≤ bound with Mⁿ scalar.
    pub fn order(&self, bound: u32) -> Result<u32> {
        if let Some(&n) = self.order.get() {
            return if n <= bound { Ok(n) } else { Err(Error::OrderExceedsBound { bound }) };
        }
        let mut acc = self.matrix.clone();
        for n in 1..=bound.max(1) {
            if acc.as_scalar().is_some() {
                let _ = self.order.set(n);
                return Ok(n);
            }
            acc = acc.mul(&self.matrix);
        }
        Err(Error::OrderExceedsBound { bound })
    }

    /// The representative M/c^{1/n} with Mⁿ = I exactly, when that root
    /// exists in Q(ζ₃).
    pub fn normalized_matrix(&self, bound: u32) -> Result<Matrix> {
        let n = self.order(bound)?;
        let c = self.matrix.pow(n).as_scalar().expect("scalar power");
        // roots of tⁿ − c
        let mut coeffs = vec![EisNum::zero(); n as usize + 1];
        coeffs[0] = -c;
        coeffs[n as usize] = EisNum::one();
        let split = uni_roots(&UniPoly::new(coeffs))?;
        // keep M itself when Mⁿ = I already
        let root = split
            .roots
            .iter()
            .find(|(r, _)| r.is_one())
            .or_else(|| split.roots.first())
            .map(|(r, _)| r.clone())
            .ok_or_else(|| Error::UnsupportedOrder(format!("the scalar Mⁿ has no {}-th root in Q(ζ₃)", n)))?;
        let m = self.matrix.scale(&root.inv()?);
        debug_assert_eq!(m.pow(n), Matrix::identity(4));
        Ok(m)
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

impl FromStr for ProjMap {
    type Err = Error;

    /// 16 comma-separated scalars in row-major order.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<EisNum> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        if parts.len() != 16 {
            return Err(Error::MatrixFormat(format!("expected 16 entries, found {}", parts.len())));
        }
        ProjMap::new(Matrix::new(4, 4, parts))
    }
}

impl Serialize for ProjMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// det(M − k·I) as a polynomial in k.
pub fn char_poly(m: &Matrix) -> UniPoly {
    assert!(m.is_square());
    let n = m.rows();
    let entry = |i: usize, j: usize| {
        if i == j {
            UniPoly::new(vec![m.get(i, j).clone(), EisNum::from(-1)])
        } else {
            UniPoly::constant(m.get(i, j).clone())
        }
    };
    // Leibniz expansion; n ≤ 4 keeps this at 24 terms
    let mut total = UniPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut term = UniPoly::constant(EisNum::from(sign(p)));
        for (i, &j) in p.iter().enumerate() {
            let e = entry(i, j);
            if e.is_zero() {
                return;
            }
            term = term.mul(&e);
        }
        total = total.add(&term);
    });
    total
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Eigenspace {
    pub value: EisNum,
    /// Kernel basis of M − λI, each vector with leading coordinate 1.
    pub basis: Vec<Vec<EisNum>>,
    pub multiplicity: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenData {
    /// The representative with Mⁿ = I the eigenvalues refer to.
    pub matrix: Matrix,
    pub spaces: Vec<Eigenspace>,
}

/// Eigenspace decomposition of a finite-order map, after rescaling so
/// that Mⁿ = I.
pub fn eigen(map: &ProjMap, bound: u32) -> Result<EigenData> {
    let m = map.normalized_matrix(bound)?;
    let split = uni_roots(&char_poly(&m))?;
    let mut spaces = Vec::new();
    for (value, _) in split.roots {
        let basis = m.sub_scalar(&value).kernel();
        let multiplicity = basis.len();
        spaces.push(Eigenspace { value, basis, multiplicity });
    }
    let total: usize = spaces.iter().map(|s| s.multiplicity).sum();
    if total != 4 {
        return Err(Error::IncompleteSplit(total));
    }
    Ok(EigenData { matrix: m, spaces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::sigma;

    fn flip() -> ProjMap {
        ProjMap::diag([1, 1, -1, -1].map(EisNum::from)).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(sigma(1).order(6).unwrap(), 3);
        assert_eq!(ProjMap::identity().order(6).unwrap(), 1);
        assert_eq!(flip().order(6).unwrap(), 2);
        let x = ProjMap::diag([EisNum::one(), EisNum::zeta6(), EisNum::one(), EisNum::one()]).unwrap();
        assert_eq!(x.order(6).unwrap(), 6);
        assert!(matches!(x.order(5), Err(Error::OrderExceedsBound { bound: 5 })));
        // cached answer still honours a smaller bound
        assert!(matches!(x.order(3), Err(Error::OrderExceedsBound { bound: 3 })));
        let big = ProjMap::diag([1, 2, 1, 1].map(EisNum::from)).unwrap();
        assert!(big.order(6).is_err());
    }

    #[test]
    fn composition_identities() {
        let s = sigma(1).compose(&sigma(3)).power(3);
        assert_eq!(s, flip());
        let m = sigma(2);
        assert_eq!(m.compose(&m.inverse()), ProjMap::identity());
        assert_eq!(sigma(2).power(3), ProjMap::identity());
    }

    #[test]
    fn equality_ignores_scaling() {
        let m = sigma(6);
        assert_eq!(m.scaled(&EisNum::from_ints(3, -2)).unwrap(), m);
    }

    #[test]
    fn char_polys() {
        let one_minus_k = UniPoly::new(vec![EisNum::one(), EisNum::from(-1)]);
        let one_plus_k = UniPoly::new(vec![EisNum::one(), EisNum::one()]);
        assert_eq!(char_poly(&Matrix::identity(4)), one_minus_k.pow(4));
        assert_eq!(char_poly(flip().matrix()), one_minus_k.pow(2).mul(&one_plus_k.pow(2)));
    }

    #[test]
    fn eigen_of_sigma1() {
        let e = eigen(&sigma(1), 6).unwrap();
        assert_eq!(e.spaces.len(), 2);
        let one = e.spaces.iter().find(|s| s.value.is_one()).unwrap();
        assert_eq!(one.multiplicity, 3);
        let w = e.spaces.iter().find(|s| s.value == EisNum::zeta3()).unwrap();
        assert_eq!(w.basis, vec![ProjPoint::basis(3).coords().to_vec()]);
    }

    #[test]
    fn eigen_of_flip() {
        let e = eigen(&flip(), 6).unwrap();
        let minus = e.spaces.iter().find(|s| s.value == EisNum::from(-1)).unwrap();
        assert_eq!(minus.multiplicity, 2);
        let plus = e.spaces.iter().find(|s| s.value.is_one()).unwrap();
        assert_eq!(plus.basis, vec![ProjPoint::basis(0).coords().to_vec(), ProjPoint::basis(1).coords().to_vec()]);
    }

    #[test]
    fn eigenpairs_are_exact() {
        for i in 1..=8 {
            let e = eigen(&sigma(i), 6).unwrap();
            for s in &e.spaces {
                for v in &s.basis {
                    let mv = e.matrix.apply(v);
                    let lv: Vec<EisNum> = v.iter().map(|x| x * &s.value).collect();
                    assert_eq!(mv, lv);
                }
            }
        }
    }

    #[test]
    fn unsupported_scalar_root() {
        // M² = 2·I but 2 has no square root in Q(ζ₃)
        let m = Matrix::from_rows(&[
            vec![0, 2, 0, 0].into_iter().map(EisNum::from).collect(),
            vec![1, 0, 0, 0].into_iter().map(EisNum::from).collect(),
            vec![0, 0, 0, 2].into_iter().map(EisNum::from).collect(),
            vec![0, 0, 1, 0].into_iter().map(EisNum::from).collect(),
        ]);
        let map = ProjMap::new(m).unwrap();
        assert_eq!(map.order(6).unwrap(), 2);
        assert!(matches!(eigen(&map, 6), Err(Error::UnsupportedOrder(_))));
    }

    #[test]
    fn parse_and_print() {
        let m: ProjMap = "2,0,0,0, 0,2,0,0, 0,0,2,0, 0,0,0,2*w".parse().unwrap();
        assert_eq!(m, sigma(1));
        assert_eq!(m.to_string(), "1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, w");
        let p: ProjPoint = "[0 : 0 : 2*u : 2]".parse().unwrap();
        assert_eq!(p.to_string(), "[0 : 0 : 1 : -w]");
        assert!("1,2,3".parse::<ProjMap>().is_err());
        assert!("0,0,0,0".parse::<ProjPoint>().is_err());
    }
}

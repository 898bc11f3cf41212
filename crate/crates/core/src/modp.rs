//! Reduction modulo primes p ≡ 1 (mod 3) and brute-force zero search
//! over F_p. Used only to find candidate witnesses, never to certify.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::poly::{Mono, Poly, NVARS};
use crate::projlin::ProjPoint;
use crate::scalar::{EisNum, Rat};

/// Small primes ≡ 1 (mod 3), so that F_p contains a cube root of unity.
pub const PROBE_PRIMES: [u64; 4] = [7, 13, 19, 31];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// A primitive cube root of unity in F_p.
pub fn cube_root_of_unity(p: u64) -> Option<u64> {
    if p % 3 != 1 {
        return None;
    }
    (2..p).find(|&x| pow_mod(x, 3, p) == 1)
}

fn reduce_rat(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = ((r.numer() % &pb + &pb) % &pb).to_u64()?;
    let d = ((r.denom() % &pb + &pb) % &pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * pow_mod(d, p - 2, p) % p)
}

/// Image of a + bζ₃ under ζ₃ ↦ `zeta`; `None` for bad reduction.
pub fn reduce(x: &EisNum, p: u64, zeta: u64) -> Option<u64> {
    let a = reduce_rat(x.re(), p)?;
    let b = reduce_rat(x.im(), p)?;
    Some((a + b * zeta) % p)
}

struct ModPoly(Vec<(Mono, u64)>);

impl ModPoly {
    fn eval(&self, pt: &[u64; NVARS], p: u64) -> u64 {
        let mut acc = 0;
        for (m, c) in &self.0 {
            let mut t = *c;
            for i in 0..NVARS {
                if m.0[i] > 0 {
                    t = t * pow_mod(pt[i], m.0[i] as u64, p) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

fn reduce_poly(f: &Poly, p: u64, zeta: u64) -> Option<ModPoly> {
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let r = reduce(c, p, zeta)?;
        if r != 0 {
            terms.push((*m, r));
        }
    }
    Some(ModPoly(terms))
}

/// Common zeros of `gens` in the projective space over F_p on the
/// variables in `vars`, at most `limit` of them, with canonical
/// coordinates (first nonzero = 1). Empty on bad reduction.
pub fn common_zeros_mod_p(gens: &[Poly], vars: u8, p: u64, limit: usize) -> Vec<[u64; NVARS]> {
    let Some(zeta) = cube_root_of_unity(p) else {
        return Vec::new();
    };
    let Some(reduced) = gens.iter().map(|g| reduce_poly(g, p, zeta)).collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    let active: Vec<usize> = (0..NVARS).filter(|i| vars & (1 << i) != 0).collect();
    let mut out = Vec::new();
    // leading coordinate = 1 at position `lead`, zeros before it
    for (li, &lead) in active.iter().enumerate() {
        let free = &active[li + 1..];
        let count = (p as usize).pow(free.len() as u32);
        for idx in 0..count {
            let mut pt = [0u64; NVARS];
            pt[lead] = 1;
            let mut rest = idx;
            for &v in free {
                pt[v] = (rest % p as usize) as u64;
                rest /= p as usize;
            }
            if reduced.iter().all(|g| g.eval(&pt, p) == 0) {
                out.push(pt);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Small Eisenstein integers a + bζ₃, |a|, |b| ≤ 2, used as lift candidates.
fn small_lifts() -> Vec<EisNum> {
    let mut v = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            v.push(EisNum::from_ints(a, b));
        }
    }
    v
}

/// Tries to lift an F_p zero to an exact common zero over Q(ζ₃) with small
/// Eisenstein-integer coordinates.
pub fn lift_zero(gens: &[Poly], pt: &[u64; NVARS], p: u64) -> Option<ProjPoint> {
    let zeta = cube_root_of_unity(p)?;
    let lifts = small_lifts();
    let candidates: Vec<Vec<EisNum>> = pt
        .iter()
        .map(|&r| lifts.iter().filter(|x| reduce(x, p, zeta) == Some(r)).cloned().collect())
        .collect();
    let mut idx = [0usize; NVARS];
    let total: usize = candidates.iter().map(Vec::len).product();
    for _ in 0..total.min(100_000) {
        let coords: [EisNum; NVARS] = std::array::from_fn(|i| candidates[i][idx[i]].clone());
        if !coords.iter().all(EisNum::is_zero) && gens.iter().all(|g| g.eval(&coords).is_zero()) {
            return ProjPoint::new(coords).ok();
        }
        for i in 0..NVARS {
            idx[i] += 1;
            if idx[i] < candidates[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    None
}

/// Searches for an exact common zero by lifting F_p zeros for each probe prime.
pub fn find_exact_zero(gens: &[Poly], vars: u8) -> Option<ProjPoint> {
    for &p in &PROBE_PRIMES {
        let zeros = common_zeros_mod_p(gens, vars, p, 64);
        if let Some(pt) = zeros.iter().find_map(|z| lift_zero(gens, z, p)) {
            return Some(pt);
        }
    }
    None
}

//! Buchberger's algorithm over Q(ζ₃) in grevlex order, and the projective
//! emptiness test built on it.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, NVARS};

/// Default cap on the number of S-pairs reduced by one computation.
pub const DEFAULT_PAIR_BUDGET: usize = 10_000;

/// A reduced Gröbner basis: monic elements, sorted by leading monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Poly>,
    /// S-pairs actually reduced while building the basis.
    pub pairs_reduced: usize,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.elements.iter().map(|g| *g.leading().unwrap().0).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().contains(&Mono::one())
    }

    /// True when the leading ideal contains a pure power of every variable
    /// whose bit is set in `vars`.
    pub fn has_pure_powers(&self, vars: u8) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..NVARS)
            .filter(|i| vars & (1 << i) != 0)
            .all(|i| lms.iter().any(|m| m.pure_power_var() == Some(i)))
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, &self.elements)
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let g = &self.elements;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !normal_form(&s_poly(&g[i], &g[j]), g).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Fully reduces `f` modulo `basis`, whose elements must be monic.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
        match basis.iter().find(|g| g.leading().unwrap().0.divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let q = gm.quotient_of(&m);
                let factor = -&(&c / gc);
                for (tm, tc) in g.terms() {
                    p.add_term(tm.mul(&q), &(tc * &factor));
                }
            }
            None => {
                p.add_term(m, &-&c);
                rem.add_term(m, &c);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &gc.clone());
    let b = g.mul_term(&gm.quotient_of(&l), fc);
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], pair_budget: usize) -> Result<GroebnerBasis> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let lm = |p: &Poly| *p.leading().unwrap().0;

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut reduced = 0usize;

    while !pending.is_empty() {
        // normal strategy: smallest lcm first
        let idx = (0..pending.len())
            .min_by_key(|&k| {
                let (i, j) = pending[k];
                lm(&basis[i]).lcm(&lm(&basis[j]))
            })
            .unwrap();
        let (i, j) = pending.swap_remove(idx);
        done.insert((i, j));
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && done.contains(&ordered(i, k))
                && done.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        reduced += 1;
        if reduced > pair_budget {
            return Err(Error::ResourceLimit { budget: pair_budget });
        }
        let r = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.push((k, n));
        }
    }

    Ok(GroebnerBasis { elements: interreduce(basis), pairs_reduced: reduced })
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let lms: Vec<Mono> = basis.iter().map(|p| *p.leading().unwrap().0).collect();
    let mut keep: Vec<Poly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, m)| {
            j != i && m.divides(&lms[i]) && (*m != lms[i] || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        out.push(normal_form(&keep[i], &others).monic());
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

/// Whether V(gens) is empty in the projective space on the variables in
/// `vars` (bitmask, bit i for variable i).
pub fn projective_empty_in(gens: &[Poly], vars: u8, pair_budget: usize) -> Result<bool> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::Precondition("projective emptiness needs homogeneous generators".into()));
    }
    let gb = buchberger(gens, pair_budget)?;
    Ok(gb.has_pure_powers(vars))
}

/// Whether V(gens) is empty in P³.
pub fn projective_empty(gens: &[Poly], pair_budget: usize) -> Result<bool> {
    projective_empty_in(gens, 0b1111, pair_budget)
}

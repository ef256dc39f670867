//! Sparse polynomials in (z1, z2) with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;

/// Exponent pair for z1^a1 z2^a2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
}

impl MultiIndex {
    pub const fn new(a1: u32, a2: u32) -> Self {
        MultiIndex { a1, a2 }
    }

    pub fn degree(&self) -> u32 {
        self.a1 + self.a2
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex::new(self.a1 + other.a1, self.a2 + other.a2)
    }

    /// Sort key used for matrix bases: z1-heavy monomials first.
    pub fn basis_key(&self) -> (std::cmp::Reverse<u32>, u32) {
        (std::cmp::Reverse(self.a1), self.a2)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a1, self.a2) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "z1^{a}"),
            (0, b) => write!(f, "z2^{b}"),
            (a, b) => write!(f, "z1^{a}*z2^{b}"),
        }
    }
}

/// A holomorphic polynomial in z1, z2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HoloPoly {
    terms: BTreeMap<MultiIndex, Cyclotomic>,
}

impl HoloPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(MultiIndex::new(0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::from_i64(1))
    }

    pub fn monomial(m: MultiIndex, c: Cyclotomic) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// c1 z1 + c2 z2.
    pub fn linear(c1: Cyclotomic, c2: Cyclotomic) -> Self {
        let mut p = Self::zero();
        p.add_term(MultiIndex::new(1, 0), c1);
        p.add_term(MultiIndex::new(0, 1), c2);
        p
    }

    pub fn z1() -> Self {
        Self::monomial(MultiIndex::new(1, 0), Cyclotomic::from_i64(1))
    }

    pub fn z2() -> Self {
        Self::monomial(MultiIndex::new(0, 1), Cyclotomic::from_i64(1))
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Cyclotomic> {
        &self.terms
    }

    pub fn coeff(&self, m: MultiIndex) -> Cyclotomic {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::from_i64(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HoloPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// h(l1, l2) for polynomials l1, l2 substituted for z1, z2.
    pub fn compose(&self, l1: &Self, l2: &Self) -> Self {
        let max1 = self.terms.keys().map(|m| m.a1).max().unwrap_or(0);
        let max2 = self.terms.keys().map(|m| m.a2).max().unwrap_or(0);
        let mut p1 = vec![Self::one()];
        for i in 0..max1 as usize {
            p1.push(p1[i].mul(l1));
        }
        let mut p2 = vec![Self::one()];
        for i in 0..max2 as usize {
            p2.push(p2[i].mul(l2));
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = p1[m.a1 as usize].mul(&p2[m.a2 as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

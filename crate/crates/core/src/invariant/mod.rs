//! The invariant Hermitian polynomial `Phi_G(z, conj z) = 1 - prod_g (1 - <g z, z>)`.

mod diagonal;
mod modular;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, Matrix2};
use crate::poly::{HoloPoly, MultiIndex};

/// Sparse `sum c_{alpha,beta} z^alpha conj(z)^beta`.
#[derive(Clone, Debug, Default)]
pub struct HermitianPolynomial {
    terms: BTreeMap<(MultiIndex, MultiIndex), Cyclotomic>,
    group_order: usize,
}

impl PartialEq for HermitianPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for HermitianPolynomial {}

impl HermitianPolynomial {
    pub fn new(group_order: usize) -> Self {
        HermitianPolynomial {
            terms: BTreeMap::new(),
            group_order,
        }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn terms(&self) -> &BTreeMap<(MultiIndex, MultiIndex), Cyclotomic> {
        &self.terms
    }

    pub fn coeff(&self, alpha: MultiIndex, beta: MultiIndex) -> Cyclotomic {
        self.terms
            .get(&(alpha, beta))
            .cloned()
            .unwrap_or_else(|| Cyclotomic::from_i64(0))
    }

    /// Coefficient of z1^a1 z2^a2 conj(z1)^b1 conj(z2)^b2.
    pub fn coeff4(&self, a1: u32, a2: u32, b1: u32, b2: u32) -> Cyclotomic {
        self.coeff(MultiIndex::new(a1, a2), MultiIndex::new(b1, b2))
    }

    pub fn add_term(&mut self, alpha: MultiIndex, beta: MultiIndex, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, beta);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Distinct monomials appearing as alpha or beta, in basis order.
    pub fn support(&self) -> Vec<MultiIndex> {
        let set: BTreeSet<MultiIndex> = self.terms.keys().flat_map(|(a, b)| [*a, *b]).collect();
        let mut v: Vec<MultiIndex> = set.into_iter().collect();
        v.sort_by_key(MultiIndex::basis_key);
        v
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(a, b)| a == b)
    }

    /// `c(beta, alpha) = conj(c(alpha, beta))` for every stored pair.
    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|((a, b), c)| match self.terms.get(&(*b, *a)) {
            Some(d) => *d == c.conj(),
            None => false,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HermitianPolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            group_order: self.group_order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HermitianPolynomial::new(self.group_order);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.add(a2), b1.add(b2), c1 * c2);
            }
        }
        out
    }

    /// Diagonal coefficients as a map (r, s) -> c for terms |z1|^2r |z2|^2s.
    pub fn diagonal_part(&self) -> BTreeMap<(u32, u32), Cyclotomic> {
        self.terms
            .iter()
            .filter(|((a, b), _)| a == b)
            .map(|((a, _), c)| ((a.a1, a.a2), c.clone()))
            .collect()
    }

    /// Every exponent is at most the group order.
    pub fn degree_bound_holds(&self) -> bool {
        let n = self.group_order as u32;
        self.terms
            .keys()
            .all(|(a, b)| a.a1 <= n && a.a2 <= n && b.a1 <= n && b.a2 <= n)
    }

    /// CSV rows `a1,a2,b1,b2,coeff-json`, sorted lexicographically by exponents.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["a1", "a2", "b1", "b2", "coeff"]).map_err(io)?;
        for ((a, b), c) in &self.terms {
            let json = serde_json::to_string(c).map_err(|e| Error::Parse(e.to_string()))?;
            w.write_record([
                a.a1.to_string(),
                a.a2.to_string(),
                b.a1.to_string(),
                b.a2.to_string(),
                json,
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Phi_G: the integer route for diagonal groups, the dense engine otherwise.
pub fn phi(g: &FiniteMatrixGroup) -> HermitianPolynomial {
    if let Some(p) = diagonal::phi_diagonal(g) {
        return p;
    }
    phi_dense(g)
}

/// Phi_G from the multi-modular dense engine, for any group.
pub fn phi_dense(g: &FiniteMatrixGroup) -> HermitianPolynomial {
    let prod = modular::expand(g);
    let n = prod.group_order;
    let mut out = HermitianPolynomial::new(n);
    let mut scale_pow = BigInt::one();
    for d in 1..=n {
        scale_pow *= &prod.scale;
        for a1 in 0..=d {
            for b1 in 0..=d {
                let slot = modular::DenseProduct::slot(d, a1, b1);
                if let Some(coords) = &prod.coords[slot] {
                    let num = coords.iter().map(|x| -x).collect();
                    let c = Cyclotomic::from_raw(prod.order, num, scale_pow.clone());
                    let alpha = MultiIndex::new(a1 as u32, (d - a1) as u32);
                    let beta = MultiIndex::new(b1 as u32, (d - b1) as u32);
                    out.terms.insert((alpha, beta), c);
                }
            }
        }
    }
    debug_assert!(out.degree_bound_holds());
    out
}

/// `<g z, z>` as a Hermitian polynomial: sum_{j,k} g_jk z_k conj(z_j).
fn pairing(g: &Matrix2) -> HermitianPolynomial {
    let mut u = HermitianPolynomial::new(1);
    let unit = [MultiIndex::new(1, 0), MultiIndex::new(0, 1)];
    for (j, bj) in unit.iter().enumerate() {
        for (k, ak) in unit.iter().enumerate() {
            u.add_term(*ak, *bj, g.get(j, k).clone());
        }
    }
    u
}

/// Phi_G by a direct sparse fold in cyclotomic arithmetic. Slow; the
/// independent reference for the modular engine on small groups.
pub fn phi_reference(g: &FiniteMatrixGroup) -> HermitianPolynomial {
    let zero = MultiIndex::new(0, 0);
    let mut prod = HermitianPolynomial::new(g.order());
    prod.add_term(zero, zero, Cyclotomic::from_i64(1));
    for m in g.elements() {
        let u = pairing(m);
        prod = prod.sub(&prod.mul(&u));
    }
    let mut one = HermitianPolynomial::new(g.order());
    one.add_term(zero, zero, Cyclotomic::from_i64(1));
    let mut out = one.sub(&prod);
    out.group_order = g.order();
    out
}

/// `P(U z, conj(U z))`, re-expanded.
pub fn substitute(p: &HermitianPolynomial, u: &Matrix2) -> HermitianPolynomial {
    let zl = [
        HoloPoly::linear(u.get(0, 0).clone(), u.get(0, 1).clone()),
        HoloPoly::linear(u.get(1, 0).clone(), u.get(1, 1).clone()),
    ];
    let wl = [
        HoloPoly::linear(u.get(0, 0).conj(), u.get(0, 1).conj()),
        HoloPoly::linear(u.get(1, 0).conj(), u.get(1, 1).conj()),
    ];
    let mut cache: BTreeMap<(usize, MultiIndex), HoloPoly> = BTreeMap::new();
    let mut power = |side: usize, m: MultiIndex| -> HoloPoly {
        cache
            .entry((side, m))
            .or_insert_with(|| {
                let l = if side == 0 { &zl } else { &wl };
                l[0].pow(m.a1).mul(&l[1].pow(m.a2))
            })
            .clone()
    };
    let mut out = HermitianPolynomial::new(p.group_order);
    for ((a, b), c) in &p.terms {
        let hz = power(0, *a);
        let hw = power(1, *b);
        for (ma, ca) in hz.terms() {
            for (mb, cb) in hw.terms() {
                out.add_term(*ma, *mb, &(c * ca) * cb);
            }
        }
    }
    out
}

/// `1 - prod_g (1 - sum_j (g z)_j)`, the polarization at w = (1, 1).
pub fn polarized_at_ones(g: &FiniteMatrixGroup) -> HoloPoly {
    let mut prod = HoloPoly::one();
    for m in g.elements() {
        let row_sum = HoloPoly::linear(
            m.get(0, 0) + m.get(1, 0),
            m.get(0, 1) + m.get(1, 1),
        );
        prod = prod.sub(&prod.mul(&row_sum));
    }
    HoloPoly::one().sub(&prod)
}

#[cfg(test)]
mod tests;

//! Orbit polynomials and orbit Chern classes.
//!
//! G acts on C[z1, z2] by `(g.h)(z) = h(g^{-1} z)`. The orbit polynomial of
//! G.h is `prod_b (X + b)`; its coefficients are the orbit Chern classes.
//! The product can run over the orbit as a set or over all |G| translates;
//! both are available and [`chern_report`] records which one reproduces
//! the polarized invariant.

use serde::Serialize;

use crate::group::{FiniteMatrixGroup, Matrix2};
use crate::invariant::polarized_at_ones;
use crate::poly::HoloPoly;

/// h(g^{-1} z). For unitary g the inverse is the conjugate transpose.
pub fn act(g: &Matrix2, h: &HoloPoly) -> HoloPoly {
    let inv = g.conj_transpose();
    let l1 = HoloPoly::linear(inv.get(0, 0).clone(), inv.get(0, 1).clone());
    let l2 = HoloPoly::linear(inv.get(1, 0).clone(), inv.get(1, 1).clone());
    h.compose(&l1, &l2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// g.h for every g, in group order.
    pub elements: Vec<HoloPoly>,
    /// The orbit as a set, in order of first appearance.
    pub distinct: Vec<HoloPoly>,
    pub stabilizer_order: usize,
}

pub fn orbit(g: &FiniteMatrixGroup, h: &HoloPoly) -> Orbit {
    let elements: Vec<HoloPoly> = g.elements().iter().map(|m| act(m, h)).collect();
    let mut distinct: Vec<HoloPoly> = Vec::new();
    for e in &elements {
        if !distinct.contains(e) {
            distinct.push(e.clone());
        }
    }
    let stabilizer_order = elements.len() / distinct.len().max(1);
    Orbit {
        elements,
        distinct,
        stabilizer_order,
    }
}

/// z1 + z2.
pub fn sum_of_variables() -> HoloPoly {
    HoloPoly::z1().add(&HoloPoly::z2())
}

/// Elementary symmetric polynomials e_1..e_n of `items`, from the
/// incremental product of (X + b).
pub fn elementary_symmetric(items: &[HoloPoly]) -> Vec<HoloPoly> {
    let mut e = vec![HoloPoly::one()];
    for b in items {
        e.push(HoloPoly::zero());
        for a in (1..e.len()).rev() {
            let t = e[a - 1].mul(b);
            e[a] = e[a].add(&t);
        }
    }
    e.remove(0);
    e
}

/// c_1..c_|G| of the orbit multiset.
pub fn chern_classes(orb: &Orbit) -> Vec<HoloPoly> {
    elementary_symmetric(&orb.elements)
}

/// c_1..c_m of the orbit set, m = |G.h|.
pub fn chern_classes_set(orb: &Orbit) -> Vec<HoloPoly> {
    elementary_symmetric(&orb.distinct)
}

/// sum_j (-1)^(j-1) c_j.
pub fn alternating_sum(classes: &[HoloPoly]) -> HoloPoly {
    let mut out = HoloPoly::zero();
    for (i, c) in classes.iter().enumerate() {
        out = if i % 2 == 0 { out.add(c) } else { out.sub(c) };
    }
    out
}

/// The orbit polynomial as its coefficient list, X^n first: [1, c_1, ..., c_n].
pub fn orbit_polynomial(classes: &[HoloPoly]) -> Vec<HoloPoly> {
    let mut out = vec![HoloPoly::one()];
    out.extend(classes.iter().cloned());
    out
}

/// Product of two polynomials in X given as [1, c_1, ...] lists.
fn x_poly_mul(a: &[HoloPoly], b: &[HoloPoly]) -> Vec<HoloPoly> {
    let mut out = vec![HoloPoly::zero(); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&u.mul(v));
        }
    }
    out
}

/// Whether the set orbit polynomial to the power |stabilizer| is the multiset one.
pub fn set_power_matches_multiset(orb: &Orbit) -> bool {
    let set = orbit_polynomial(&chern_classes_set(orb));
    let mut acc = vec![HoloPoly::one()];
    for _ in 0..orb.stabilizer_order {
        acc = x_poly_mul(&acc, &set);
    }
    acc == orbit_polynomial(&chern_classes(orb))
}

/// The alternating sum of multiset classes of G.(z1 + z2) against the
/// polarized invariant at w = (1, 1).
pub fn verify_chern_identity(g: &FiniteMatrixGroup) -> bool {
    let orb = orbit(g, &sum_of_variables());
    alternating_sum(&chern_classes(&orb)) == polarized_at_ones(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    pub group: String,
    pub order: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub multiset_holds: bool,
    pub set_holds: bool,
    pub set_power_matches: bool,
}

/// Both conventions checked for one group.
pub fn chern_report(g: &FiniteMatrixGroup) -> ChernReport {
    let orb = orbit(g, &sum_of_variables());
    let target = polarized_at_ones(g);
    ChernReport {
        group: g.label().to_string(),
        order: g.order(),
        orbit_size: orb.distinct.len(),
        stabilizer_order: orb.stabilizer_order,
        multiset_holds: alternating_sum(&chern_classes(&orb)) == target,
        set_holds: alternating_sum(&chern_classes_set(&orb)) == target,
        set_power_matches: set_power_matches_multiset(&orb),
    }
}

#[cfg(test)]
mod tests;

use proptest::prelude::*;

use super::*;
use crate::cyclotomic::Cyclotomic;
use crate::fpq::fpq;
use crate::group::{
    binary_dihedral, binary_polyhedral, cyclic_gamma, dihedral, Polyhedral,
};
use crate::poly::MultiIndex;

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

fn h() -> HoloPoly {
    sum_of_variables()
}

/// 1 - prod (1 - b), expanded directly.
fn one_minus_product(items: &[HoloPoly]) -> HoloPoly {
    let mut prod = HoloPoly::one();
    for b in items {
        prod = prod.sub(&prod.mul(b));
    }
    HoloPoly::one().sub(&prod)
}

fn small_groups() -> Vec<FiniteMatrixGroup> {
    let mut out = Vec::new();
    for p in 1..=12u32 {
        for q in [1i64, 2, p as i64 - 1] {
            out.push(cyclic_gamma(p, q));
        }
    }
    for p in 1..=6 {
        out.push(dihedral(p));
    }
    for p in 1..=3 {
        out.push(binary_dihedral(p));
    }
    out
}

#[test]
fn action_examples() {
    assert_eq!(act(&Matrix2::identity(), &h()), h());
    assert_eq!(act(&Matrix2::identity().neg(), &h()), h().neg());
    let w = Cyclotomic::root_of_unity(3, 1);
    let g = Matrix2::diag(w.clone(), w);
    assert_eq!(act(&g, &h()), h().scale(&Cyclotomic::root_of_unity(3, 2)));
}

#[test]
fn orbit_examples() {
    let o = orbit(&cyclic_gamma(2, 1), &h());
    assert_eq!(o.distinct, vec![h(), h().neg()]);
    assert_eq!(o.stabilizer_order, 1);

    // -(z1 + z2) under Gamma(p, q): {-w^j z1 - w^{qj} z2}
    for (p, q) in [(5u32, 2i64), (6, 5), (7, 3)] {
        let o = orbit(&cyclic_gamma(p, q), &h().neg());
        for j in 0..p as i64 {
            let b = HoloPoly::linear(
                -Cyclotomic::root_of_unity(p, j),
                -Cyclotomic::root_of_unity(p, q * j),
            );
            assert!(o.distinct.contains(&b), "({p},{q}) j = {j}");
        }
        assert_eq!(o.distinct.len(), p as usize);
    }

    let o = orbit(&binary_dihedral(2), &h());
    assert_eq!(o.elements.len(), 8);
    assert_eq!(o.stabilizer_order * o.distinct.len(), 8);
    assert_eq!(o.stabilizer_order, 1);
}

#[test]
fn chern_class_examples() {
    let c = chern_classes(&orbit(&cyclic_gamma(2, 1), &h()));
    assert_eq!(c.len(), 2);
    assert!(c[0].is_zero());
    assert_eq!(c[1], h().pow(2).neg());

    let c = chern_classes(&orbit(&cyclic_gamma(1, 1), &h()));
    assert_eq!(c, vec![h()]);

    let c = chern_classes(&orbit(&cyclic_gamma(3, 1), &h()));
    assert!(c[0].is_zero() && c[1].is_zero());
    assert_eq!(c[2], h().pow(3));
}

#[test]
fn identity_small_examples() {
    assert!(verify_chern_identity(&cyclic_gamma(2, 1)));
    let sum = alternating_sum(&chern_classes(&orbit(&cyclic_gamma(2, 1), &h())));
    assert_eq!(sum, h().pow(2));
    let sum = alternating_sum(&chern_classes(&orbit(&cyclic_gamma(3, 1), &h())));
    assert_eq!(sum, h().pow(3));
}

#[test]
fn identity_for_cyclic_groups_and_restriction() {
    for p in 1..=8u32 {
        for q in 1..=p as i64 {
            let g = cyclic_gamma(p, q);
            assert!(verify_chern_identity(&g), "({p},{q})");
            let orb = orbit(&g, &h());
            let sum = alternating_sum(&chern_classes(&orb));
            assert_eq!(sum, one_minus_product(&orb.elements));
            let f = fpq(p, q).unwrap();
            assert_eq!(sum.len(), f.len(), "({p},{q})");
            for (&(r, s), c) in f.terms() {
                let v = sum.coeff(MultiIndex::new(r, s));
                assert_eq!(v.to_integer().as_ref(), Some(c), "({p},{q}) x^{r}y^{s}");
            }
        }
    }
}

#[test]
fn classes_are_invariant() {
    for g in small_groups() {
        let classes = chern_classes(&orbit(&g, &h()));
        for m in g.elements() {
            for (a, c) in classes.iter().enumerate() {
                assert_eq!(&act(m, c), c, "{} c_{}", g.label(), a + 1);
            }
        }
    }
}

#[test]
fn multiset_convention_validates() {
    for g in small_groups() {
        let r = chern_report(&g);
        assert!(r.multiset_holds, "{r:?}");
        assert!(r.set_power_matches, "{r:?}");
        assert_eq!(r.orbit_size * r.stabilizer_order, r.order);
        // the set convention agrees exactly when the stabilizer is trivial
        assert_eq!(r.set_holds, r.stabilizer_order == 1, "{r:?}");
    }
}

#[test]
fn dihedral_stabilizer_is_the_swap() {
    // the coordinate swap fixes z1 + z2, so the set orbit is half the group
    for p in 2..=6 {
        let r = chern_report(&dihedral(p));
        assert_eq!(r.stabilizer_order, 2, "{r:?}");
        assert!(r.multiset_holds && !r.set_holds);
    }
}

#[test]
fn binary_tetrahedral_identity() {
    let g = binary_polyhedral(Polyhedral::Tetrahedral);
    let r = chern_report(&g);
    assert_eq!(r.order, 24);
    assert!(r.multiset_holds, "{r:?}");
}

fn monomial(a1: u32, a2: u32) -> HoloPoly {
    HoloPoly::monomial(MultiIndex::new(a1, a2), int(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_axioms(gi in 0usize..64, i in 0usize..64, j in 0usize..64, a1 in 0u32..4, a2 in 0u32..4) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let els = g.elements();
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let m = monomial(a1, a2);
        prop_assert_eq!(act(&Matrix2::identity(), &m), m.clone());
        prop_assert_eq!(act(&x.mul(y), &m), act(x, &act(y, &m)));
    }
}

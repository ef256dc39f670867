use super::*;
use crate::group::{
    binary_dihedral, binary_polyhedral, closure, cyclic_gamma, dihedral, Polyhedral, DEFAULT_CAP,
};

fn m(a1: u32, a2: u32) -> MultiIndex {
    MultiIndex::new(a1, a2)
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

#[test]
fn trivial_group() {
    let p = phi(&cyclic_gamma(1, 1));
    assert_eq!(p.term_count(), 2);
    assert_eq!(p.coeff(m(1, 0), m(1, 0)), int(1));
    assert_eq!(p.coeff(m(0, 1), m(0, 1)), int(1));
    assert!(p.is_diagonal());
    assert_eq!(p.support(), vec![m(1, 0), m(0, 1)]);
}

#[test]
fn quaternion_example_terms() {
    let p = phi(&binary_dihedral(2));
    assert_eq!(p.coeff4(5, 1, 5, 1), int(4));
    assert_eq!(p.coeff4(4, 4, 4, 4), int(-4));
    assert_eq!(p.coeff4(2, 2, 2, 2), int(12));
    assert!(p.is_hermitian());
}

#[test]
fn dihedral_example_terms() {
    let p = phi(&dihedral(3));
    assert_eq!(p.coeff4(1, 1, 1, 1), int(6));
    assert_eq!(p.coeff4(2, 2, 2, 2), int(-9));
    assert!(!p.is_diagonal());
}

#[test]
fn cyclic_is_diagonal() {
    assert!(phi(&cyclic_gamma(7, 3)).is_diagonal());
    assert_eq!(phi(&cyclic_gamma(8, 4)).term_count(), 7);
}

#[test]
fn modular_engine_matches_reference() {
    let groups = vec![
        cyclic_gamma(1, 1),
        cyclic_gamma(2, 1),
        cyclic_gamma(5, 4),
        cyclic_gamma(6, 4),
        cyclic_gamma(9, 2),
        dihedral(1),
        dihedral(3),
        dihedral(4),
        binary_dihedral(1),
        binary_dihedral(2),
        binary_dihedral(3),
        binary_polyhedral(Polyhedral::Tetrahedral),
    ];
    for g in &groups {
        let fast = phi(g);
        let slow = phi_reference(g);
        assert_eq!(fast, slow, "{}", g.label());
        assert!(fast.is_hermitian(), "{}", g.label());
        assert!(fast.degree_bound_holds());
    }
}

#[test]
fn octahedral_term_count() {
    let p = phi(&binary_polyhedral(Polyhedral::Octahedral));
    assert_eq!(p.term_count(), 1143);
    assert_eq!(p.support().len(), 135);
    assert!(p.is_hermitian());
}

#[test]
fn invariance_under_group_elements() {
    let groups = vec![
        cyclic_gamma(5, 2),
        dihedral(3),
        dihedral(6),
        binary_dihedral(2),
        binary_dihedral(3),
    ];
    for g in &groups {
        let p = phi(g);
        for u in g.elements() {
            assert_eq!(substitute(&p, u), p, "{}", g.label());
        }
    }
}

#[test]
fn polarization_examples() {
    let s = HoloPoly::z1().add(&HoloPoly::z2());
    assert_eq!(polarized_at_ones(&cyclic_gamma(1, 1)), s);
    assert_eq!(polarized_at_ones(&cyclic_gamma(2, 1)), s.pow(2));
    assert_eq!(polarized_at_ones(&cyclic_gamma(3, 1)), s.pow(3));
}

#[test]
fn csv_dump_is_sorted() {
    let p = phi(&cyclic_gamma(2, 1));
    let mut buf = Vec::new();
    p.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a1,a2,b1,b2,coeff");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,2,0,2,"));
}

#[test]
fn closure_group_has_same_phi() {
    let g = binary_dihedral(2);
    let c = closure(g.elements(), DEFAULT_CAP).unwrap();
    assert_eq!(phi(&c), phi(&g));
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cpow(a: C64, e: u32) -> C64 {
    (0..e).fold((1.0, 0.0), |acc, _| cmul(acc, a))
}

fn conj(a: C64) -> C64 {
    (a.0, -a.1)
}

/// Phi evaluated directly from its product definition in floating point.
fn product_value(g: &crate::group::FiniteMatrixGroup, z: [C64; 2]) -> C64 {
    let mut prod = (1.0, 0.0);
    for m in g.elements() {
        let mut s = (0.0, 0.0);
        for j in 0..2 {
            for k in 0..2 {
                let t = cmul(cmul(m.get(j, k).to_f64_pair(), z[k]), conj(z[j]));
                s = (s.0 + t.0, s.1 + t.1);
            }
        }
        prod = cmul(prod, (1.0 - s.0, -s.1));
    }
    (1.0 - prod.0, -prod.1)
}

fn expansion_value(p: &HermitianPolynomial, z: [C64; 2]) -> C64 {
    let mut acc = (0.0, 0.0);
    for ((a, b), c) in p.terms() {
        let mono = cmul(
            cmul(cpow(z[0], a.a1), cpow(z[1], a.a2)),
            cmul(cpow(conj(z[0]), b.a1), cpow(conj(z[1]), b.a2)),
        );
        let t = cmul(c.to_f64_pair(), mono);
        acc = (acc.0 + t.0, acc.1 + t.1);
    }
    acc
}

#[test]
fn expansion_matches_product_pointwise() {
    let points = [
        [(0.31, -0.12), (0.05, 0.27)],
        [(-0.2, 0.4), (0.33, 0.1)],
        [(0.5, 0.0), (0.0, -0.45)],
    ];
    for g in [
        binary_polyhedral(Polyhedral::Tetrahedral),
        binary_polyhedral(Polyhedral::Octahedral),
        dihedral(7),
    ] {
        let p = phi(&g);
        for z in points {
            let (a, b) = (product_value(&g, z), expansion_value(&p, z));
            assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9, "{}: {a:?} vs {b:?}", g.label());
            assert!(b.1.abs() < 1e-9);
        }
    }
}

#[test]
fn diagonal_route_matches_dense_engine() {
    for p in 1..=12u32 {
        for q in 0..=p as i64 {
            let g = cyclic_gamma(p, q);
            assert_eq!(phi(&g), phi_dense(&g), "{}", g.label());
        }
    }
    // a non-cyclic diagonal group: Z/2 x Z/4
    let g = closure(
        &[
            crate::group::Matrix2::diag(int(-1), int(1)),
            crate::group::Matrix2::diag(int(1), Cyclotomic::root_of_unity(4, 1)),
        ],
        DEFAULT_CAP,
    )
    .unwrap();
    assert_eq!(g.order(), 8);
    assert_eq!(phi(&g), phi_reference(&g));
    assert_eq!(phi(&g), phi_dense(&g));
}

use super::*;
use crate::group::{binary_dihedral, dihedral};
use crate::invariant::phi;
use crate::signature::{coefficient_matrix, inertia_exact, signature_pair};

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn dihedral_decomposition_matches_engine() {
    for p in 1..=10 {
        assert_eq!(phi_delta_decomposed(p).unwrap(), phi(&dihedral(p)), "p = {p}");
    }
}

#[test]
fn binary_dihedral_decomposition_matches_engine() {
    for p in 1..=6 {
        assert_eq!(phi_lambda_decomposed(p).unwrap(), phi(&binary_dihedral(p)), "p = {p}");
    }
    let p2 = phi_lambda_decomposed(2).unwrap();
    assert_eq!(p2.coeff4(4, 4, 4, 4), int(-4));
}

#[test]
fn dihedral_counts_and_ratios() {
    assert_eq!(delta_counts(3), (6, 3));
    assert_eq!(delta_signature_closed(3), SignaturePair::new(3, 3));
    assert_eq!(delta_signature_closed(4), SignaturePair::new(5, 3));
    assert_eq!(delta_counts(8), (14, 8));
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    assert_eq!(delta_ratio(7), r(1, 2));
    assert_eq!(delta_ratio(4), r(5, 8));
    assert_eq!(delta_ratio(5), r(5, 9));
    for p in 3..=200 {
        let (n, plus) = delta_counts(p);
        let s = delta_signature_closed(p);
        assert_eq!((s.total(), s.n_plus), (n, plus), "p = {p}");
        assert_eq!(delta_ratio(p), s.ratio().unwrap(), "p = {p}");
    }
}

#[test]
fn dihedral_closed_signature_matches_engine() {
    for p in 3..=12 {
        assert_eq!(
            signature_pair(&dihedral(p)).unwrap(),
            delta_signature_closed(p),
            "p = {p}"
        );
    }
}

#[test]
fn binary_dihedral_closed_signature_matches_engine() {
    assert_eq!(lambda_signature_closed(2), SignaturePair::new(5, 1));
    assert_eq!(lambda_signature_closed(3), SignaturePair::new(6, 2));
    assert_eq!(lambda_signature_closed(10), SignaturePair::new(17, 5));
    for p in 2..=8 {
        assert_eq!(
            signature_pair(&binary_dihedral(p)).unwrap(),
            lambda_signature_closed(p),
            "p = {p}"
        );
    }
}

#[test]
fn block_forms_rebuild_phi() {
    for p in 3..=10 {
        assert_eq!(delta_from_blocks(p), phi(&dihedral(p)), "delta p = {p}");
        let blocks = delta_blocks(p);
        let t = total_inertia(&blocks);
        assert_eq!(t.pair(), delta_signature_closed(p));
        assert_eq!(t.n_zero, 0);
    }
    for p in 2..=6 {
        assert_eq!(lambda_from_blocks(p), phi(&binary_dihedral(p)), "lambda p = {p}");
        let t = total_inertia(&lambda_blocks(p));
        assert_eq!(t.pair(), lambda_signature_closed(p));
    }
}

#[test]
fn block_inertia_matches_matrix_inertia() {
    // the block sums are the inertia of the actual coefficient matrix
    for p in 3..=8 {
        let m = coefficient_matrix(&phi(&dihedral(p)));
        assert_eq!(inertia_exact(&m).unwrap().pair(), total_inertia(&delta_blocks(p)).pair());
    }
}

#[test]
fn dihedral_three_blocks() {
    let b = delta_blocks(3);
    assert_eq!(b[1].entries, vec![bi(-3)]);
    assert_eq!(b[2].entries, vec![bi(6), bi(-9)]);
    assert_eq!(b[3].entries, vec![bi(0), bi(-1), bi(-1), bi(0)]);
    assert_eq!(b[3].inertia, Inertia { n_plus: 1, n_minus: 1, n_zero: 0 });
}

#[test]
fn e_k_positive() {
    for p in 1..=20 {
        for k in 1..=2 * (p / 2) {
            assert!(delta_e(p, k).is_positive(), "p = {p}, k = {k}");
        }
    }
}

#[test]
fn d_poly_values() {
    let d = d_poly(2).unwrap();
    assert_eq!(d.coeff(2), bi(12));
    assert_eq!(d.coeff(4), bi(-4));
    // Lambda_1 by hand: phi has t^2 coefficient d_1
    let d1 = d_poly(1).unwrap();
    let direct = phi(&binary_dihedral(1)).coeff4(2, 2, 2, 2).to_integer().unwrap();
    assert_eq!(d1.coeff(2), direct);
    for p in 1..=12 {
        let d = d_poly(p).unwrap();
        assert_eq!(d, d_poly_closed(p).unwrap(), "p = {p}");
        assert!(d_signs_alternate(&d, p), "p = {p}");
        for j in 1..=p {
            assert_eq!(d.coeff(2 * j as usize), lambda_d_from_c(p, j), "p = {p} j = {j}");
        }
        // odd powers of t vanish
        for k in (1..=2 * p as usize).step_by(2) {
            assert!(d.coeff(k).is_zero());
        }
    }
}

#[test]
fn roots_of_p() {
    assert_eq!(p_poly(1).coeffs(), &[bi(2), bi(2)]);
    for p in 1..=12 {
        let r = p_poly_roots_report(p);
        assert!(r.holds(), "{r:?}");
    }
    assert!(p_poly_abs_squared(4).terms().values().all(|c| c.is_positive()));
}

#[test]
fn sturm_detects_non_negative_roots() {
    // (z + 1)(z - 2): one negative root
    let f = UnivariateIntPoly::new(vec![bi(-2), bi(-1), bi(1)]);
    assert_eq!(sturm_negative_roots(&f), 1);
    // z^2 + 1: none
    let g = UnivariateIntPoly::new(vec![bi(1), bi(0), bi(1)]);
    assert_eq!(sturm_negative_roots(&g), 0);
}

#[test]
fn lambda_two_eigenvalues() {
    assert_eq!(lambda2_eigenvalue_signs().unwrap(), vec![1, 1, 1, 1, 1, -1]);
}

#[test]
fn family_csv() {
    let rows: Vec<FamilyRow> = (3..=5)
        .map(|p| FamilyRow::from_pair(p, delta_signature_closed(p)))
        .collect();
    let mut buf = Vec::new();
    write_family_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "p,N,N_plus,N_minus,ratio");
    assert_eq!(text.lines().nth(1).unwrap(), "3,6,3,3,1/2");
}

#[test]
fn degenerate_small_p_agree() {
    for p in 1..=2 {
        assert_eq!(signature_pair(&dihedral(p)).unwrap(), delta_signature_closed(p));
        assert_eq!(delta_from_blocks(p), phi(&dihedral(p)));
    }
    assert_eq!(signature_pair(&binary_dihedral(1)).unwrap(), lambda_signature_closed(1));
    assert_eq!(lambda_from_blocks(1), phi(&binary_dihedral(1)));
}

use proptest::prelude::*;

use super::*;
use crate::group::cyclic_gamma;
use crate::signature::signature_pair;

fn parse(text: &str) -> IntBivariatePoly {
    // terms like "-18x^2y^4", "+y^9", "2y"
    let mut out = IntBivariatePoly::zero();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let neg = rest.starts_with('-');
        if rest.starts_with('+') || neg {
            rest = &rest[1..];
        }
        let end = rest[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
        let mut c: BigInt = if digits.is_empty() {
            BigInt::one()
        } else {
            digits.parse().unwrap()
        };
        if neg {
            c = -c;
        }
        let vars = &term[digits.len()..];
        let exp = |v: char| -> u32 {
            match vars.find(v) {
                None => 0,
                Some(i) => {
                    let tail = &vars[i + 1..];
                    if let Some(t) = tail.strip_prefix('^') {
                        t.chars()
                            .take_while(|c| c.is_ascii_digit())
                            .collect::<String>()
                            .parse()
                            .unwrap()
                    } else {
                        1
                    }
                }
            }
        };
        out.add_term(exp('x'), exp('y'), c);
    }
    out
}

const TABLE_Q4: [&str; 9] = [
    "x+y",
    "x^2+2y-y^2",
    "x^3+3x^2y+3xy^2+y^3",
    "x^4+4y-6y^2+4y^3-y^4",
    "x^5+5xy-5x^2y^2+y^5",
    "x^6+6x^2y-3x^4y^2+2y^3+3x^2y^4-y^6",
    "x^7+7x^3y+14x^2y^3+7xy^5+y^7",
    "x^8+8x^4y+4y^2+8x^4y^3-6y^4+4y^6-y^8",
    "x^9+9x^5y+9xy^2+3x^6y^3-18x^2y^4+3x^3y^6+y^9",
];

#[test]
fn table_one_rows() {
    for (i, row) in TABLE_Q4.iter().enumerate() {
        let p = i as u32 + 1;
        let f = fpq(p, 4).unwrap();
        assert_eq!(f, parse(row), "p = {p}");
        assert_eq!(format_by_weight(&f, p, 4), *row, "p = {p}");
    }
}

#[test]
fn table_one_emitters() {
    let text = table1(4, 9, TableFormat::Text).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().nth(5).unwrap().ends_with("= x^6+6x^2y-3x^4y^2+2y^3+3x^2y^4-y^6"));
    let tex = table1(4, 2, TableFormat::Latex).unwrap();
    assert!(tex.contains("$f_{2,4}(x,y)$ & = $x^2+2y-y^2$ \\\\"));
}

#[test]
fn power_sum_route_matches_direct_expansion() {
    for p in 1..=12 {
        for q in 0..=p as i64 + 1 {
            assert_eq!(fpq(p, q).unwrap(), fpq_by_expansion(p, q).unwrap(), "({p},{q})");
        }
    }
    assert_eq!(fpq(7, -3).unwrap(), fpq_by_expansion(7, -3).unwrap());
}

#[test]
fn q_one_is_binomial() {
    for p in 1..=12 {
        assert_eq!(fpq(p, 1).unwrap(), IntBivariatePoly::binomial_power(p));
    }
}

#[test]
fn closed_forms_for_q_pminus1() {
    assert_eq!(c_closed(6, 2).unwrap(), BigInt::from(9));
    assert_eq!(fpq(6, 5).unwrap().coeff(2, 2), BigInt::from(-9));
    assert_eq!(f_closed_pminus1(3), parse("x^3+y^3+3xy"));
    assert_eq!(f_closed_pminus1(5), parse("x^5+y^5+5xy-5x^2y^2"));
    assert!(c_closed(6, 4).is_err());
    assert!(c_closed(6, 0).is_err());
    for p in 2..=40 {
        assert_eq!(f_closed_pminus1(p), fpq(p, p as i64 - 1).unwrap(), "p = {p}");
        assert_eq!(
            signature_cyclic(p, p as i64 - 1).unwrap(),
            signature_pminus1_closed(p),
            "p = {p}"
        );
    }
    assert_eq!(signature_cyclic(5, 4).unwrap(), SignaturePair::new(3, 1));
    assert_eq!(signature_cyclic(2, 1).unwrap(), SignaturePair::new(3, 0));
}

#[test]
fn exact_formula() {
    for p in 1..=30 {
        assert!(verify_exact_formula(p), "p = {p}");
    }
}

#[test]
fn weights_and_signs() {
    assert_eq!(weight(4, 2, 6, 4), Some(2));
    assert_eq!(weight(7, 0, 7, 3), Some(1));
    assert_eq!(weight(0, 7, 7, 3), Some(3));
    assert_eq!(weight(1, 1, 7, 3), None);
    assert_eq!(lww_sign(4, 2, 2), -1);
    assert_eq!(lww_sign(2, 1, 1), 1);
}

#[test]
fn lww_rule_holds() {
    for p in 1..=60 {
        for q in [2i64, 3, 4, 5, 7, 8] {
            let f = fpq(p, q).unwrap();
            for (&(r, s), c) in f.terms() {
                let w = weight(r, s, p, q).expect("weight constraint");
                let sign = if c.is_positive() { 1 } else { -1 };
                assert_eq!(sign, lww_sign(r, s, w), "({p},{q}) term x^{r}y^{s}");
                if w % 2 == 1 {
                    assert_eq!(sign, 1);
                }
            }
        }
    }
}

/// Number of (r, s) with r + q s = k p, r, s >= 0, r + s <= p.
fn solutions(p: i64, q: i64, k: i64) -> usize {
    (0..=p)
        .filter(|&s| {
            let r = k * p - q * s;
            r >= 0 && r + s <= p && r + s > 0
        })
        .count()
}

#[test]
fn census_examples() {
    let rep = weight_census(8, 4).unwrap();
    let expected: BTreeMap<i64, usize> = [(1, 3), (2, 2), (3, 1), (4, 1)].into_iter().collect();
    assert_eq!(rep.per_k, expected);
    assert_eq!(rep.n_total, 7);
    assert!(rep.bound_violations().is_empty());
    for p in 1..=10 {
        let rep = weight_census(p, 1).unwrap();
        assert_eq!(rep.per_k, [(1, p as usize + 1)].into_iter().collect());
    }
}

#[test]
fn census_bounds_and_solution_counts() {
    for p in 1..=200u32 {
        for q in 2..=12i64 {
            let rep = weight_census(p, q).unwrap();
            assert_eq!(rep.per_k.values().sum::<usize>(), rep.n_total);
            assert_eq!(rep.n_odd + rep.n_even, rep.n_total);
            let v = rep.bound_violations();
            assert!(v.is_empty(), "({p},{q}): {v:?}");
            if p <= 60 {
                for (k, n) in &rep.per_k {
                    assert_eq!(*n, solutions(p as i64, q, *k), "({p},{q}) k = {k}");
                }
            }
        }
    }
}

#[test]
fn t_closed_values() {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let expected = [r(1, 1), r(1, 1), r(5, 6), r(5, 6), r(4, 5), r(4, 5), r(11, 14), r(11, 14), r(7, 9)];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(t_closed(i as u32 + 1), *e);
    }
    for q in 1..200 {
        assert!(t_closed(q + 1) <= t_closed(q));
    }
    for r in 1..100 {
        assert_eq!(t_closed(2 * r - 1), t_closed(2 * r));
    }
    let big = t_closed(1_000_000) - r(3, 4);
    assert!(big.abs() < r(1, 100_000));
}

#[test]
fn t_closed_from_limits() {
    for q in 2..=40u32 {
        let (even, odd) = even_odd_limits(q);
        assert_eq!(&even + &odd, BigRational::one());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(odd + even * half, t_closed(q));
    }
}

#[test]
fn empirical_convergence() {
    for q in [3i64, 4, 5] {
        for p in [100u32, 200, 400] {
            let l = cyclic_ratio(p, q).unwrap();
            let d = (l - t_closed(q as u32)).abs();
            assert!(d <= BigRational::new(5.into(), p.into()), "({p},{q}): {d}");
        }
    }
}

#[test]
fn mirror_correspondence() {
    for p in 1..=16u32 {
        for q in 1..=p as i64 {
            assert!(mirror_check(p, q).unwrap(), "({p},{q})");
            // exact signs: b(p-r-s, s) = -(-1)^s a(r, s) on 1 - f
            let a = one_minus(&fpq(p, q).unwrap());
            let b = one_minus(&fpq(p, p as i64 - q + 1).unwrap());
            for (&(r, s), c) in a.terms() {
                let (r2, s2) = mirror_monomial(p, r, s);
                let expect = if s % 2 == 0 { -c } else { c.clone() };
                assert_eq!(b.coeff(r2, s2), expect);
            }
        }
    }
    // the identity map is not the correspondence in general
    assert!(!mirror_check_with(5, 2, |_, r, s| (r, s)).unwrap());
}

#[test]
fn prime_congruence() {
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23] {
        for q in [2i64, 3, 4] {
            assert!(prime_congruence_holds(p, q).unwrap(), "({p},{q})");
        }
    }
    for p in [4u32, 6, 8, 9] {
        assert!(
            [2i64, 3, 4].iter().any(|&q| !prime_congruence_holds(p, q).unwrap()),
            "p = {p}"
        );
    }
}

#[test]
fn matches_engine_signature() {
    for p in 1..=30u32 {
        for q in 1..=p as i64 {
            assert_eq!(
                signature_cyclic(p, q).unwrap(),
                signature_pair(&cyclic_gamma(p, q)).unwrap(),
                "({p},{q})"
            );
        }
    }
}

#[test]
fn table_two_rows() {
    let t = table2(&[4, 5, 6, 7], 400, TableFormat::Text).unwrap();
    assert_eq!(t.lines().count(), 5);
    assert!(t.lines().nth(1).unwrap().contains("1/3"));
    let tex = table2(&[4], 100, TableFormat::Latex).unwrap();
    assert!(tex.contains("$\\frac{1}{3}$ & $\\frac{2}{3}$"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integral_and_weighted(p in 1u32..=60, q in 1i64..=60) {
        let f = fpq(p, q).unwrap();
        for &(r, s) in f.terms().keys() {
            prop_assert!(r + s > 0 && r + s <= p);
            prop_assert!(weight(r, s, p, q).is_some());
        }
        prop_assert_eq!(f.coeff(p, 0), BigInt::one());
    }

    #[test]
    fn odd_weight_terms_positive(p in 1u32..=60, q in 1i64..=12) {
        let rep = weight_census(p, q).unwrap();
        for t in rep.terms.iter().filter(|t| t.weight % 2 == 1) {
            prop_assert_eq!(t.sign, 1);
        }
    }
}

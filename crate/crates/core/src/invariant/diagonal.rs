//! Phi_G for diagonal groups. With x = |z1|^2, y = |z2|^2 each factor is
//! 1 - a x - b y, and the power sums `sum_g (a x + b y)^k` reduce to
//! character sums: `sum_g a^i b^(k-i)` is |G| when the character is trivial
//! on G and 0 otherwise. The product is then rebuilt over the integers by
//! `m E_m = -sum_k P_k E_{m-k}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::HermitianPolynomial;
use crate::cyclotomic::Cyclotomic;
use crate::group::FiniteMatrixGroup;
use crate::poly::MultiIndex;

fn root_exponent(c: &Cyclotomic, n: u32) -> Option<u32> {
    (0..n).find(|&k| Cyclotomic::root_of_unity(n, k as i64) == *c)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `None` when g is not diagonal or an entry is not a root of unity.
pub(crate) fn phi_diagonal(g: &FiniteMatrixGroup) -> Option<HermitianPolynomial> {
    if !g.is_diagonal() {
        return None;
    }
    let n = g.field_order();
    let exps: Vec<(u64, u64)> = g
        .elements()
        .iter()
        .map(|m| Some((root_exponent(m.get(0, 0), n)? as u64, root_exponent(m.get(1, 1), n)? as u64)))
        .collect::<Option<_>>()?;
    let order = exps.len();
    let trivial = |i: usize, j: usize| {
        exps.iter()
            .all(|&(ea, eb)| (ea * i as u64 + eb * j as u64) % n as u64 == 0)
    };
    // p_k[i] = coefficient of x^i y^(k-i) in the k-th power sum
    let size = BigInt::from(order);
    let power: Vec<Vec<BigInt>> = (0..=order)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    if k > 0 && trivial(i, k - i) {
                        binomial(k, i) * &size
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut e: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=order {
        let mut acc = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            for (i, pk) in power[k].iter().enumerate() {
                if pk.is_zero() {
                    continue;
                }
                for (i2, c) in e[m - k].iter().enumerate() {
                    acc[i + i2] -= pk * c;
                }
            }
        }
        let mm = BigInt::from(m);
        let part = acc
            .into_iter()
            .map(|v| {
                let (q, r) = v.div_rem(&mm);
                debug_assert!(r.is_zero(), "non-integral coefficient");
                q
            })
            .collect();
        e.push(part);
    }
    let mut out = HermitianPolynomial::new(order);
    for (m, part) in e.iter().enumerate().skip(1) {
        for (i, c) in part.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = MultiIndex::new(i as u32, (m - i) as u32);
            out.add_term(a, a, Cyclotomic::from_integer(1, -c));
        }
    }
    Some(out)
}

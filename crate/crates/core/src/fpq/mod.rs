//! The bivariate integer polynomials
//! `f_{p,q}(x, y) = 1 - prod_{j<p} (1 - w^j x - w^{qj} y)`, w = exp(2 pi i / p),
//! with their weight combinatorics and closed forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::poly::HoloPoly;
use crate::signature::SignaturePair;

/// Sparse `sum c_{r,s} x^r y^s` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntBivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntBivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = Self::zero();
        for ((r, s), c) in terms {
            p.add_term(r, s, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, r: u32, s: u32) -> BigInt {
        self.terms.get(&(r, s)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, r: u32, s: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((r, s)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(r, s));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(r, s), c) in &other.terms {
            out.add_term(r, s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntBivariatePoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(r1, s1), c1) in &self.terms {
            for (&(r2, s2), c2) in &other.terms {
                out.add_term(r1 + r2, s1 + s2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::from_terms([((0, 0), BigInt::one())]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// (x + y)^p.
    pub fn binomial_power(p: u32) -> Self {
        let mut c = BigInt::one();
        let mut out = Self::zero();
        for r in 0..=p {
            out.add_term(p - r, r, c.clone());
            c = c * BigInt::from(p - r) / BigInt::from(r + 1);
        }
        out
    }

    /// Coefficients reduced into [0, m).
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.mod_floor(m))))
    }

    /// Terms listed in the given order.
    pub fn format_ordered<K: Ord>(&self, key: impl Fn(u32, u32) -> K) -> String {
        let mut items: Vec<(&(u32, u32), &BigInt)> = self.terms.iter().collect();
        items.sort_by_key(|((r, s), _)| key(*r, *s));
        let mut out = String::new();
        for (i, (&(r, s), c)) in items.into_iter().enumerate() {
            let mono = monomial_text(r, s);
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 || neg {
                out.push(if neg { '-' } else { '+' });
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn monomial_text(r: u32, s: u32) -> String {
    let var = |v: char, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", var('x', r), var('y', s))
}

impl fmt::Display for IntBivariatePoly {
    /// Descending powers of x.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.format_ordered(|r, s| (std::cmp::Reverse(r), s));
        f.write_str(&s)
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// f_{p,q} by the power-sum route. With L_j = w^j x + w^{qj} y,
/// `sum_j L_j^m = p sum_{a+qb = 0 mod p} binom(m, a) x^a y^b`, so
/// `log prod (1 - L_j) = -p sum_m (1/m) (...)` has integer-times-1/m
/// coefficients, and the product is recovered degree by degree from
/// `m E_m = sum_k (k g_k) E_{m-k}`. The exact division by m checks integrality.
pub fn fpq(p: u32, q: i64) -> Result<IntBivariatePoly> {
    assert!(p >= 1, "p must be positive");
    let pn = p as i64;
    let q = q.rem_euclid(pn);
    // k g_k, homogeneous of degree k, as (a, coeff) with b = k - a
    let dg: Vec<Vec<(u32, BigInt)>> = (0..=p)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=k)
                .filter(|&a| (a as i64 + q * (k - a) as i64) % pn == 0)
                .map(|a| (a, -(binomial(k, a) * BigInt::from(p))))
                .collect()
        })
        .collect();
    let mut e: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); p as usize + 1];
    e[0].insert(0, BigInt::one());
    for m in 1..=p {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        for k in 1..=m {
            for (a, g) in &dg[k as usize] {
                for (a2, c) in &e[(m - k) as usize] {
                    *acc.entry(a + a2).or_default() += g * c;
                }
            }
        }
        let mm = BigInt::from(m);
        let part = &mut e[m as usize];
        for (a, v) in acc {
            if v.is_zero() {
                continue;
            }
            let (quo, rem) = v.div_rem(&mm);
            if !rem.is_zero() {
                return Err(Error::NonIntegerCoefficient(a, m - a));
            }
            part.insert(a, quo);
        }
    }
    let mut out = IntBivariatePoly::zero();
    for (m, part) in e.iter().enumerate().skip(1) {
        for (a, c) in part {
            out.add_term(*a, m as u32 - a, -c);
        }
    }
    Ok(out)
}

/// f_{p,q} by direct expansion of the product over Q(zeta_p), demoting each
/// coefficient to an integer. Slow; an independent check of [`fpq`].
pub fn fpq_by_expansion(p: u32, q: i64) -> Result<IntBivariatePoly> {
    assert!(p >= 1, "p must be positive");
    let mut prod = HoloPoly::one();
    for j in 0..p as i64 {
        let l = HoloPoly::linear(
            Cyclotomic::root_of_unity(p, j),
            Cyclotomic::root_of_unity(p, q * j),
        );
        prod = prod.sub(&prod.mul(&l));
    }
    let f = HoloPoly::one().sub(&prod);
    let mut out = IntBivariatePoly::zero();
    for (m, c) in f.terms() {
        let v = c
            .to_integer()
            .ok_or(Error::NonIntegerCoefficient(m.a1, m.a2))?;
        out.add_term(m.a1, m.a2, v);
    }
    Ok(out)
}

/// c_{p,j} = p/(p-j) binom(p-j, j).
pub fn c_closed(p: u32, j: u32) -> Result<BigInt> {
    if j < 1 || j > p / 2 {
        return Err(Error::IndexOutOfRange {
            index: j as i64,
            max: (p / 2) as i64,
        });
    }
    Ok(binomial(p - j, j) * BigInt::from(p) / BigInt::from(p - j))
}

/// x^p + y^p + sum_j (-1)^(j-1) c_{p,j} x^j y^j.
pub fn f_closed_pminus1(p: u32) -> IntBivariatePoly {
    let mut out = IntBivariatePoly::zero();
    out.add_term(p, 0, BigInt::one());
    out.add_term(0, p, BigInt::one());
    for j in 1..=p / 2 {
        let c = c_closed(p, j).expect("j in range");
        out.add_term(j, j, if j % 2 == 1 { c } else { -c });
    }
    out
}

/// Expands `1 + x^p + y^p - a^p - b^p` with a, b = (1 +- sqrt(1 - 4t))/2,
/// t = xy, by the binomial theorem, and compares with fpq(p, p - 1).
pub fn verify_exact_formula(p: u32) -> bool {
    // a^p + b^p = 2^(1-p) sum_{i even} binom(p, i) (1 - 4t)^(i/2)
    let mut diag: BTreeMap<u32, BigRational> = BTreeMap::new();
    for i in (0..=p).step_by(2) {
        let h = i / 2;
        for k in 0..=h {
            let c = binomial(p, i) * binomial(h, k) * BigInt::from(-4).pow(k);
            *diag.entry(k).or_insert_with(BigRational::zero) += BigRational::from_integer(c);
        }
    }
    let scale = BigRational::new(BigInt::one(), BigInt::from(2).pow(p - 1));
    let mut rhs = IntBivariatePoly::zero();
    rhs.add_term(p, 0, BigInt::one());
    rhs.add_term(0, p, BigInt::one());
    let mut constant = BigRational::one();
    for (k, c) in diag {
        let v = -(c * &scale);
        if k == 0 {
            constant += v;
            continue;
        }
        if !v.is_integer() {
            return false;
        }
        rhs.add_term(k, k, v.to_integer());
    }
    if !constant.is_zero() {
        return false;
    }
    match fpq(p, p as i64 - 1) {
        Ok(f) => f == rhs,
        Err(_) => false,
    }
}

/// Weight k with r + q s = k p, if any.
pub fn weight(r: u32, s: u32, p: u32, q: i64) -> Option<i64> {
    let t = r as i64 + q * s as i64;
    (t % p as i64 == 0).then(|| t / p as i64)
}

/// +1 when gcd(r, s, w) is odd, -1 when even.
pub fn lww_sign(r: u32, s: u32, w: i64) -> i32 {
    let g = (r as i64).gcd(&(s as i64)).gcd(&w);
    if g % 2 == 1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub r: u32,
    pub s: u32,
    pub weight: i64,
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub p: u32,
    pub q: i64,
    pub per_k: BTreeMap<i64, usize>,
    pub n_odd: usize,
    pub n_even: usize,
    pub n_total: usize,
    pub terms: Vec<TermRecord>,
}

impl WeightReport {
    /// Violated counting bounds, as messages; empty when all hold.
    pub fn bound_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (p, q) = (self.p as i64, self.q);
        let half_p = BigRational::new(p.into(), 2.into());
        let dev = (BigRational::from_integer((self.n_total as i64).into()) - half_p).abs();
        if dev > BigRational::from_integer(q.into()) {
            out.push(format!("|N - p/2| = {dev} > q"));
        }
        if q < 2 {
            return out;
        }
        let n1 = self.per_k.get(&1).copied().unwrap_or(0) as i64;
        if n1 != p / q + 1 {
            out.push(format!("N_1 = {n1}, expected {}", p / q + 1));
        }
        let nq = self.per_k.get(&q).copied().unwrap_or(0);
        if nq != 1 {
            out.push(format!("N_q = {nq}, expected 1"));
        }
        for k in 1..=q {
            let nk = self.per_k.get(&k).copied().unwrap_or(0) as i64;
            let expect = BigRational::new(((q - k) * p).into(), ((q - 1) * q).into());
            let d = (BigRational::from_integer(nk.into()) - expect).abs();
            if d > BigRational::one() {
                out.push(format!("N_{k} = {nk} deviates by {d}"));
            }
        }
        out
    }
}

pub fn weight_census(p: u32, q: i64) -> Result<WeightReport> {
    let f = fpq(p, q)?;
    let mut per_k: BTreeMap<i64, usize> = BTreeMap::new();
    let mut terms = Vec::new();
    let (mut n_odd, mut n_even) = (0, 0);
    for (&(r, s), c) in f.terms() {
        let w = weight(r, s, p, q).expect("f_{p,q} terms satisfy the weight constraint");
        *per_k.entry(w).or_default() += 1;
        if w % 2 == 0 {
            n_even += 1;
        } else {
            n_odd += 1;
        }
        terms.push(TermRecord {
            r,
            s,
            weight: w,
            sign: if c.is_positive() { 1 } else { -1 },
        });
    }
    Ok(WeightReport {
        p,
        q,
        per_k,
        n_odd,
        n_even,
        n_total: f.len(),
        terms,
    })
}

/// Sign census of the coefficients of f_{p,q}.
pub fn signature_cyclic(p: u32, q: i64) -> Result<SignaturePair> {
    let f = fpq(p, q)?;
    let plus = f.terms().values().filter(|c| c.is_positive()).count();
    Ok(SignaturePair::new(plus, f.len() - plus))
}

/// (floor((p+2)/4) + 2, floor(p/4)), the pair for q = p - 1.
pub fn signature_pminus1_closed(p: u32) -> SignaturePair {
    SignaturePair::new(((p + 2) / 4 + 2) as usize, (p / 4) as usize)
}

/// The limit of L(Gamma(p, q)) as p grows.
pub fn t_closed(q: u32) -> BigRational {
    assert!(q >= 1);
    let q = q as i64;
    if q % 2 == 1 {
        BigRational::new((3 * q + 1).into(), (4 * q).into())
    } else {
        BigRational::new((3 * q - 2).into(), (4 * (q - 1)).into())
    }
}

/// Limits of N_even / N and N_odd / N as p grows, by q mod 4.
pub fn even_odd_limits(q: u32) -> (BigRational, BigRational) {
    assert!(q >= 2);
    let q = q as i64;
    if q % 2 == 0 {
        (
            BigRational::new((q - 2).into(), (2 * (q - 1)).into()),
            BigRational::new(q.into(), (2 * (q - 1)).into()),
        )
    } else {
        (
            BigRational::new((q - 1).into(), (2 * q).into()),
            BigRational::new((q + 1).into(), (2 * q).into()),
        )
    }
}

/// The monomial correspondence between f_{p,q} and f_{p,p-q+1}.
///
/// Homogenize `1 - f_{p,q}` with a variable t and swap t with x:
/// `prod (x - w^j t - w^{qj} y) = -prod (t - w^{-j} x + w^{(q-1)j} y)`, and
/// j -> -j turns this into minus the f_{p,p-q+1} product at (x, -y). So
/// x^r y^s (the constant included) corresponds to x^(p-r-s) y^s, with
/// coefficients related by the sign -(-1)^s.
pub fn mirror_monomial(p: u32, r: u32, s: u32) -> (u32, u32) {
    (p - r - s, s)
}

/// `1 - f` with its constant term, the polynomial the correspondence acts on.
fn one_minus(f: &IntBivariatePoly) -> IntBivariatePoly {
    let mut g = f.neg();
    g.add_term(0, 0, BigInt::one());
    g
}

/// Compare |coefficients| of 1 - f_{p,q} and 1 - f_{p,p-q+1} under `map`.
pub fn mirror_check_with(
    p: u32,
    q: i64,
    map: impl Fn(u32, u32, u32) -> (u32, u32),
) -> Result<bool> {
    let a = one_minus(&fpq(p, q)?);
    let b = one_minus(&fpq(p, p as i64 - q + 1)?);
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(a.terms().iter().all(|(&(r, s), c)| {
        if r + s > p {
            return false;
        }
        let (r2, s2) = map(p, r, s);
        b.coeff(r2, s2).abs() == c.abs()
    }))
}

pub fn mirror_check(p: u32, q: i64) -> Result<bool> {
    mirror_check_with(p, q, mirror_monomial)
}

/// f_{p,q} = (x + y)^p mod p, coefficientwise.
pub fn prime_congruence_holds(p: u32, q: i64) -> Result<bool> {
    let m = BigInt::from(p);
    let f = fpq(p, q)?.reduce_mod(&m);
    Ok(f == IntBivariatePoly::binomial_power(p).reduce_mod(&m))
}

/// Order used by the table of f_{p,q}: ascending weight, then ascending y degree.
pub fn format_by_weight(f: &IntBivariatePoly, p: u32, q: i64) -> String {
    f.format_ordered(|r, s| (weight(r, s, p, q), s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Latex,
}

/// The list of f_{p,q} for 1 <= p <= p_max.
pub fn table1(q: i64, p_max: u32, format: TableFormat) -> Result<String> {
    let mut rows = Vec::new();
    for p in 1..=p_max {
        let body = format_by_weight(&fpq(p, q)?, p, q);
        rows.push(match format {
            TableFormat::Text => (format!("f_{{{p},{q}}}(x,y)"), body),
            TableFormat::Latex => (format!("$f_{{{p},{q}}}(x,y)$"), format!("${body}$")),
        });
    }
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    if format == TableFormat::Latex {
        out.push_str("\\begin{tabular}{cl}\n");
    }
    for (label, body) in rows {
        match format {
            TableFormat::Text => out.push_str(&format!("{label:<width$} = {body}\n")),
            TableFormat::Latex => out.push_str(&format!("{label:<width$} & = {body} \\\\\n")),
        }
    }
    if format == TableFormat::Latex {
        out.push_str("\\end{tabular}\n");
    }
    Ok(out)
}

/// Limits of N_even/N and N_odd/N by q mod 4, with the observed ratios at `p_sample`.
pub fn table2(qs: &[u32], p_sample: u32, format: TableFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        TableFormat::Text => out.push_str(&format!(
            "{:>4} {:>7} {:>12} {:>12} {:>14} {:>14}\n",
            "q",
            "q mod 4",
            "lim Ne/N",
            "lim No/N",
            format!("Ne/N @{p_sample}"),
            format!("No/N @{p_sample}")
        )),
        TableFormat::Latex => {
            out.push_str("\\begin{tabular}{|c|c|c|c|}\n\\hline\n");
            out.push_str("$q$ & $q \\bmod 4$ & $\\lim_p N_{even}/N$ & $\\lim_p N_{odd}/N$\\\\\n\\hline\n");
        }
    }
    for &q in qs {
        let (le, lo) = even_odd_limits(q);
        let rep = weight_census(p_sample, q as i64)?;
        let n = rep.n_total as i64;
        let oe = BigRational::new((rep.n_even as i64).into(), n.into());
        let oo = BigRational::new((rep.n_odd as i64).into(), n.into());
        match format {
            TableFormat::Text => out.push_str(&format!(
                "{q:>4} {:>7} {:>12} {:>12} {:>14} {:>14}\n",
                q % 4,
                le.to_string(),
                lo.to_string(),
                oe.to_string(),
                oo.to_string()
            )),
            TableFormat::Latex => out.push_str(&format!(
                "{q} & {} & $\\frac{{{}}}{{{}}}$ & $\\frac{{{}}}{{{}}}$\\\\\n",
                q % 4,
                le.numer(),
                le.denom(),
                lo.numer(),
                lo.denom()
            )),
        }
    }
    if format == TableFormat::Latex {
        out.push_str("\\hline\n\\end{tabular}\n");
    }
    Ok(out)
}

/// Positivity ratio of the cyclic group from the coefficient signs.
pub fn cyclic_ratio(p: u32, q: i64) -> Result<BigRational> {
    signature_cyclic(p, q)?.ratio()
}

#[cfg(test)]
mod tests;

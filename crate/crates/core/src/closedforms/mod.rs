//! Closed forms for the dihedral groups Delta_p (order 2p) and the binary
//! dihedral groups Lambda_p (order 4p): decompositions through f_{p,p-1},
//! block-diagonal coefficient matrices, and signature formulas. Nothing here
//! feeds the exact engine; each result is an independent prediction.

use std::io::Write;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::{sqrt5, Cyclotomic};
use crate::error::{Error, Result};
use crate::fpq::{c_closed, fpq, IntBivariatePoly};
use crate::invariant::HermitianPolynomial;
use crate::poly::MultiIndex;
use crate::signature::{Inertia, SignaturePair};

/// Dense integer polynomial in one variable, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnivariateIntPoly {
    coeffs: Vec<BigInt>,
}

impl UnivariateIntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariateIntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::new(vec![BigInt::one()]), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k.min(n - k)).fold(BigInt::one(), |c, i| c * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

fn big(c: &BigInt) -> Cyclotomic {
    Cyclotomic::from_integer(1, c.clone())
}

/// f(X, Y) where x -> X and y -> Y are the given bidegree (1,1) monomials
/// `z^alpha conj(z)^beta`, with an extra sign (-1)^s when `negate_y`.
fn substitute_monomials(
    f: &IntBivariatePoly,
    x: (MultiIndex, MultiIndex),
    y: (MultiIndex, MultiIndex),
    negate_y: bool,
    group_order: usize,
) -> HermitianPolynomial {
    let mut out = HermitianPolynomial::new(group_order);
    let scale = |m: MultiIndex, k: u32| MultiIndex::new(m.a1 * k, m.a2 * k);
    for (&(r, s), c) in f.terms() {
        let alpha = scale(x.0, r).add(&scale(y.0, s));
        let beta = scale(x.1, r).add(&scale(y.1, s));
        let c = if negate_y && s % 2 == 1 { -c } else { c.clone() };
        out.add_term(alpha, beta, big(&c));
    }
    out
}

const Z1: MultiIndex = MultiIndex::new(1, 0);
const Z2: MultiIndex = MultiIndex::new(0, 1);

/// F1 + F2 - F1 F2 with F1 = f(|z1|^2, |z2|^2), F2 = f(z2 conj z1, +-z1 conj z2).
fn decomposed(f: &IntBivariatePoly, negate: bool, group_order: usize) -> HermitianPolynomial {
    let f1 = substitute_monomials(f, (Z1, Z1), (Z2, Z2), false, group_order);
    let f2 = substitute_monomials(f, (Z2, Z1), (Z1, Z2), negate, group_order);
    f1.add(&f2).sub(&f1.mul(&f2))
}

/// Phi of the dihedral group of order 2p through f_{p,p-1}.
pub fn phi_delta_decomposed(p: u32) -> Result<HermitianPolynomial> {
    let f = fpq(p, p as i64 - 1)?;
    Ok(decomposed(&f, false, 2 * p as usize))
}

/// Phi of the binary dihedral group of order 4p through f_{2p,2p-1}.
pub fn phi_lambda_decomposed(p: u32) -> Result<HermitianPolynomial> {
    let f = fpq(2 * p, 2 * p as i64 - 1)?;
    Ok(decomposed(&f, true, 4 * p as usize))
}

/// N and N+ of the dihedral group of order 2p.
pub fn delta_counts(p: u32) -> (usize, usize) {
    let p = p as usize;
    (p + p / 2 + 2, p / 2 + p / 4 + 2)
}

/// (floor(p/2) + floor(p/4) + 2, floor(3(p+1)/4)).
pub fn delta_signature_closed(p: u32) -> SignaturePair {
    let p = p as usize;
    SignaturePair::new(p / 2 + p / 4 + 2, 3 * (p + 1) / 4)
}

/// The four-residue formula for L(Delta_p).
pub fn delta_ratio(p: u32) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    let p = p as i64;
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    match p % 4 {
        0 => half + r(2, 3 * p + 4),
        1 => half + r(1, 3 * p + 3),
        2 => half + r(1, 3 * p + 4),
        _ => half,
    }
}

/// (2 + p + floor(p/2), 1 + floor((p-1)/2)).
pub fn lambda_signature_closed(p: u32) -> SignaturePair {
    let p = p as usize;
    SignaturePair::new(2 + p + p / 2, 1 + (p.saturating_sub(1)) / 2)
}

/// E_k for the dihedral group, 1 <= k <= p.
pub fn delta_e(p: u32, k: u32) -> BigInt {
    let h = p / 2;
    let mut e = BigInt::zero();
    for a in 1..=h {
        if k > a && k - a >= 1 && k - a <= h {
            e += c_closed(p, a).expect("a in range") * c_closed(p, k - a).expect("b in range");
        }
    }
    if k >= 1 && k <= h {
        e += 2 * c_closed(p, k).expect("k in range");
    }
    e
}

/// d_j from the c_{2p,k} sums, 1 <= j <= p.
pub fn lambda_d_from_c(p: u32, j: u32) -> BigInt {
    let c = |k: u32| c_closed(2 * p, k).expect("k in range");
    let sign = |k: u32| if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let mut d = sign(j) * c(j) * c(j);
    for k in j + 1..=(2 * j - 1).min(p) {
        d += 2 * sign(k) * c(k) * c(2 * j - k);
    }
    if 2 * j <= p {
        d -= 2 * c(2 * j);
    }
    d
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalBlockSummary {
    pub label: String,
    /// Row-major entries of a diagonal block (diagonal only) or of a 2x2 block.
    #[serde(serialize_with = "as_strings")]
    pub entries: Vec<BigInt>,
    pub two_by_two: bool,
    pub inertia: Inertia,
}

impl DiagonalBlockSummary {
    fn diagonal(label: &str, entries: Vec<BigInt>) -> Self {
        let n_plus = entries.iter().filter(|c| c.is_positive()).count();
        let n_minus = entries.iter().filter(|c| c.is_negative()).count();
        let n_zero = entries.len() - n_plus - n_minus;
        DiagonalBlockSummary {
            label: label.to_string(),
            entries,
            two_by_two: false,
            inertia: Inertia {
                n_plus,
                n_minus,
                n_zero,
            },
        }
    }

    /// [[a, b], [b, d]] by the signs of determinant and trace.
    fn pair(label: &str, a: BigInt, b: BigInt, d: BigInt) -> Self {
        let det = &a * &d - &b * &b;
        let tr = &a + &d;
        let inertia = if det.is_negative() {
            Inertia { n_plus: 1, n_minus: 1, n_zero: 0 }
        } else if det.is_positive() {
            if tr.is_positive() {
                Inertia { n_plus: 2, n_minus: 0, n_zero: 0 }
            } else {
                Inertia { n_plus: 0, n_minus: 2, n_zero: 0 }
            }
        } else if tr.is_positive() {
            Inertia { n_plus: 1, n_minus: 0, n_zero: 1 }
        } else if tr.is_negative() {
            Inertia { n_plus: 0, n_minus: 1, n_zero: 1 }
        } else {
            Inertia { n_plus: 0, n_minus: 0, n_zero: 2 }
        };
        DiagonalBlockSummary {
            label: label.to_string(),
            entries: vec![a, b.clone(), b, d],
            two_by_two: true,
            inertia,
        }
    }
}

/// Sum of the block inertias.
pub fn total_inertia(blocks: &[DiagonalBlockSummary]) -> Inertia {
    blocks.iter().fold(Inertia::default(), |acc, b| Inertia {
        n_plus: acc.n_plus + b.inertia.n_plus,
        n_minus: acc.n_minus + b.inertia.n_minus,
        n_zero: acc.n_zero + b.inertia.n_zero,
    })
}

/// Blocks of H_p in the basis
/// `z1^p + z2^p; z1^j z2^j (z1^p + z2^p), j <= p/2; (z1 z2)^k, k < p; (z1 z2)^p, z1^2p + z2^2p`.
pub fn delta_blocks(p: u32) -> Vec<DiagonalBlockSummary> {
    let sign = |k: u32| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let a1 = (1..=p / 2).map(|j| sign(j) * c_closed(p, j).expect("j in range")).collect();
    let a2 = (1..p).map(|k| -sign(k) * delta_e(p, k)).collect();
    vec![
        DiagonalBlockSummary::diagonal("1", vec![BigInt::one()]),
        DiagonalBlockSummary::diagonal("A_{p,1}", a1),
        DiagonalBlockSummary::diagonal("A_{p,2}", a2),
        DiagonalBlockSummary::pair("A_{p,3}", -sign(p) * delta_e(p, p), -BigInt::one(), BigInt::zero()),
    ]
}

/// Blocks of M_p in the basis
/// `z1^2p + z2^2p; z1^j z2^j (z1^2p + (-1)^j z2^2p), j <= p; (z1 z2)^2j, j < p; (z1 z2)^2p, z1^4p + z2^4p`.
pub fn lambda_blocks(p: u32) -> Vec<DiagonalBlockSummary> {
    let e1 = (1..=p).map(|j| c_closed(2 * p, j).expect("j in range")).collect();
    let e2 = (1..p).map(|j| lambda_d_from_c(p, j)).collect();
    vec![
        DiagonalBlockSummary::diagonal("1", vec![BigInt::one()]),
        DiagonalBlockSummary::diagonal("E_{p,1}", e1),
        DiagonalBlockSummary::diagonal("E_{p,2}", e2),
        DiagonalBlockSummary::pair("E_{p,3}", lambda_d_from_c(p, p), -BigInt::one(), BigInt::zero()),
    ]
}

/// A basis polynomial as a list of (monomial, coefficient).
type BasisPoly = Vec<(MultiIndex, BigInt)>;

/// `sum_ij H_ij conj(b_i) b_j` for a block-diagonal H, as a Hermitian polynomial
/// with coefficient c on z^alpha conj(z)^beta for alpha from b_j and beta from b_i.
fn quadratic_form(
    basis: &[BasisPoly],
    blocks: &[DiagonalBlockSummary],
    group_order: usize,
) -> HermitianPolynomial {
    let mut out = HermitianPolynomial::new(group_order);
    let mut add = |i: usize, j: usize, h: &BigInt| {
        for (mi, ci) in &basis[i] {
            for (mj, cj) in &basis[j] {
                out.add_term(*mj, *mi, big(&(h * ci * cj)));
            }
        }
    };
    let mut pos = 0;
    for b in blocks {
        if b.two_by_two {
            add(pos, pos, &b.entries[0]);
            add(pos, pos + 1, &b.entries[1]);
            add(pos + 1, pos, &b.entries[2]);
            add(pos + 1, pos + 1, &b.entries[3]);
            pos += 2;
        } else {
            for (k, h) in b.entries.iter().enumerate() {
                add(pos + k, pos + k, h);
            }
            pos += b.entries.len();
        }
    }
    out
}

fn mono(a1: u32, a2: u32) -> MultiIndex {
    MultiIndex::new(a1, a2)
}

fn one() -> BigInt {
    BigInt::one()
}

fn delta_basis(p: u32) -> Vec<BasisPoly> {
    let mut b = vec![vec![(mono(p, 0), one()), (mono(0, p), one())]];
    for j in 1..=p / 2 {
        b.push(vec![(mono(p + j, j), one()), (mono(j, p + j), one())]);
    }
    for k in 1..=p {
        b.push(vec![(mono(k, k), one())]);
    }
    b.push(vec![(mono(2 * p, 0), one()), (mono(0, 2 * p), one())]);
    b
}

fn lambda_basis(p: u32) -> Vec<BasisPoly> {
    let n = 2 * p;
    let mut b = vec![vec![(mono(n, 0), one()), (mono(0, n), one())]];
    for j in 1..=p {
        let s = if j % 2 == 0 { one() } else { -one() };
        b.push(vec![(mono(n + j, j), one()), (mono(j, n + j), s)]);
    }
    for j in 1..=p {
        b.push(vec![(mono(2 * j, 2 * j), one())]);
    }
    b.push(vec![(mono(2 * n, 0), one()), (mono(0, 2 * n), one())]);
    b
}

/// `b* H_p b` rebuilt from the closed-form blocks.
pub fn delta_from_blocks(p: u32) -> HermitianPolynomial {
    quadratic_form(&delta_basis(p), &delta_blocks(p), 2 * p as usize)
}

/// `d* M_p d` rebuilt from the closed-form blocks.
pub fn lambda_from_blocks(p: u32) -> HermitianPolynomial {
    quadratic_form(&lambda_basis(p), &lambda_blocks(p), 4 * p as usize)
}

/// D_p(t) = sum_k d_k t^2k, read off a Phi of the binary dihedral group.
pub fn d_poly_from(phi: &HermitianPolynomial, p: u32) -> Result<UnivariateIntPoly> {
    let mut coeffs = vec![BigInt::zero(); 2 * p as usize + 1];
    for k in 1..=p {
        let e = 2 * k;
        let c = phi.coeff4(e, e, e, e);
        coeffs[e as usize] = c.to_integer().ok_or(Error::NonIntegerCoefficient(e, e))?;
    }
    Ok(UnivariateIntPoly::new(coeffs))
}

pub fn d_poly(p: u32) -> Result<UnivariateIntPoly> {
    d_poly_from(&phi_lambda_decomposed(p)?, p)
}

/// `1 - 4^(1-2p) sum_{j,k} binom(2p,2j) binom(2p,2k) (1-4t)^j (1+4t)^k`.
pub fn d_poly_closed(p: u32) -> Result<UnivariateIntPoly> {
    let a2 = UnivariateIntPoly::new(vec![BigInt::one(), BigInt::from(-4)]);
    let b2 = UnivariateIntPoly::new(vec![BigInt::one(), BigInt::from(4)]);
    let sum = |u: &UnivariateIntPoly| {
        (0..=p).fold(UnivariateIntPoly::default(), |acc, j| {
            acc.add(&u.pow(j).scale(&binomial(2 * p, 2 * j)))
        })
    };
    let s = sum(&a2).mul(&sum(&b2));
    let den = BigInt::from(4).pow(2 * p - 1);
    let mut coeffs = Vec::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        let (q, r) = c.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegerCoefficient(k as u32, 0));
        }
        coeffs.push(-q);
    }
    coeffs[0] += 1;
    Ok(UnivariateIntPoly::new(coeffs))
}

/// d_k > 0 for odd k and d_k < 0 for even k, 1 <= k <= p.
pub fn d_signs_alternate(d: &UnivariateIntPoly, p: u32) -> bool {
    (1..=p).all(|k| {
        let c = d.coeff(2 * k as usize);
        if k % 2 == 1 {
            c.is_positive()
        } else {
            c.is_negative()
        }
    })
}

/// P(z) = 2 sum_k binom(2p, 2k) z^k.
pub fn p_poly(p: u32) -> UnivariateIntPoly {
    UnivariateIntPoly::new((0..=p).map(|k| 2 * binomial(2 * p, 2 * k)).collect())
}

/// Signs of a polynomial sequence at -infinity and 0, for Sturm counting.
fn sturm_negative_roots(f: &UnivariateIntPoly) -> usize {
    let to_rat = |u: &UnivariateIntPoly| -> Vec<BigRational> {
        u.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let trim = |mut v: Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let deriv = |v: &[BigRational]| -> Vec<BigRational> {
        v.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect()
    };
    let rem = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db {
            let lead = r.last().cloned().expect("nonempty") / b[db].clone();
            let shift = r.len() - 1 - db;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &lead * c;
            }
            r.pop();
            r = trim(r);
        }
        r
    };
    let mut seq = vec![trim(to_rat(f))];
    seq.push(trim(deriv(&seq[0])));
    while seq.last().is_some_and(|s| s.len() > 1) {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sgn = |c: &BigRational| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
    let at_neg_inf = seq
        .iter()
        .map(|s| {
            let lead = sgn(s.last().expect("nonempty"));
            if (s.len() - 1) % 2 == 1 { -lead } else { lead }
        })
        .collect();
    let at_zero = seq.iter().map(|s| sgn(&s[0])).collect();
    changes(at_neg_inf) - changes(at_zero)
}

/// Real part and imaginary part of P(x + iy) as integer polynomials in x, y.
fn split_complex(f: &UnivariateIntPoly) -> (IntBivariatePoly, IntBivariatePoly) {
    let mut re = IntBivariatePoly::zero();
    let mut im = IntBivariatePoly::zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        let k = k as u32;
        for m in 0..=k {
            // i^m
            let t = c * binomial(k, m);
            match m % 4 {
                0 => re.add_term(k - m, m, t),
                1 => im.add_term(k - m, m, t),
                2 => re.add_term(k - m, m, -t),
                _ => im.add_term(k - m, m, -t),
            }
        }
    }
    (re, im)
}

/// |P(x + iy)|^2 expanded exactly.
pub fn p_poly_abs_squared(p: u32) -> IntBivariatePoly {
    let (re, im) = split_complex(&p_poly(p));
    re.mul(&re).add(&im.mul(&im))
}

const RM: RoundingMode = RoundingMode::ToEven;

/// P at a big float, by Horner.
fn eval_big(f: &UnivariateIntPoly, x: &BigFloat, prec: usize, cc: &mut Consts) -> BigFloat {
    let mut acc = BigFloat::from_u8(0, prec);
    for c in f.coeffs().iter().rev() {
        let cv = BigFloat::parse(&c.to_string(), Radix::Dec, prec, RM, cc);
        acc = acc.mul(x, prec, RM).add(&cv, prec, RM);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootsReport {
    pub p: u32,
    /// Distinct negative real roots counted exactly by a Sturm sequence.
    pub negative_real_roots: usize,
    /// Sign changes of P across +-2^-60 relative neighbourhoods of -tan^2((2j+1) pi / 4p).
    pub bracketed_roots: usize,
    /// Every coefficient of |P(x + iy)|^2 is positive.
    pub abs_squared_positive: bool,
}

impl RootsReport {
    pub fn holds(&self) -> bool {
        self.negative_real_roots == self.p as usize
            && self.bracketed_roots == self.p as usize
            && self.abs_squared_positive
    }
}

pub fn p_poly_roots_report(p: u32) -> RootsReport {
    let f = p_poly(p);
    let prec = 128;
    let mut cc = Consts::new().expect("constants");
    let pi = cc.pi(prec + 32, RM);
    let eps = {
        let mut e = BigFloat::from_u8(1, prec);
        e.set_exponent(-59);
        e
    };
    let one = BigFloat::from_u8(1, prec);
    let mut bracketed = 0;
    for j in 0..p {
        let angle = pi
            .mul(&BigFloat::from_u32(2 * j + 1, prec), prec, RM)
            .div(&BigFloat::from_u32(4 * p, prec), prec, RM);
        let t = angle.tan(prec, RM, &mut cc);
        let root = t.mul(&t, prec, RM).neg();
        let lo = root.mul(&one.add(&eps, prec, RM), prec, RM);
        let hi = root.mul(&one.sub(&eps, prec, RM), prec, RM);
        let (a, b) = (eval_big(&f, &lo, prec, &mut cc), eval_big(&f, &hi, prec, &mut cc));
        if a.is_negative() != b.is_negative() && !a.is_zero() && !b.is_zero() {
            bracketed += 1;
        }
    }
    RootsReport {
        p,
        negative_real_roots: sturm_negative_roots(&f),
        bracketed_roots: bracketed,
        abs_squared_positive: p_poly_abs_squared(p).terms().values().all(|c| c.is_positive()),
    }
}

pub fn p_poly_roots_check(p: u32) -> bool {
    p_poly_roots_report(p).holds()
}

/// Signs of the six eigenvalues 1, 4, 2, 12, -2 + sqrt 5, -2 - sqrt 5 of the
/// order-8 binary dihedral block form, certified exactly.
pub fn lambda2_eigenvalue_signs() -> Result<Vec<i8>> {
    let r5 = sqrt5();
    let vals = [
        int(1),
        int(4),
        int(2),
        int(12),
        &int(-2) + &r5,
        &int(-2) - &r5,
    ];
    vals.iter().map(|v| v.sign()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub p: u32,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_plus")]
    pub n_plus: usize,
    #[serde(rename = "N_minus")]
    pub n_minus: usize,
    pub ratio: String,
}

impl FamilyRow {
    pub fn from_pair(p: u32, s: SignaturePair) -> Self {
        let ratio = match s.ratio() {
            Ok(r) => format!("{}/{}", r.numer(), r.denom()),
            Err(_) => "undefined".into(),
        };
        FamilyRow {
            p,
            n: s.total(),
            n_plus: s.n_plus,
            n_minus: s.n_minus,
            ratio,
        }
    }
}

/// Rows as CSV with header p,N,N_plus,N_minus,ratio.
pub fn write_family_csv<W: Write>(rows: &[FamilyRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests;

//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is stored as integer numerators over the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)` together with one positive common
//! denominator. Coordinates are always reduced modulo the n-th cyclotomic
//! polynomial and the fraction is kept in lowest terms, so two elements of
//! the same order are equal exactly when their stored data is identical.

mod field;
pub mod interval;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use field::{cyclotomic_poly, euler_phi};
pub use interval::Interval;

const DEFAULT_PRECISION_CAP: u32 = 65536;
const START_PRECISION: u32 = 64;

/// Hard cap on the number of bits used by sign certification.
///
/// Read once from `SIG_MAX_PRECISION_BITS`; falls back to 65536.
pub fn precision_cap() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("SIG_MAX_PRECISION_BITS")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&v| v >= START_PRECISION)
            .unwrap_or(DEFAULT_PRECISION_CAP)
    })
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(order: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut c = Cyclotomic { order, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in &mut self.num {
                *x = -&*x;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            for x in &mut self.num {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    /// Build from raw numerators over the power basis and a nonzero denominator.
    pub(crate) fn from_raw(order: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        assert_eq!(num.len(), euler_phi(order));
        Self::from_parts(order, num, den)
    }

    pub fn zero(order: u32) -> Self {
        let phi = euler_phi(order);
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, BigInt::one())
    }

    pub fn from_integer(order: u32, v: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(order);
        c.num[0] = v.into();
        c
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_integer(1, v)
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        let mut c = Self::zero(order);
        c.num[0] = r.numer().clone();
        c.den = r.denom().clone();
        c.normalize();
        c
    }

    /// zeta_n^k in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field::field(n);
        let num = f.power(k).iter().map(|&v| BigInt::from(v)).collect();
        Cyclotomic {
            order: n,
            num,
            den: BigInt::one(),
        }
    }

    /// Build `sum_k c_k zeta_n^k` from arbitrary exponents.
    pub fn from_coords(n: u32, coords: &[(i64, BigRational)]) -> Self {
        let f = field::field(n);
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, r) in coords {
            let scale = r.numer() * (&den / r.denom());
            for (slot, &p) in num.iter_mut().zip(f.power(*k)) {
                if p != 0 {
                    *slot += &scale * p;
                }
            }
        }
        Self::from_parts(n, num, den)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Integer numerators over the power basis.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Nonzero power-basis coordinates as reduced rationals, sorted by exponent.
    pub fn coords(&self) -> Vec<(usize, BigRational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, BigRational::new(x.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.den.is_one() && self.num[0].is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// Same element viewed in Q(zeta_m).
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order != 0 {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: m,
            });
        }
        let step = (m / self.order) as i64;
        let f = field::field(m);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(f.power(k as i64 * step)) {
                if p != 0 {
                    *slot += x * p;
                }
            }
        }
        Ok(Cyclotomic {
            order: m,
            num,
            den: self.den.clone(),
        })
    }

    /// Express the element in the subfield Q(zeta_m), m | order.
    ///
    /// Returns `Ok(None)` when the element does not lie in that subfield.
    pub fn demote(&self, m: u32) -> Result<Option<Self>> {
        if m == self.order {
            return Ok(Some(self.clone()));
        }
        if self.order % m != 0 {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: m,
            });
        }
        if self.is_rational() {
            return Ok(Some(Cyclotomic::from_parts(
                m,
                {
                    let mut v = vec![BigInt::zero(); euler_phi(m)];
                    v[0] = self.num[0].clone();
                    v
                },
                self.den.clone(),
            )));
        }
        let step = (self.order / m) as i64;
        let big = field::field(self.order);
        let phi_m = euler_phi(m);
        // columns: zeta_m^j written in Q(zeta_n)
        let cols: Vec<&[i64]> = (0..phi_m).map(|j| big.power(j as i64 * step)).collect();
        let rows = big.phi;
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut row: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::from_integer(BigInt::from(c[i])))
                    .collect();
                row.push(BigRational::from_integer(self.num[i].clone()));
                row
            })
            .collect();
        let solution = match solve_linear(&mut a, phi_m) {
            Some(s) => s,
            None => return Ok(None),
        };
        let den = solution
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = solution
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        Ok(Some(Cyclotomic::from_parts(m, num, den * &self.den)))
    }

    /// Smallest order m dividing the current one whose field contains the element.
    pub fn minimal_order(&self) -> Self {
        if self.is_rational() {
            return self.demote(1).ok().flatten().expect("rationals demote");
        }
        let n = self.order;
        let mut divisors: Vec<u32> = (1..n).filter(|d| n % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if let Ok(Some(c)) = self.demote(d) {
                return c;
            }
        }
        self.clone()
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let m = self.order.lcm(&other.order);
        (
            self.promote(m).expect("lcm is a multiple"),
            other.promote(m).expect("lcm is a multiple"),
        )
    }

    fn add_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Self::from_parts(self.order, num, self.den.clone());
        }
        let l = self.den.lcm(&other.den);
        let sa = &l / &self.den;
        let sb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &sa + b * &sb)
            .collect();
        Self::from_parts(self.order, num, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        if self.is_rational() {
            return other.scale(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale(&other.num[0], &other.den);
        }
        let f = field::field(self.order);
        let phi = f.phi;
        let mut wide = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = wide[..phi].to_vec();
        for (k, c) in wide.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(f.power(k as i64)) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Self::from_parts(self.order, num, &self.den * &other.den)
    }

    fn scale(&self, n: &BigInt, d: &BigInt) -> Self {
        let num = self.num.iter().map(|x| x * n).collect();
        Self::from_parts(self.order, num, &self.den * d)
    }

    /// Multiply by a rational number.
    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(r.numer(), r.denom())
    }

    /// Multiply by zeta_n^k where n is the element's order.
    pub fn mul_root(&self, k: i64) -> Self {
        self.mul_same(&Self::root_of_unity(self.order, k))
    }

    pub fn try_add(&self, other: &Self) -> Self {
        if self.order == other.order {
            self.add_same(other)
        } else {
            let (a, b) = self.unify(other);
            a.add_same(&b)
        }
    }

    pub fn try_mul(&self, other: &Self) -> Self {
        if self.order == other.order {
            self.mul_same(other)
        } else {
            let (a, b) = self.unify(other);
            a.mul_same(&b)
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        if self.is_rational() {
            let mut v = vec![BigInt::zero(); self.num.len()];
            v[0] = self.den.clone();
            return Ok(Self::from_parts(self.order, v, self.num[0].clone()));
        }
        // Solve (num) * x = 1 with the multiplication-by-num matrix.
        let f = field::field(self.order);
        let phi = f.phi;
        let numer_elt = Cyclotomic {
            order: self.order,
            num: self.num.clone(),
            den: BigInt::one(),
        };
        let cols: Vec<Cyclotomic> = (0..phi as i64)
            .map(|j| numer_elt.mul_root(j))
            .collect();
        let mut a: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::new(c.num[i].clone(), c.den.clone()))
                    .collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        let sol = solve_linear(&mut a, phi).expect("nonzero field element is invertible");
        let den = sol.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = sol
            .iter()
            .map(|r| r.numer() * (&den / r.denom()) * &self.den)
            .collect();
        Ok(Self::from_parts(self.order, num, den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.try_mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_same(&b);
            }
        }
        Ok(acc)
    }

    /// Complex conjugate: zeta^k -> zeta^(n-k).
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let f = field::field(self.order);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(f.power(-(k as i64))) {
                if p != 0 {
                    *slot += x * p;
                }
            }
        }
        Cyclotomic {
            order: self.order,
            num,
            den: self.den.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || self.conj().num == self.num
    }

    /// `(a + conj a) / 2`.
    pub fn real_part(&self) -> Self {
        let s = self.add_same(&self.conj());
        s.scale(&BigInt::one(), &BigInt::from(2))
    }

    /// Enclosure of the real part at the given precision.
    pub fn real_interval(&self, prec: u32) -> Interval {
        let table = interval::cos_table(self.order, prec);
        let mut acc = Interval::zero(prec);
        for (k, x) in self.num.iter().enumerate() {
            if !x.is_zero() {
                acc = acc.add(&table[k].mul_int(x));
            }
        }
        acc.div_int(&self.den)
    }

    /// Enclosure of the imaginary part at the given precision.
    pub fn imag_interval(&self, prec: u32) -> Interval {
        let mut acc = Interval::zero(prec);
        for (k, x) in self.num.iter().enumerate() {
            if !x.is_zero() {
                let s = interval::sin_2pi_frac(k as i64, self.order, prec);
                acc = acc.add(&s.mul_int(x));
            }
        }
        acc.div_int(&self.den)
    }

    /// Certified sign of a real element.
    pub fn sign(&self) -> Result<i8> {
        self.sign_with_cap(precision_cap())
    }

    pub fn sign_with_cap(&self, cap: u32) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(if self.num[0].is_positive() { 1 } else { -1 });
        }
        let mut prec = START_PRECISION;
        loop {
            if let Some(s) = self.real_interval(prec).certain_sign() {
                return Ok(s);
            }
            if prec >= cap {
                return Err(Error::PrecisionExceeded(cap));
            }
            prec = (prec * 2).min(cap);
        }
    }

    /// Rough log2 of |Re(a)|, from a 64-bit enclosure; `None` if it straddles zero.
    pub fn approx_log2_abs_real(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let iv = self.real_interval(START_PRECISION);
        if iv.contains_zero() {
            return None;
        }
        iv.midpoint_f64_log2().map(|(l, _)| l)
    }

    /// Double-precision approximation `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.real_interval(START_PRECISION).to_f64(),
            self.imag_interval(START_PRECISION).to_f64(),
        )
    }
}

/// Largest |coordinate| of any reduced power zeta_n^k.
pub(crate) fn reduction_bound(n: u32) -> i64 {
    let f = field::field(n);
    f.powers
        .iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or(1)
}

/// Gaussian elimination on an augmented matrix with `ncols` unknowns.
/// Returns `None` when the system is inconsistent.
fn solve_linear(a: &mut [Vec<BigRational>], ncols: usize) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(ncols);
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=ncols {
                    let v = &factor * &a[pivot_row][c];
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = self.unify(other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(&-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, r) in self.coords() {
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}^{}", self.order, k)?,
                (_, false) => write!(f, "{a}*z{}^{}", self.order, k)?,
            }
        }
        Ok(())
    }
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<(usize, String)> = self
            .coords()
            .into_iter()
            .map(|(k, r)| (k, rational_to_string(&r)))
            .collect();
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RawCyclotomic {
    order: u32,
    coords: Vec<(i64, RawRational)>,
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCyclotomic::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(de::Error::custom("cyclotomic order must be positive"));
        }
        let mut coords = Vec::with_capacity(raw.coords.len());
        for (k, v) in raw.coords {
            let r = match v {
                RawRational::Int(i) => BigRational::from_integer(i.into()),
                RawRational::Text(s) => parse_rational(&s).map_err(de::Error::custom)?,
            };
            coords.push((k, r));
        }
        Ok(Cyclotomic::from_coords(raw.order, &coords))
    }
}

/// Exact square root of 5 in Q(zeta_5): 1 + 2(zeta_5 + zeta_5^4).
pub fn sqrt5() -> Cyclotomic {
    let z = Cyclotomic::root_of_unity(5, 1);
    let s = &z + &Cyclotomic::root_of_unity(5, 4);
    &Cyclotomic::one(5) + &(&s + &s)
}

/// 1/sqrt(2) = (zeta_8 + zeta_8^-1) / 2.
pub fn inv_sqrt2() -> Cyclotomic {
    let s = &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, -1);
    s.scale_rational(&BigRational::new(1.into(), 2.into()))
}

impl Cyclotomic {
    /// Convenience for tests and constructors: `n/d` as an element of order 1.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(1, &BigRational::new(n.into(), d.into()))
    }

    /// Approximate value of the real part as f64; mainly for diagnostics.
    pub fn approx_real(&self) -> f64 {
        self.real_interval(START_PRECISION).to_f64()
    }

    /// Integer value if the element is a rational integer small enough for i64.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }
}

#[cfg(test)]
mod tests;

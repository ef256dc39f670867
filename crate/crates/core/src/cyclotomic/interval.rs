//! Dyadic interval arithmetic with outward rounding.
//!
//! An [`Interval`] at precision `p` is the closed set `[lo / 2^p, hi / 2^p]`.
//! Every operation rounds its endpoints away from the true value, so the
//! result always encloses the exact real number it approximates.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_shr(x: &BigInt, bits: u32) -> BigInt {
    // BigInt >> rounds toward negative infinity
    x >> bits
}

fn ceil_shr(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits)
}

impl Interval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn point(v: BigInt, prec: u32) -> Self {
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::point(BigInt::one() << prec, prec)
    }

    pub fn from_integer(v: &BigInt, prec: u32) -> Self {
        Self::point(v << prec, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let (lo, hi) = div_floor_ceil(&scaled, r.denom());
        Interval { lo, hi, prec }
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Width in units of 2^-prec.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(±1)` when the interval excludes zero.
    pub fn certain_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn midpoint_f64_log2(&self) -> Option<(f64, bool)> {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        if mid.is_zero() {
            return None;
        }
        Some((log2_abs(&mid) - self.prec as f64, mid.is_negative()))
    }

    pub fn to_f64(&self) -> f64 {
        match self.midpoint_f64_log2() {
            None => 0.0,
            Some((l, true)) => -l.exp2(),
            Some((l, false)) => l.exp2(),
        }
    }

    fn same_prec(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "interval precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_prec(other);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_prec(other);
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = c.iter().min().expect("nonempty");
        let max = c.iter().max().expect("nonempty");
        Interval {
            lo: floor_shr(min, self.prec),
            hi: ceil_shr(max, self.prec),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "interval division by zero");
        let (a_lo, a_hi) = div_floor_ceil(&self.lo, d);
        let (b_lo, b_hi) = div_floor_ceil(&self.hi, d);
        Interval {
            lo: a_lo.min(b_lo),
            hi: a_hi.max(b_hi),
            prec: self.prec,
        }
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let scale = BigInt::one() << (2 * self.prec);
        let (l0, h0) = div_floor_ceil(&scale, &self.hi);
        let (l1, h1) = div_floor_ceil(&scale, &self.lo);
        Some(Interval {
            lo: l0.min(l1),
            hi: h0.max(h1),
            prec: self.prec,
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    /// Widen by `ulps` units of 2^-prec in each direction.
    pub fn widen(&self, ulps: &BigInt) -> Self {
        Interval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            prec: self.prec,
        }
    }

    /// Same enclosure at a lower precision.
    pub fn coarsen(&self, prec: u32) -> Self {
        assert!(prec <= self.prec);
        let shift = self.prec - prec;
        Interval {
            lo: floor_shr(&self.lo, shift),
            hi: ceil_shr(&self.hi, shift),
            prec,
        }
    }
}

fn div_floor_ceil(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        (q.clone(), q)
    } else {
        let c = &q + 1;
        (q, c)
    }
}

/// Approximate log2 |x| for a nonzero integer.
pub(crate) fn log2_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 60 {
        let v: i64 = x.try_into().expect("fits");
        return (v.unsigned_abs() as f64).log2();
    }
    let shift = bits - 60;
    let top: BigInt = x.abs() >> shift;
    let v: i64 = (&top).try_into().expect("fits");
    (v as f64).log2() + shift as f64
}

fn atan_inv(m: u32, prec: u32) -> Interval {
    // sum_i (-1)^i / ((2i+1) m^(2i+1)), alternating and decreasing
    let one = BigInt::one() << prec;
    let m_big = BigInt::from(m);
    let m2 = &m_big * &m_big;
    let mut power = m_big.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        let d = &power * BigInt::from(2 * i + 1);
        let (tl, th) = div_floor_ceil(&one, &d);
        if th <= BigInt::one() {
            // remainder bounded by this term, at most one ulp
            lo -= 1;
            hi += 1;
            break;
        }
        if i % 2 == 0 {
            lo += &tl;
            hi += &th;
        } else {
            lo -= &th;
            hi -= &tl;
        }
        power *= &m2;
        i += 1;
    }
    Interval { lo, hi, prec }
}

/// Enclosure of pi at the given precision (Machin's formula).
pub fn pi(prec: u32) -> Interval {
    static CACHE: OnceLock<RwLock<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("pi cache poisoned").get(&prec) {
        return v.clone();
    }
    let guard = 16;
    let w = prec + guard;
    let a = atan_inv(5, w).mul_int(&BigInt::from(16));
    let b = atan_inv(239, w).mul_int(&BigInt::from(4));
    let v = a.sub(&b).coarsen(prec);
    cache
        .write()
        .expect("pi cache poisoned")
        .insert(prec, v.clone());
    v
}

/// cos(x) for an enclosure of x with 0 <= x <= 2.
fn cos_small(x: &Interval) -> Interval {
    let prec = x.prec;
    let x2 = x.mul(x);
    let mut term = Interval::one(prec);
    let mut sum = Interval::one(prec);
    let mut i: u64 = 1;
    let tiny = BigInt::from(4);
    loop {
        term = term
            .mul(&x2)
            .div_int(&BigInt::from((2 * i - 1) * (2 * i)));
        if term.hi <= tiny {
            // Lagrange remainder is bounded by the first omitted term
            sum = sum.widen(&term.hi);
            break;
        }
        if i % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
        i += 1;
    }
    sum
}

/// Enclosure of cos(2 pi k / n) at the given precision.
pub fn cos_2pi_frac(k: i64, n: u32, prec: u32) -> Interval {
    let guard = 24;
    let w = prec + guard;
    let n_i = n as i64;
    let mut k = k.rem_euclid(n_i);
    // cos(2 pi k/n) = cos(2 pi (n-k)/n): fold into [0, pi]
    if 2 * k > n_i {
        k = n_i - k;
    }
    // cos(pi - x) = -cos(x): fold into [0, pi/2]
    let (num, negate) = if 4 * k > n_i {
        (n_i - 2 * k, true)
    } else {
        (2 * k, false)
    };
    let x = pi(w)
        .mul_int(&BigInt::from(num))
        .div_int(&BigInt::from(n_i));
    let v = cos_small(&x);
    let v = if negate { v.neg() } else { v };
    v.coarsen(prec)
}

/// Enclosure of sin(2 pi k / n).
pub fn sin_2pi_frac(k: i64, n: u32, prec: u32) -> Interval {
    // sin(2 pi k/n) = cos(2 pi (n - 4k) / (4n))
    let n4 = 4 * n as i64;
    cos_2pi_frac(n as i64 - 4 * k, n4 as u32, prec)
}

/// Cached table of cos(2 pi k / n) for k in 0..n.
pub(crate) fn cos_table(n: u32, prec: u32) -> Arc<Vec<Interval>> {
    type Table = HashMap<(u32, u32), Arc<Vec<Interval>>>;
    static CACHE: OnceLock<RwLock<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("cos cache poisoned").get(&(n, prec)) {
        return Arc::clone(v);
    }
    let table: Vec<Interval> = (0..n as i64).map(|k| cos_2pi_frac(k, n, prec)).collect();
    let table = Arc::new(table);
    let mut w = cache.write().expect("cos cache poisoned");
    Arc::clone(w.entry((n, prec)).or_insert(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encloses(iv: &Interval, v: f64) -> bool {
        let lo = iv.lo_rational();
        let hi = iv.hi_rational();
        let x = BigRational::from_float(v).unwrap();
        // allow a 1e-15 margin for the f64 reference itself
        let eps = BigRational::from_float(1e-15).unwrap();
        lo - &eps <= x && x <= hi + eps
    }

    #[test]
    fn pi_is_enclosed_and_tight() {
        let p = pi(128);
        assert!(encloses(&p, std::f64::consts::PI));
        assert!(p.width_ulps() <= BigInt::from(4));
    }

    #[test]
    fn cosines_match_f64() {
        for n in [1u32, 2, 3, 5, 7, 8, 10, 12, 40] {
            for k in 0..n as i64 {
                let iv = cos_2pi_frac(k, n, 80);
                let v = (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
                assert!(encloses(&iv, v), "cos(2pi {k}/{n})");
                assert!(iv.width_ulps() < BigInt::from(64));
                let s = sin_2pi_frac(k, n, 80);
                let sv = (2.0 * std::f64::consts::PI * k as f64 / n as f64).sin();
                assert!(encloses(&s, sv), "sin(2pi {k}/{n})");
            }
        }
    }

    #[test]
    fn outward_rounding_of_products() {
        let third = Interval::from_rational(&BigRational::new(1.into(), 3.into()), 10);
        let three = Interval::from_integer(&BigInt::from(3), 10);
        let one = third.mul(&three);
        assert!(one.lo_rational() <= BigRational::one());
        assert!(one.hi_rational() >= BigRational::one());
    }

    #[test]
    fn reciprocal_encloses() {
        let x = Interval::from_rational(&BigRational::new(7.into(), 3.into()), 40);
        let r = x.recip().unwrap();
        let exact = BigRational::new(3.into(), 7.into());
        assert!(r.lo_rational() <= exact && exact <= r.hi_rational());
        assert!(Interval::zero(10).recip().is_none());
    }
}

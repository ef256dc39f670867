//! Per-order field data: the cyclotomic polynomial and the reduced powers of
//! the generator. Shared read-only through a process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub(crate) struct FieldData {
    pub n: u32,
    pub phi: usize,
    /// `powers[j]` holds zeta^j reduced modulo the n-th cyclotomic polynomial,
    /// as integer coordinates over 1, zeta, ..., zeta^(phi-1).
    pub powers: Vec<Vec<i64>>,
}

impl FieldData {
    fn build(n: u32) -> Self {
        let modulus = cyclotomic_poly(n);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by zeta: shift up, then fold the overflow coefficient
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in modulus[..phi].iter().enumerate() {
                    cur[i] -= top * c;
                }
            }
        }
        FieldData { n, phi, powers }
    }

    /// zeta^k reduced, for any integer k.
    pub fn power(&self, k: i64) -> &[i64] {
        let idx = k.rem_euclid(self.n as i64) as usize;
        &self.powers[idx]
    }
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn field(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return Arc::clone(f);
    }
    let built = Arc::new(FieldData::build(n));
    let mut w = cache().write().expect("field cache poisoned");
    Arc::clone(w.entry(n).or_insert(built))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

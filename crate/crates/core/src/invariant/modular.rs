//! Multi-modular expansion of `prod_g (1 - <g z, z>)`.
//!
//! Every factor has bidegree (1, 1), so the degree-d part of the product is a
//! dense (d+1) x (d+1) array indexed by the z1 and conj(z1) exponents. After
//! clearing denominators with L (the lcm of all entry denominators) the
//! coefficients are cyclotomic integers. They are computed modulo several
//! primes p = 1 mod N, where the N-th cyclotomic polynomial splits and each
//! field element becomes phi(N) independent residues, then reconstructed by
//! CRT. The number of primes comes from an L1 bound on the integer
//! coordinates, so the reconstruction is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::{euler_phi, reduction_bound};
use crate::group::FiniteMatrixGroup;

/// Offset of the degree-d block in the packed coefficient array.
fn offset(d: usize) -> usize {
    d * (d + 1) * (2 * d + 1) / 6
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

/// Primes below 2^31 congruent to 1 mod n, largest first.
fn split_primes(n: u64) -> impl Iterator<Item = u64> {
    let top = (1u64 << 31) - 1;
    let start = top - (top - 1) % n;
    (0..)
        .map(move |i| start - i * n)
        .take_while(move |&p| p > n)
        .filter(|&p| is_prime(p))
}

struct PrimeSetup {
    p: u64,
    /// Images of zeta_N, one per embedding.
    roots: Vec<u64>,
    /// Inverse Vandermonde on `roots`: values -> power-basis coordinates.
    vinv: Vec<Vec<u64>>,
}

impl PrimeSetup {
    fn new(p: u64, n: u32) -> Self {
        let phi = euler_phi(n);
        let omega = pow_mod(primitive_root(p), (p - 1) / n as u64, p);
        let roots: Vec<u64> = (0..n.max(1))
            .filter(|&t| n == 1 || t.gcd(&n) == 1)
            .map(|t| pow_mod(omega, t as u64, p))
            .collect();
        debug_assert_eq!(roots.len(), phi);
        let mut a: Vec<Vec<u64>> = roots
            .iter()
            .enumerate()
            .map(|(r, &x)| {
                let mut row: Vec<u64> = (0..phi as u64).map(|i| pow_mod(x, i, p)).collect();
                row.extend((0..phi).map(|c| u64::from(c == r)));
                row
            })
            .collect();
        // Gauss-Jordan mod p
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| a[r][col] != 0)
                .expect("distinct roots give an invertible Vandermonde");
            a.swap(col, piv);
            let inv = inv_mod(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for r in 0..phi {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..2 * phi {
                        let v = mul_mod(f, a[col][c], p);
                        a[r][c] = (a[r][c] + p - v) % p;
                    }
                }
            }
        }
        let vinv = a.into_iter().map(|row| row[phi..].to_vec()).collect();
        PrimeSetup { p, roots, vinv }
    }

    fn eval(&self, coords: &[BigInt], root: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        let mut xp = 1u64;
        for c in coords {
            let r = c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
            acc = (acc + mul_mod(r, xp, p)) % p;
            xp = mul_mod(xp, root, p);
        }
        acc
    }
}

/// Integer-scaled group data: `scaled[g][j][k]` holds the coordinates of L * g_jk.
pub(crate) struct ScaledGroup {
    pub order: u32,
    pub scale: BigInt,
    pub scaled: Vec<[[Vec<BigInt>; 2]; 2]>,
}

impl ScaledGroup {
    pub fn new(g: &FiniteMatrixGroup) -> Self {
        let n = g.field_order();
        let mats: Vec<_> = g
            .elements()
            .iter()
            .map(|m| m.promote(n).expect("field order divides"))
            .collect();
        let scale = mats
            .iter()
            .flat_map(|m| m.entries.iter().flatten())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
        let scaled = mats
            .iter()
            .map(|m| {
                let cell = |j: usize, k: usize| {
                    let c = &m.entries[j][k];
                    let f = &scale / c.denominator();
                    c.numerators().iter().map(|x| x * &f).collect::<Vec<_>>()
                };
                [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
            })
            .collect();
        ScaledGroup {
            order: n,
            scale,
            scaled,
        }
    }

    /// Bound on |coordinate| of any coefficient of the scaled product.
    fn coefficient_bound(&self) -> BigInt {
        let u = self
            .scaled
            .iter()
            .map(|m| {
                m.iter()
                    .flatten()
                    .flatten()
                    .fold(BigInt::zero(), |acc, x| acc + x.abs())
            })
            .max()
            .unwrap_or_else(BigInt::zero);
        let n = self.scaled.len();
        // binomial(n, d) * u^d, maximized over d
        let mut best = BigInt::one();
        let mut binom = BigInt::one();
        let mut upow = BigInt::one();
        for d in 1..=n {
            binom = binom * BigInt::from(n - d + 1) / BigInt::from(d);
            upow *= &u;
            let b = &binom * &upow;
            if b > best {
                best = b;
            }
        }
        best * BigInt::from(reduction_bound(self.order))
    }
}

/// Fold `prod (1 - u_g)` modulo one prime for one embedding of zeta.
fn fold_mod(entries: &[[[u64; 2]; 2]], p: u64, out: &mut [u64]) {
    let n = entries.len();
    out.iter_mut().for_each(|x| *x = 0);
    out[0] = 1;
    for (k, m) in entries.iter().enumerate() {
        let top = k + 1;
        for d in (1..=top.min(n)).rev() {
            let (lo, hi) = out.split_at_mut(offset(d));
            let prev = &lo[offset(d - 1)..];
            let cur = &mut hi[..(d + 1) * (d + 1)];
            let w = d; // width of the degree d-1 block
            for a1 in 0..=d {
                for b1 in 0..=d {
                    // u = sum_{j,k} m_jk z_k conj(z_j); index 0 means z1 / conj(z1)
                    let mut s = 0u64;
                    if a1 > 0 && b1 > 0 {
                        s += m[0][0] * prev[(a1 - 1) * w + (b1 - 1)];
                    }
                    if a1 < d && b1 > 0 {
                        s += m[0][1] * prev[a1 * w + (b1 - 1)];
                    }
                    if a1 > 0 && b1 < d {
                        s += m[1][0] * prev[(a1 - 1) * w + b1];
                    }
                    if a1 < d && b1 < d {
                        s += m[1][1] * prev[a1 * w + b1];
                    }
                    let slot = &mut cur[a1 * (d + 1) + b1];
                    *slot = (*slot + p - s % p) % p;
                }
            }
        }
    }
}

/// Dense coefficients of `prod (1 - u_g)`: per degree d, per (a1, b1), the
/// integer coordinates of `L^d` times the coefficient.
pub(crate) struct DenseProduct {
    pub order: u32,
    pub scale: BigInt,
    pub group_order: usize,
    /// `coords[slot]` for slot = offset(d) + a1 (d+1) + b1; `None` when zero.
    pub coords: Vec<Option<Vec<BigInt>>>,
}

impl DenseProduct {
    pub fn slot(d: usize, a1: usize, b1: usize) -> usize {
        offset(d) + a1 * (d + 1) + b1
    }

    pub fn total_slots(n: usize) -> usize {
        offset(n + 1)
    }
}

pub(crate) fn expand(g: &FiniteMatrixGroup) -> DenseProduct {
    let sg = ScaledGroup::new(g);
    let n = sg.scaled.len();
    let phi = euler_phi(sg.order);
    let bound = sg.coefficient_bound();
    let needed = 2 * &bound + 1;
    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    for p in split_primes(sg.order as u64) {
        primes.push(p);
        modulus *= p;
        if modulus > needed {
            break;
        }
    }
    assert!(modulus > needed, "ran out of split primes");
    let slots = DenseProduct::total_slots(n);

    // residues[prime][slot * phi + coord]
    let residues: Vec<Vec<u32>> = primes
        .par_iter()
        .map(|&p| {
            let setup = PrimeSetup::new(p, sg.order);
            let mut values = vec![0u32; slots * phi];
            let mut work = vec![0u64; slots];
            for (t, &root) in setup.roots.iter().enumerate() {
                let entries: Vec<[[u64; 2]; 2]> = sg
                    .scaled
                    .iter()
                    .map(|m| {
                        let e = |j: usize, k: usize| setup.eval(&m[j][k], root);
                        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
                    })
                    .collect();
                fold_mod(&entries, p, &mut work);
                for (s, &v) in work.iter().enumerate() {
                    values[s * phi + t] = v as u32;
                }
            }
            // evaluations -> coordinates
            let mut buf = vec![0u64; phi];
            for s in 0..slots {
                let row = &mut values[s * phi..(s + 1) * phi];
                if row.iter().all(|&v| v == 0) {
                    continue;
                }
                for (i, out) in buf.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (t, &v) in row.iter().enumerate() {
                        acc = (acc + mul_mod(setup.vinv[i][t], v as u64, p)) % p;
                    }
                    *out = acc;
                }
                for (r, &b) in row.iter_mut().zip(&buf) {
                    *r = b as u32;
                }
            }
            values
        })
        .collect();

    let crt = Crt::new(&primes);
    let mut coords = Vec::with_capacity(slots);
    let mut rs = vec![0u64; primes.len()];
    for s in 0..slots {
        let mut any = false;
        let mut v = Vec::with_capacity(phi);
        for i in 0..phi {
            for (pi, res) in residues.iter().enumerate() {
                rs[pi] = res[s * phi + i] as u64;
            }
            let x = crt.reconstruct(&rs);
            any |= !x.is_zero();
            v.push(x);
        }
        coords.push(if any { Some(v) } else { None });
    }
    DenseProduct {
        order: sg.order,
        scale: sg.scale,
        group_order: n,
        coords,
    }
}

/// Garner reconstruction into the symmetric residue range.
struct Crt {
    primes: Vec<u64>,
    inv: Vec<Vec<u64>>,
    modulus: BigInt,
    half: BigInt,
}

impl Crt {
    fn new(primes: &[u64]) -> Self {
        let m = primes.len();
        let mut inv = vec![vec![0u64; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                inv[i][j] = inv_mod(primes[i] % primes[j], primes[j]);
            }
        }
        let modulus = primes.iter().fold(BigInt::one(), |acc, &p| acc * p);
        let half = &modulus >> 1u32;
        Crt {
            primes: primes.to_vec(),
            inv,
            modulus,
            half,
        }
    }

    fn reconstruct(&self, residues: &[u64]) -> BigInt {
        if residues.iter().all(|&r| r == 0) {
            return BigInt::zero();
        }
        let m = self.primes.len();
        let mut digits = vec![0u64; m];
        for j in 0..m {
            let pj = self.primes[j];
            let mut x = residues[j];
            for i in 0..j {
                x = mul_mod((x + pj - digits[i] % pj) % pj, self.inv[i][j], pj);
            }
            digits[j] = x;
        }
        let mut acc = BigInt::from(digits[m - 1]);
        for i in (0..m - 1).rev() {
            acc = acc * self.primes[i] + digits[i];
        }
        if acc > self.half {
            acc -= &self.modulus;
        }
        acc
    }
}

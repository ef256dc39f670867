//! Floating-point eigenvalue oracle. Advisory only: entries are rounded to
//! `precision` bits, the Hermitian block is realified to a symmetric matrix
//! of twice the size, and a cyclic Jacobi iteration finds its eigenvalues.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use super::{HermitianMatrix, Inertia};
use crate::cyclotomic::Cyclotomic;

pub const DEFAULT_NUMERIC_PRECISION: usize = 256;
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-30;

const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    p: usize,
    cc: Consts,
    cos: Vec<BigFloat>,
    sin: Vec<BigFloat>,
    order: u32,
}

impl Ctx {
    fn new(p: usize) -> Self {
        Ctx {
            p,
            cc: Consts::new().expect("astro-float constants"),
            cos: Vec::new(),
            sin: Vec::new(),
            order: 0,
        }
    }

    fn big(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    fn set_order(&mut self, n: u32) {
        if self.order == n {
            return;
        }
        let wp = self.p + 32;
        let two_pi = self
            .cc
            .pi(wp, RM)
            .mul(&BigFloat::from_u8(2, wp), wp, RM);
        self.cos.clear();
        self.sin.clear();
        for k in 0..n {
            let x = two_pi
                .mul(&BigFloat::from_u32(k, wp), wp, RM)
                .div(&BigFloat::from_u32(n, wp), wp, RM);
            self.cos.push(x.cos(self.p, RM, &mut self.cc));
            self.sin.push(x.sin(self.p, RM, &mut self.cc));
        }
        self.order = n;
    }

    /// (re, im) of a cyclotomic element.
    fn complex(&mut self, c: &Cyclotomic) -> (BigFloat, BigFloat) {
        let p = self.p;
        let mut re = BigFloat::from_u8(0, p);
        let mut im = BigFloat::from_u8(0, p);
        if c.is_zero() {
            return (re, im);
        }
        self.set_order(c.order());
        let den = self.big(&c.denominator().to_string());
        for (k, x) in c.numerators().iter().enumerate() {
            if x.sign() == num_bigint::Sign::NoSign {
                continue;
            }
            let v = self.big(&x.to_string());
            re = re.add(&v.mul(&self.cos[k], p, RM), p, RM);
            im = im.add(&v.mul(&self.sin[k], p, RM), p, RM);
        }
        (re.div(&den, p, RM), im.div(&den, p, RM))
    }
}

fn jacobi_eigenvalues(mut a: Vec<Vec<BigFloat>>, p: usize) -> Vec<BigFloat> {
    let n = a.len();
    let zero = BigFloat::from_u8(0, p);
    let one = BigFloat::from_u8(1, p);
    let two = BigFloat::from_u8(2, p);
    let frob = a
        .iter()
        .flatten()
        .fold(zero.clone(), |acc, x| acc.add(&x.mul(x, p, RM), p, RM));
    // stop when the off-diagonal mass is below 2^-(p-16) of the total
    let mut tol = frob.clone();
    tol.set_exponent(frob.exponent().unwrap_or(0) - (p as i32 - 16));
    for _sweep in 0..100 {
        let mut off = zero.clone();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.add(&a[i][j].mul(&a[i][j], p, RM), p, RM);
                }
            }
        }
        if off.is_zero() || off.cmp(&tol).is_some_and(|c| c <= 0) {
            break;
        }
        for i in 0..n {
            for j in i + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let theta = a[j][j]
                    .sub(&a[i][i], p, RM)
                    .div(&two.mul(&a[i][j], p, RM), p, RM);
                let root = theta.mul(&theta, p, RM).add(&one, p, RM).sqrt(p, RM);
                let mut t = one.div(&theta.abs().add(&root, p, RM), p, RM);
                if theta.is_negative() {
                    t = t.neg();
                }
                let c = one.div(&t.mul(&t, p, RM).add(&one, p, RM).sqrt(p, RM), p, RM);
                let s = t.mul(&c, p, RM);
                for k in 0..n {
                    let aki = a[k][i].clone();
                    let akj = a[k][j].clone();
                    a[k][i] = c.mul(&aki, p, RM).sub(&s.mul(&akj, p, RM), p, RM);
                    a[k][j] = s.mul(&aki, p, RM).add(&c.mul(&akj, p, RM), p, RM);
                }
                for k in 0..n {
                    let aik = a[i][k].clone();
                    let ajk = a[j][k].clone();
                    a[i][k] = c.mul(&aik, p, RM).sub(&s.mul(&ajk, p, RM), p, RM);
                    a[j][k] = s.mul(&aik, p, RM).add(&c.mul(&ajk, p, RM), p, RM);
                }
            }
        }
    }
    (0..n).map(|i| a[i][i].clone()).collect()
}

/// Eigenvalue sign counts of the rounded matrix; |lambda| <= threshold counts as zero.
pub fn inertia_numeric(m: &HermitianMatrix, precision: usize, zero_threshold: f64) -> Inertia {
    let p = precision.max(64);
    let mut ctx = Ctx::new(p);
    let thr = BigFloat::from_f64(zero_threshold.abs(), p);
    let mut out = Inertia::default();
    for block in m.blocks() {
        let n = block.len();
        let mut re = vec![vec![BigFloat::from_u8(0, p); n]; n];
        let mut im = vec![vec![BigFloat::from_u8(0, p); n]; n];
        let mut real = true;
        for i in 0..n {
            for j in 0..n {
                let (r, s) = ctx.complex(&block[i][j]);
                real &= s.is_zero() || block[i][j].is_real();
                re[i][j] = r;
                im[i][j] = s;
            }
        }
        // H = A + iB  ->  [[A, -B], [B, A]], whose spectrum is that of H doubled
        let (sym, mult) = if real {
            (re, 1)
        } else {
            let mut s = vec![vec![BigFloat::from_u8(0, p); 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    s[i][j] = re[i][j].clone();
                    s[i + n][j + n] = re[i][j].clone();
                    s[i][j + n] = im[i][j].neg();
                    s[i + n][j] = im[i][j].clone();
                }
            }
            (s, 2)
        };
        let eig = jacobi_eigenvalues(sym, p);
        let mut block_inertia = Inertia::default();
        for lambda in &eig {
            if lambda.abs().cmp(&thr).is_some_and(|c| c <= 0) {
                block_inertia.n_zero += 1;
            } else if lambda.is_positive() {
                block_inertia.n_plus += 1;
            } else {
                block_inertia.n_minus += 1;
            }
        }
        out.n_plus += block_inertia.n_plus / mult;
        out.n_minus += block_inertia.n_minus / mult;
        out.n_zero += block_inertia.n_zero / mult;
    }
    out
}

//! Verification sweeps over the theorems and identities, one id per sweep.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{alternating_sum, chern_classes, chern_report, orbit, sum_of_variables};
use crate::closedforms::{
    d_poly, d_signs_alternate, delta_e, delta_ratio, delta_signature_closed,
    lambda_signature_closed, p_poly_abs_squared, p_poly_roots_report, phi_delta_decomposed,
    phi_lambda_decomposed,
};
use crate::error::{Error, Result};
use crate::fpq::{
    cyclic_ratio, f_closed_pminus1, fpq, lww_sign, signature_cyclic, signature_pminus1_closed,
    t_closed, verify_exact_formula, weight, weight_census,
};
use crate::group::{binary_dihedral, binary_polyhedral, cyclic_gamma, dihedral, Polyhedral};
use crate::invariant::phi;
use crate::poly::MultiIndex;
use crate::signature::{
    coefficient_matrix, inertia_exact, inertia_numeric, rank_exact, signature_pair,
    SignaturePair, DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD,
};

pub const THEOREM_IDS: [&str; 10] = [
    "thm1.1",
    "thm1.2-limit",
    "thm1.3",
    "thm3.1",
    "lww",
    "census",
    "quaternion-decomp",
    "dihedral-decomp",
    "dk-signs",
    "chern",
];

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Overrides the sweep's default upper bound on p.
    pub p_max: Option<u32>,
    /// Include the icosahedral group where a sweep covers it.
    pub include_slow: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub counterexample: Option<String>,
    pub warnings: Vec<String>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run && self.counterexample.is_none()
    }
}

/// A case outcome: `None` on success, a description of the failure otherwise.
type Outcome = Option<String>;

struct Sweep {
    run: usize,
    passed: usize,
    counterexample: Option<String>,
    warnings: Vec<String>,
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            run: 0,
            passed: 0,
            counterexample: None,
            warnings: Vec::new(),
        }
    }

    fn record(&mut self, outcome: Outcome) {
        self.run += 1;
        match outcome {
            None => self.passed += 1,
            Some(msg) => {
                if self.counterexample.is_none() {
                    self.counterexample = Some(msg);
                }
            }
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record((!ok).then(what));
    }

    /// Runs cases in parallel and records them in input order.
    fn par_cases<T: Sync>(&mut self, cases: &[T], f: impl Fn(&T) -> Outcome + Sync + Send) {
        let outcomes: Vec<Outcome> = cases.par_iter().map(f).collect();
        for o in outcomes {
            self.record(o);
        }
    }
}

fn expect_pair(label: &str, got: Result<SignaturePair>, want: SignaturePair) -> Outcome {
    match got {
        Ok(s) if s == want => None,
        Ok(s) => Some(format!("{label}: S = {s:?}, expected {want:?}")),
        Err(e) => Some(format!("{label}: {e}")),
    }
}

fn err_text<T>(label: &str, r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{label}: {e}"))
}

/// Exact signature, rank and 256-bit oracle for one polyhedral group.
fn polyhedral_case(kind: Polyhedral, want: SignaturePair, rank: usize, numeric: bool) -> Outcome {
    let g = binary_polyhedral(kind);
    let m = coefficient_matrix(&phi(&g));
    let exact = match inertia_exact(&m) {
        Ok(i) => i,
        Err(e) => return Some(format!("{}: {e}", kind.label())),
    };
    if exact.pair() != want {
        return Some(format!("{}: S = {:?}, expected {want:?}", kind.label(), exact.pair()));
    }
    match rank_exact(&m) {
        Ok(r) if r == rank => {}
        Ok(r) => return Some(format!("{}: rank {r}, expected {rank}", kind.label())),
        Err(e) => return Some(format!("{}: {e}", kind.label())),
    }
    if numeric {
        let n = inertia_numeric(&m, DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD);
        if n != exact {
            return Some(format!("{}: numeric {n:?} vs exact {exact:?}", kind.label()));
        }
    }
    None
}

fn thm1_1(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(20);
    let ps: Vec<u32> = (2..=p_max).collect();
    sw.par_cases(&ps, |&p| {
        expect_pair(
            &format!("cyclic({p},{})", p - 1),
            signature_pair(&cyclic_gamma(p, p as i64 - 1)),
            signature_pminus1_closed(p),
        )
    });
    let ls: Vec<u32> = (2..=8).collect();
    sw.par_cases(&ls, |&p| {
        expect_pair(
            &format!("binary-dihedral({p})"),
            signature_pair(&binary_dihedral(p)),
            lambda_signature_closed(p),
        )
    });
    sw.record(polyhedral_case(Polyhedral::Tetrahedral, SignaturePair::new(9, 5), 14, true));
    sw.record(polyhedral_case(Polyhedral::Octahedral, SignaturePair::new(17, 9), 26, true));
    if opts.include_slow {
        sw.record(polyhedral_case(Polyhedral::Icosahedral, SignaturePair::new(40, 22), 62, false));
    } else {
        sw.warnings.push("icosahedral group skipped (use --include-slow)".into());
    }
}

fn thm1_2(sw: &mut Sweep) {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let listed = [r(1, 1), r(1, 1), r(5, 6), r(5, 6), r(4, 5), r(4, 5), r(11, 14), r(11, 14), r(7, 9)];
    for (i, want) in listed.iter().enumerate() {
        let q = i as u32 + 1;
        let got = t_closed(q);
        sw.check(&got == want, || format!("T({q}) = {got}, expected {want}"));
    }
    let mut paired = true;
    let mut monotone = true;
    for q in 1..10_000u32 {
        if q % 2 == 1 && t_closed(q) != t_closed(q + 1) {
            paired = false;
        }
        if t_closed(q + 1) > t_closed(q) {
            monotone = false;
        }
    }
    sw.check(paired, || "T(2r-1) != T(2r) for some q <= 10^4".into());
    sw.check(monotone, || "T is not non-increasing on q <= 10^4".into());
    let d = (t_closed(1_000_000) - r(3, 4)).abs();
    sw.check(d <= r(1, 100_000), || format!("|T(10^6) - 3/4| = {d}"));
    for q in [3i64, 4, 5] {
        for p in [100u32, 200, 400] {
            match cyclic_ratio(p, q) {
                Ok(l) => {
                    let dev = (l - t_closed(q as u32)).abs();
                    if dev > r(5, p as i64) {
                        sw.warnings.push(format!("|L(cyclic({p},{q})) - T({q})| = {dev} > 5/{p}"));
                    }
                }
                Err(e) => sw.warnings.push(format!("cyclic({p},{q}): {e}")),
            }
        }
    }
}

fn thm1_3(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(12);
    let ps: Vec<u32> = (3..=p_max).collect();
    sw.par_cases(&ps, |&p| {
        expect_pair(&format!("dihedral({p})"), signature_pair(&dihedral(p)), delta_signature_closed(p))
    });
    for p in 3..=200 {
        let s = delta_signature_closed(p);
        let ok = s.ratio().map(|l| l == delta_ratio(p)).unwrap_or(false);
        sw.check(ok, || format!("L(dihedral({p})) from the closed pair differs from the four-residue formula"));
    }
}

fn thm3_1(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(40);
    let ps: Vec<u32> = (2..=p_max).collect();
    sw.par_cases(&ps, |&p| {
        let f = match err_text(&format!("f({p},{})", p - 1), fpq(p, p as i64 - 1)) {
            Ok(f) => f,
            Err(e) => return Some(e),
        };
        if f != f_closed_pminus1(p) {
            return Some(format!("f({p},{}) = {f}, closed form {}", p - 1, f_closed_pminus1(p)));
        }
        if !verify_exact_formula(p) {
            return Some(format!("exact formula fails at p = {p}"));
        }
        expect_pair(
            &format!("cyclic({p},{})", p - 1),
            signature_cyclic(p, p as i64 - 1),
            signature_pminus1_closed(p),
        )
    });
}

fn lww(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(60);
    let cases: Vec<(u32, i64)> = (1..=p_max)
        .flat_map(|p| [2i64, 3, 4, 5, 7, 8].map(|q| (p, q)))
        .collect();
    sw.par_cases(&cases, |&(p, q)| {
        let f = match err_text(&format!("f({p},{q})"), fpq(p, q)) {
            Ok(f) => f,
            Err(e) => return Some(e),
        };
        for (&(r, s), c) in f.terms() {
            let Some(w) = weight(r, s, p, q) else {
                return Some(format!("f({p},{q}): x^{r}y^{s} has no weight"));
            };
            let sign = if c.is_positive() { 1 } else { -1 };
            if sign != lww_sign(r, s, w) {
                return Some(format!("f({p},{q}): x^{r}y^{s} has coefficient {c}, weight {w}"));
            }
        }
        None
    });
}

fn census(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(200);
    let cases: Vec<(u32, i64)> = (1..=p_max).flat_map(|p| (2..=12i64).map(move |q| (p, q))).collect();
    sw.par_cases(&cases, |&(p, q)| match weight_census(p, q) {
        Ok(rep) => {
            let v = rep.bound_violations();
            (!v.is_empty()).then(|| format!("({p},{q}): {}", v.join("; ")))
        }
        Err(e) => Some(format!("({p},{q}): {e}")),
    });
}

fn quaternion_decomp(sw: &mut Sweep, opts: &VerifyOptions) {
    let ps: Vec<u32> = (1..=opts.p_max.unwrap_or(6)).collect();
    sw.par_cases(&ps, |&p| match phi_lambda_decomposed(p) {
        Ok(d) => (d != phi(&binary_dihedral(p)))
            .then(|| format!("binary-dihedral({p}): decomposition differs from the expansion")),
        Err(e) => Some(format!("binary-dihedral({p}): {e}")),
    });
}

fn dihedral_decomp(sw: &mut Sweep, opts: &VerifyOptions) {
    let ps: Vec<u32> = (1..=opts.p_max.unwrap_or(10)).collect();
    sw.par_cases(&ps, |&p| match phi_delta_decomposed(p) {
        Ok(d) => (d != phi(&dihedral(p)))
            .then(|| format!("dihedral({p}): decomposition differs from the expansion")),
        Err(e) => Some(format!("dihedral({p}): {e}")),
    });
}

fn dk_signs(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(12);
    for p in 1..=p_max {
        match d_poly(p) {
            Ok(d) => sw.check(d_signs_alternate(&d, p), || format!("d_k signs do not alternate for p = {p}")),
            Err(e) => sw.record(Some(format!("d_poly({p}): {e}"))),
        }
    }
    for p in 1..=20u32 {
        let bad = (1..=2 * (p / 2)).find(|&k| !delta_e(p, k).is_positive());
        sw.check(bad.is_none(), || format!("E_{} <= 0 for p = {p}", bad.unwrap_or(0)));
    }
    for p in 1..=8u32 {
        let ok = p_poly_abs_squared(p).terms().values().all(|c| c.is_positive());
        sw.check(ok, || format!("|P(x+iy)|^2 has a non-positive coefficient for p = {p}"));
    }
    for p in 1..=p_max {
        let r = p_poly_roots_report(p);
        sw.check(r.holds(), || format!("{r:?}"));
    }
}

fn chern(sw: &mut Sweep, opts: &VerifyOptions) {
    let p_max = opts.p_max.unwrap_or(8);
    let cases: Vec<(u32, i64)> = (1..=p_max).flat_map(|p| (1..=p as i64).map(move |q| (p, q))).collect();
    sw.par_cases(&cases, |&(p, q)| {
        let g = cyclic_gamma(p, q);
        let r = chern_report(&g);
        if !r.multiset_holds {
            return Some(format!("cyclic({p},{q}): alternating sum differs from the polarized invariant"));
        }
        let sum = alternating_sum(&chern_classes(&orbit(&g, &sum_of_variables())));
        let f = match err_text(&format!("f({p},{q})"), fpq(p, q)) {
            Ok(f) => f,
            Err(e) => return Some(e),
        };
        let same = sum.len() == f.len()
            && f.terms().iter().all(|(&(r, s), c)| {
                sum.coeff(MultiIndex::new(r, s)).to_integer().as_ref() == Some(c)
            });
        (!same).then(|| format!("cyclic({p},{q}): restriction to (x, y) differs from f({p},{q})"))
    });
    for p in 2..=4 {
        let r = chern_report(&dihedral(p));
        if r.stabilizer_order > 1 && !r.set_holds {
            sw.warnings.push(format!(
                "dihedral({p}): stabilizer {} so only the multiset convention holds (multiset {})",
                r.stabilizer_order, r.multiset_holds
            ));
        }
    }
}

/// Run the sweep for `id`, one of [`THEOREM_IDS`].
pub fn verify(id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut sw = Sweep::new();
    match id {
        "thm1.1" => thm1_1(&mut sw, opts),
        "thm1.2-limit" => thm1_2(&mut sw),
        "thm1.3" => thm1_3(&mut sw, opts),
        "thm3.1" => thm3_1(&mut sw, opts),
        "lww" => lww(&mut sw, opts),
        "census" => census(&mut sw, opts),
        "quaternion-decomp" => quaternion_decomp(&mut sw, opts),
        "dihedral-decomp" => dihedral_decomp(&mut sw, opts),
        "dk-signs" => dk_signs(&mut sw, opts),
        "chern" => chern(&mut sw, opts),
        _ => {
            return Err(Error::Parse(format!(
                "unknown theorem id {id:?}; expected one of {}",
                THEOREM_IDS.join(", ")
            )))
        }
    }
    if sw.run.is_zero() {
        return Err(Error::Parse(format!("empty range for {id}")));
    }
    Ok(VerificationReport {
        theorem: id.to_string(),
        cases_run: sw.run,
        cases_passed: sw.passed,
        counterexample: sw.counterexample,
        warnings: sw.warnings,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let opts = VerifyOptions {
            p_max: Some(6),
            include_slow: false,
        };
        for id in ["thm3.1", "lww", "census", "quaternion-decomp", "dihedral-decomp", "dk-signs", "chern", "thm1.3"] {
            let r = verify(id, &opts).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.cases_run > 0);
        }
    }

    #[test]
    fn limit_sweep_has_no_warnings() {
        let r = verify("thm1.2-limit", &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn unknown_id_is_a_parse_error() {
        assert!(matches!(verify("thm9", &VerifyOptions::default()), Err(Error::Parse(_))));
    }

    #[test]
    fn empty_range_is_rejected() {
        let opts = VerifyOptions {
            p_max: Some(2),
            include_slow: false,
        };
        assert!(verify("thm1.3", &opts).is_ok());
        let opts = VerifyOptions {
            p_max: Some(0),
            include_slow: false,
        };
        assert!(verify("dihedral-decomp", &opts).is_err());
    }
}

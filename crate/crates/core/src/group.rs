//! Finite subgroups of U(2) with exact cyclotomic entries.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{inv_sqrt2, Cyclotomic};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 10_000;

/// A 2x2 matrix over a cyclotomic field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix2 {
    pub entries: [[Cyclotomic; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic) -> Self {
        Matrix2 {
            entries: [[a, b], [c, d]],
        }
    }

    pub fn identity() -> Self {
        Self::diag(Cyclotomic::from_i64(1), Cyclotomic::from_i64(1))
    }

    pub fn diag(a: Cyclotomic, d: Cyclotomic) -> Self {
        Self::new(a, Cyclotomic::from_i64(0), Cyclotomic::from_i64(0), d)
    }

    pub fn antidiag(b: Cyclotomic, c: Cyclotomic) -> Self {
        Self::new(Cyclotomic::from_i64(0), b, c, Cyclotomic::from_i64(0))
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = &self.entries;
        let f = &other.entries;
        let cell = |i: usize, j: usize| &(&e[i][0] * &f[0][j]) + &(&e[i][1] * &f[1][j]);
        Self::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }

    pub fn neg(&self) -> Self {
        let e = &self.entries;
        Self::new(-&e[0][0], -&e[0][1], -&e[1][0], -&e[1][1])
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let e = &self.entries;
        Self::new(c * &e[0][0], c * &e[0][1], c * &e[1][0], c * &e[1][1])
    }

    pub fn conj_transpose(&self) -> Self {
        let e = &self.entries;
        Self::new(e[0][0].conj(), e[1][0].conj(), e[0][1].conj(), e[1][1].conj())
    }

    pub fn det(&self) -> Cyclotomic {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn is_identity(&self) -> bool {
        let e = &self.entries;
        e[0][0].is_one() && e[1][1].is_one() && e[0][1].is_zero() && e[1][0].is_zero()
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conj_transpose()).is_identity()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[0][1].is_zero() && self.entries[1][0].is_zero()
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det().inv()?;
        let e = &self.entries;
        Ok(Self::new(&e[1][1] * &d, &(-&e[0][1]) * &d, &(-&e[1][0]) * &d, &e[0][0] * &d))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Least common multiple of the entry orders.
    pub fn field_order(&self) -> u32 {
        self.entries
            .iter()
            .flatten()
            .fold(1u32, |acc, c| acc.lcm(&c.order()))
    }

    pub fn promote(&self, n: u32) -> Result<Self> {
        let e = &self.entries;
        Ok(Self::new(
            e[0][0].promote(n)?,
            e[0][1].promote(n)?,
            e[1][0].promote(n)?,
            e[1][1].promote(n)?,
        ))
    }

    /// Hashable key; only meaningful among matrices whose entries share one order.
    fn key(&self) -> Vec<BigInt> {
        let mut k = Vec::new();
        for c in self.entries.iter().flatten() {
            k.push(BigInt::from(c.order()));
            k.push(c.denominator().clone());
            k.extend(c.numerators().iter().cloned());
        }
        k
    }

    /// `g z` for a column vector z.
    pub fn apply(&self, z: &[Cyclotomic; 2]) -> [Cyclotomic; 2] {
        let e = &self.entries;
        [
            &(&e[0][0] * &z[0]) + &(&e[0][1] * &z[1]),
            &(&e[1][0] * &z[0]) + &(&e[1][1] * &z[1]),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    elements: Vec<Matrix2>,
    label: String,
}

impl FiniteMatrixGroup {
    pub fn elements(&self) -> &[Matrix2] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Common field order of all entries.
    pub fn field_order(&self) -> u32 {
        self.elements
            .iter()
            .fold(1u32, |acc, m| acc.lcm(&m.field_order()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.elements.iter().all(Matrix2::is_diagonal)
    }

    pub fn is_special(&self) -> bool {
        self.elements.iter().all(|m| m.det().is_one())
    }

    pub fn contains(&self, m: &Matrix2) -> bool {
        self.elements.iter().any(|e| e == m)
    }

    /// Exact group axioms: identity first, no duplicates, closed under
    /// products, closed under inverses (conjugate transpose).
    pub fn check_axioms(&self) -> bool {
        if self.elements.is_empty() || !self.elements[0].is_identity() {
            return false;
        }
        let n = self.field_order();
        let promoted: Vec<Matrix2> = self
            .elements
            .iter()
            .map(|m| m.promote(n).expect("field order divides"))
            .collect();
        let index: HashMap<Vec<BigInt>, usize> = promoted
            .iter()
            .enumerate()
            .map(|(i, m)| (m.key(), i))
            .collect();
        if index.len() != promoted.len() {
            return false;
        }
        for a in &promoted {
            if !index.contains_key(&a.conj_transpose().key()) {
                return false;
            }
            for b in &promoted {
                if !index.contains_key(&a.mul(b).key()) {
                    return false;
                }
            }
        }
        true
    }

    /// Same elements, set-wise.
    pub fn same_elements(&self, other: &Self) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let n = self.field_order().lcm(&other.field_order());
        let keys: std::collections::HashSet<Vec<BigInt>> = self
            .elements
            .iter()
            .map(|m| m.promote(n).expect("lcm").key())
            .collect();
        other
            .elements
            .iter()
            .all(|m| keys.contains(&m.promote(n).expect("lcm").key()))
    }
}

/// Breadth-first closure of a generator list under matrix product.
pub fn closure(generators: &[Matrix2], cap: usize) -> Result<FiniteMatrixGroup> {
    for (i, g) in generators.iter().enumerate() {
        if !g.is_unitary() {
            return Err(Error::NotUnitary(i));
        }
    }
    let n = generators
        .iter()
        .fold(1u32, |acc, g| acc.lcm(&g.field_order()));
    let gens: Vec<Matrix2> = generators
        .iter()
        .map(|g| g.promote(n))
        .collect::<Result<_>>()?;
    let id = Matrix2::identity().promote(n)?;
    let mut seen: HashMap<Vec<BigInt>, ()> = HashMap::new();
    seen.insert(id.key(), ());
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in &gens {
            let next = current.mul(g);
            let key = next.key();
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            seen.insert(key, ());
            elements.push(next);
        }
    }
    Ok(FiniteMatrixGroup {
        elements,
        label: "closure".to_string(),
    })
}

fn z(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

/// The cyclic group generated by diag(zeta_p, zeta_p^q).
pub fn cyclic_gamma(p: u32, q: i64) -> FiniteMatrixGroup {
    assert!(p >= 1);
    let elements = (0..p as i64)
        .map(|j| Matrix2::diag(z(p, j), z(p, q * j)))
        .collect();
    FiniteMatrixGroup {
        elements,
        label: format!("cyclic({p},{q})"),
    }
}

/// Rotations diag(zeta_p, zeta_p^-1) and the reflection swapping coordinates.
pub fn dihedral_generators(p: u32) -> Vec<Matrix2> {
    vec![
        Matrix2::diag(z(p, 1), z(p, -1)),
        Matrix2::antidiag(int(1), int(1)),
    ]
}

pub fn dihedral(p: u32) -> FiniteMatrixGroup {
    assert!(p >= 1);
    closure(&dihedral_generators(p), DEFAULT_CAP)
        .expect("dihedral generators are unitary")
        .with_label(format!("dihedral({p})"))
}

pub fn binary_dihedral_generators(p: u32) -> Vec<Matrix2> {
    vec![
        Matrix2::diag(z(2 * p, 1), z(2 * p, -1)),
        Matrix2::antidiag(int(1), int(-1)),
    ]
}

pub fn binary_dihedral(p: u32) -> FiniteMatrixGroup {
    assert!(p >= 1);
    closure(&binary_dihedral_generators(p), DEFAULT_CAP)
        .expect("binary dihedral generators are unitary")
        .with_label(format!("binary-dihedral({p})"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polyhedral {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Polyhedral {
    pub fn label(self) -> &'static str {
        match self {
            Polyhedral::Tetrahedral => "T",
            Polyhedral::Octahedral => "O",
            Polyhedral::Icosahedral => "I",
        }
    }

    pub fn expected_order(self) -> usize {
        match self {
            Polyhedral::Tetrahedral => 24,
            Polyhedral::Octahedral => 48,
            Polyhedral::Icosahedral => 120,
        }
    }
}

/// r, s, t for the tetrahedral and octahedral presentations (epsilon = zeta_8).
pub fn springer_rst_8() -> (Matrix2, Matrix2, Matrix2) {
    let r = Matrix2::diag(z(8, 1), z(8, -1));
    let s = Matrix2::antidiag(int(1), int(-1));
    let h = inv_sqrt2();
    let t = Matrix2::new(z(8, -1), z(8, -1), -z(8, 1), z(8, 1)).scale(&h);
    (r, s, t)
}

/// r, s, t for the icosahedral presentation (epsilon = zeta_5, held in Q(zeta_10)).
pub fn springer_rst_10() -> (Matrix2, Matrix2, Matrix2) {
    let eps = |k: i64| z(10, 2 * k);
    let r = Matrix2::diag(eps(3), eps(2)).neg();
    let s = Matrix2::antidiag(int(1), int(-1));
    let scale = (&eps(2) - &eps(-2)).inv().expect("nonzero");
    let c = &eps(1) + &eps(-1);
    let t = Matrix2::new(c.clone(), int(1), int(1), -c).scale(&scale);
    (r, s, t)
}

pub fn binary_polyhedral_generators(kind: Polyhedral) -> Vec<Matrix2> {
    match kind {
        Polyhedral::Tetrahedral => {
            let (_, s, t) = springer_rst_8();
            let t_inv = t.conj_transpose();
            vec![s.mul(&t_inv), t]
        }
        Polyhedral::Octahedral => {
            let (r, _, t) = springer_rst_8();
            vec![r.mul(&t), t]
        }
        Polyhedral::Icosahedral => {
            let (r, s, t) = springer_rst_10();
            let r4 = r.pow(4).expect("unitary");
            vec![r.clone(), r4.mul(&t).mul(&s)]
        }
    }
}

pub fn binary_polyhedral(kind: Polyhedral) -> FiniteMatrixGroup {
    closure(&binary_polyhedral_generators(kind), DEFAULT_CAP)
        .expect("Springer generators are unitary")
        .with_label(kind.label())
}

/// The named groups of order at most `max_order`: every Gamma(p, q) with
/// 1 <= q <= p, the dihedral and binary dihedral families, and T, O, I.
pub fn builtin_groups(max_order: usize) -> Vec<FiniteMatrixGroup> {
    let mut out = Vec::new();
    for p in 1..=max_order as u32 {
        for q in 1..=p as i64 {
            out.push(cyclic_gamma(p, q));
        }
    }
    for p in (1..).take_while(|p| 2 * p <= max_order as u32) {
        out.push(dihedral(p));
    }
    for p in (1..).take_while(|p| 4 * p <= max_order as u32) {
        out.push(binary_dihedral(p));
    }
    for kind in [Polyhedral::Tetrahedral, Polyhedral::Octahedral, Polyhedral::Icosahedral] {
        if kind.expected_order() <= max_order {
            out.push(binary_polyhedral(kind));
        }
    }
    out
}

/// Five fixed unitary matrices with entries in Q(zeta_8), used to test
/// conjugation invariance.
pub fn standard_conjugators() -> Vec<Matrix2> {
    let r = inv_sqrt2();
    let i = z(4, 1);
    let half = Cyclotomic::ratio(1, 2);
    let one_i = &int(1) + &i;
    vec![
        Matrix2::new(r.clone(), r.clone(), r.clone(), -&r),
        Matrix2::diag(z(8, 1), int(1)),
        Matrix2::antidiag(int(1), int(1)),
        Matrix2::new(r.clone(), &r * &i, &r * &i, r.clone()),
        Matrix2::new(
            &half * &one_i,
            &half * &one_i,
            &half * &(&i - &int(1)),
            &half * &(&int(1) - &i),
        ),
    ]
}

/// Element-wise `U g U^-1`.
pub fn conjugate(g: &FiniteMatrixGroup, u: &Matrix2) -> Result<FiniteMatrixGroup> {
    if !u.is_unitary() {
        return Err(Error::NotUnitary(0));
    }
    let u_inv = u.conj_transpose();
    let elements = g.elements.iter().map(|m| u.mul(m).mul(&u_inv)).collect();
    Ok(FiniteMatrixGroup {
        elements,
        label: format!("{}^U", g.label),
    })
}

#[derive(Deserialize)]
struct GeneratorFile {
    generators: Vec<Matrix2>,
    #[serde(default)]
    cap: Option<usize>,
}

/// Parse a generator file `{"generators": [...], "cap": n}` and close it.
pub fn from_generator_json(text: &str) -> Result<FiniteMatrixGroup> {
    let file: GeneratorFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    closure(&file.generators, file.cap.unwrap_or(DEFAULT_CAP))
}

pub fn from_generator_file(path: &Path) -> Result<FiniteMatrixGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(from_generator_json(&text)?.with_label(format!("file:{}", path.display())))
}

/// Serialize generators in the generator-file format.
pub fn generator_json(generators: &[Matrix2], cap: usize) -> String {
    serde_json::json!({ "generators": generators, "cap": cap }).to_string()
}

/// Parse a group spec: `cyclic:p,q`, `dihedral:p`, `binary-dihedral:p`, `T`, `O`, `I`, `file:path`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteMatrixGroup> {
    let bad = || Error::Parse(format!("unrecognized group spec {spec:?}"));
    let positive = |s: &str| -> Result<u32> {
        s.trim()
            .parse::<u32>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(bad)
    };
    match spec.trim() {
        "T" => return Ok(binary_polyhedral(Polyhedral::Tetrahedral)),
        "O" => return Ok(binary_polyhedral(Polyhedral::Octahedral)),
        "I" => return Ok(binary_polyhedral(Polyhedral::Icosahedral)),
        _ => {}
    }
    let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "cyclic" => {
            let (p, q) = args.split_once(',').ok_or_else(bad)?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            Ok(cyclic_gamma(positive(p)?, q))
        }
        "dihedral" => Ok(dihedral(positive(args)?)),
        "binary-dihedral" => Ok(binary_dihedral(positive(args)?)),
        "file" => from_generator_file(Path::new(args)),
        _ => Err(bad()),
    }
}

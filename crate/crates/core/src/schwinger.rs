//! Checkers for the chain from the kinetic matrices `U^μ` to spin-statistics:
//! anti-hermiticity, the symmetric/antisymmetric split, graded cancellation
//! in the kinetic Lagrangian, time-reversal compatibility and the final
//! pairing of spin with statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{parse_complex, Cyclotomic};
use crate::op_algebra::Statistics;
use crate::reps::{reality_class, CMatrix, RealityClass};
use crate::verdict::Verdict;

/// Hermiticity and reality tolerance.
pub const MATRIX_TOL: f64 = 1e-12;
/// Tolerance for conjugation relations, which pass through an inverse.
pub const CONJUGATION_TOL: f64 = 1e-10;

/// The family `U^0 … U^{k-1}` (`1 ≤ k ≤ 4`) of `n×n` matrices.
#[derive(Clone, Debug)]
pub struct UMatrixSet {
    mats: Vec<CMatrix>,
}

impl UMatrixSet {
    pub fn new(mats: Vec<CMatrix>) -> Result<UMatrixSet> {
        if mats.is_empty() || mats.len() > 4 {
            return Err(Error::Input(format!("expected 1 to 4 matrices, got {}", mats.len())));
        }
        let n = mats[0].nrows();
        if n == 0 || mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::Input("matrices must be square and of equal, nonzero size".into()));
        }
        Ok(UMatrixSet { mats })
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn get(&self, mu: usize) -> &CMatrix {
        &self.mats[mu]
    }

    /// Applies `U ↦ O U Oᵀ` to every member.
    pub fn congruence(&self, o: &CMatrix) -> UMatrixSet {
        UMatrixSet { mats: self.mats.iter().map(|u| o * u * o.transpose()).collect() }
    }

    /// Parses `dim n` followed by row-major `re+imi` entries; the entry count
    /// fixes how many matrices follow. `#` starts a comment.
    pub fn parse(text: &str, source_name: &str) -> Result<UMatrixSet> {
        let err = |line: usize, field: &str, message: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            field: field.to_string(),
            message,
        };
        let mut dim: Option<usize> = None;
        let mut entries = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last_line = line_no;
            if dim.is_none() {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("dim") {
                    return Err(err(line_no, "dim", "expected header `dim <n>`".into()));
                }
                let n = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|n| *n > 0)
                    .ok_or_else(|| err(line_no, "dim", "dimension must be a positive integer".into()))?;
                if parts.next().is_some() {
                    return Err(err(line_no, "dim", "trailing tokens after dimension".into()));
                }
                dim = Some(n);
                continue;
            }
            for (col, tok) in line.split_whitespace().enumerate() {
                let z = parse_complex(tok).map_err(|m| err(line_no, &format!("entry {}", col + 1), m))?;
                entries.push(z.to_complex());
            }
        }
        let n = dim.ok_or_else(|| err(last_line.max(1), "dim", "missing header".into()))?;
        let per = n * n;
        if entries.is_empty() || entries.len() % per != 0 || entries.len() / per > 4 {
            return Err(err(
                last_line,
                "entries",
                format!("{} entries is not 1 to 4 matrices of size {n}x{n}", entries.len()),
            ));
        }
        let mats = entries.chunks(per).map(|c| CMatrix::from_row_slice(n, n, c)).collect();
        UMatrixSet::new(mats)
    }
}

fn worst_entry(m: &CMatrix) -> (usize, usize, f64) {
    let mut worst = (0, 0, 0.0);
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)].norm();
            if v > worst.2 {
                worst = (r, c, v);
            }
        }
    }
    worst
}

/// Each `U^μ` satisfies `U† = −U`.
pub fn check_t1(u: &UMatrixSet) -> Verdict {
    let mut worst = (0, 0, 0, 0.0);
    for (mu, m) in u.matrices().iter().enumerate() {
        let (r, c, v) = worst_entry(&(m.adjoint() + m));
        if v > worst.3 {
            worst = (mu, r, c, v);
        }
    }
    let (mu, r, c, v) = worst;
    Verdict::check("T1", v <= MATRIX_TOL, || format!("U^{mu} entry ({r},{c}): |U† + U| = {v:e}")).with_residual(v)
}

/// `(U_S, U_A)` with `U_S = (U + Uᵀ)/2`, `U_A = (U − Uᵀ)/2`.
pub fn decompose(u: &CMatrix) -> (CMatrix, CMatrix) {
    let t = u.transpose();
    let half = Complex64::new(0.5, 0.0);
    ((u + &t) * half, (u - &t) * half)
}

/// Row-major exact matrix.
pub type ExactMatrix = Vec<Vec<Cyclotomic>>;

/// Exact counterpart of [`decompose`] over cyclotomic entries.
pub fn decompose_exact(u: &[Vec<Cyclotomic>]) -> Result<(ExactMatrix, ExactMatrix)> {
    let n = u.len();
    if u.iter().any(|row| row.len() != n) {
        return Err(Error::Input("matrix is not square".into()));
    }
    let half = Cyclotomic::from_rational(crate::exact::rat(1, 2));
    let mut s = vec![vec![Cyclotomic::zero(); n]; n];
    let mut a = vec![vec![Cyclotomic::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            s[r][c] = &(&u[r][c] + &u[c][r]) * &half;
            a[r][c] = &(&u[r][c] - &u[c][r]) * &half;
        }
    }
    Ok((s, a))
}

/// Symmetric parts are imaginary and antisymmetric parts are real.
pub fn check_t2(u: &UMatrixSet) -> Verdict {
    let mut worst = (0, "", 0, 0, 0.0);
    for (mu, m) in u.matrices().iter().enumerate() {
        let (s, a) = decompose(m);
        let (r, c, v) = worst_entry(&(s.conjugate() + &s));
        if v > worst.4 {
            worst = (mu, "symmetric", r, c, v);
        }
        let (r, c, v) = worst_entry(&(a.conjugate() - &a));
        if v > worst.4 {
            worst = (mu, "antisymmetric", r, c, v);
        }
    }
    let (mu, part, r, c, v) = worst;
    Verdict::check("T2", v <= MATRIX_TOL, || format!("{part} part of U^{mu} at ({r},{c}) off by {v:e}"))
        .with_residual(v)
}

/// Statistics class of a field sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldClass {
    Fermi,
    Bose,
}

impl FieldClass {
    pub fn statistics(self) -> Statistics {
        match self {
            FieldClass::Fermi => Statistics::Fermi,
            FieldClass::Bose => Statistics::Bose,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            FieldClass::Fermi => Parity::Anticommuting,
            FieldClass::Bose => Parity::Commuting,
        }
    }
}

impl fmt::Display for FieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldClass::Fermi => "Fermi",
            FieldClass::Bose => "Bose",
        })
    }
}

/// Per-component outcome of [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    Field(FieldClass),
    /// Coupled to nothing through any `U^μ`.
    Unconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub components: Vec<ComponentClass>,
    /// Connected blocks of the combined coupling graph.
    pub blocks: Vec<Vec<usize>>,
}

impl Classification {
    pub fn class_of(&self, r: usize) -> ComponentClass {
        self.components[r]
    }
}

/// Classifies components by which sector of the `U^μ` couples them.
pub fn classify(u: &UMatrixSet) -> Result<Classification> {
    let n = u.dim();
    let mut sym = vec![false; n];
    let mut anti = vec![false; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for m in u.matrices() {
        let (s, a) = decompose(m);
        for r in 0..n {
            for c in 0..n {
                let in_s = s[(r, c)].norm() > MATRIX_TOL;
                let in_a = a[(r, c)].norm() > MATRIX_TOL;
                if in_s {
                    sym[r] = true;
                    sym[c] = true;
                }
                if in_a {
                    anti[r] = true;
                    anti[c] = true;
                }
                if in_s || in_a {
                    let (x, y) = (find(&mut parent, r), find(&mut parent, c));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let conflicts: Vec<usize> = (0..n).filter(|&r| sym[r] && anti[r]).collect();
    if !conflicts.is_empty() {
        return Err(Error::ClassificationConflict { components: conflicts });
    }
    let components = (0..n)
        .map(|r| match (sym[r], anti[r]) {
            (true, _) => ComponentClass::Field(FieldClass::Fermi),
            (_, true) => ComponentClass::Field(FieldClass::Bose),
            _ => ComponentClass::Unconstrained,
        })
        .collect();
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..n {
        let root = find(&mut parent, r);
        blocks.entry(root).or_default().push(r);
    }
    Ok(Classification { components, blocks: blocks.into_values().collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Commuting,
    Anticommuting,
}

/// `χ^r`, or `∂_μ χ^r` when `derivative` is set. Derivatives share the
/// parity of the field they act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedSymbol {
    pub component: usize,
    pub derivative: Option<u8>,
    pub parity: Parity,
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.derivative {
            Some(mu) => write!(f, "d{mu}chi{}", self.component),
            None => write!(f, "chi{}", self.component),
        }
    }
}

/// Sum of canonically ordered graded words with complex coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedPoly {
    terms: BTreeMap<Vec<GradedSymbol>, Complex64>,
}

impl GradedPoly {
    pub fn zero() -> GradedPoly {
        GradedPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GradedSymbol>, &Complex64)> {
        self.terms.iter()
    }

    /// Adds `coeff · word`, reordering the word canonically.
    pub fn add_word(&mut self, coeff: Complex64, word: &[GradedSymbol]) {
        let mut w = word.to_vec();
        let mut sign = 1.0;
        // insertion sort, tracking the grading sign of each adjacent swap
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if w[j - 1].parity == Parity::Anticommuting && w[j].parity == Parity::Anticommuting {
                    sign = -sign;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        let repeated_odd =
            w.windows(2).any(|p| p[0] == p[1] && p[0].parity == Parity::Anticommuting);
        if repeated_odd || coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff * sign;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&w);
        }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for s in w {
                write!(f, " {s}")?;
            }
        }
        Ok(())
    }
}

/// `½ Σ_μ [χ^r U^μ_{rl} ∂_μχ^l − ∂_μχ^r U^μ_{rl} χ^l]` as a graded polynomial.
pub fn lagrangian_kin(u: &UMatrixSet, parity: &[Parity]) -> Result<GradedPoly> {
    let n = u.dim();
    if parity.len() != n {
        return Err(Error::Input(format!("{} parities for {n} components", parity.len())));
    }
    let half = Complex64::new(0.5, 0.0);
    let mut poly = GradedPoly::zero();
    for (mu, m) in u.matrices().iter().enumerate() {
        let d = Some(mu as u8);
        for r in 0..n {
            for l in 0..n {
                let c = m[(r, l)] * half;
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let field = |k: usize, derivative| GradedSymbol { component: k, derivative, parity: parity[k] };
                poly.add_word(c, &[field(r, None), field(l, d)]);
                poly.add_word(-c, &[field(r, d), field(l, None)]);
            }
        }
    }
    Ok(poly)
}

/// Checks `D U^μ D⁻¹ = (−1)^{δ_μ0} (U^μ_A − U^μ_S)` for every `μ` and that
/// the reality class of `D` matches `cls` (imaginary for Fermi, real for Bose).
pub fn check_t5(d: &CMatrix, u: &UMatrixSet, cls: FieldClass) -> Result<Verdict> {
    if d.nrows() != u.dim() || d.ncols() != u.dim() {
        return Err(Error::Input(format!("D is {}x{}, U is {}x{}", d.nrows(), d.ncols(), u.dim(), u.dim())));
    }
    let dinv = d.clone().try_inverse().ok_or_else(|| Error::Input("D is singular".into()))?;
    let mut per_mu = Vec::new();
    let mut worst = (0usize, 0.0f64);
    for (mu, m) in u.matrices().iter().enumerate() {
        let (s, a) = decompose(m);
        let time_sign = if mu == 0 { -1.0 } else { 1.0 };
        let expected = (a - s) * Complex64::new(time_sign, 0.0);
        let (_, _, v) = worst_entry(&(d * m * &dinv - expected));
        per_mu.push(json!({ "mu": mu, "residual": v, "ok": v <= CONJUGATION_TOL }));
        if v > worst.1 {
            worst = (mu, v);
        }
    }
    let class = reality_class(d);
    let want = match cls {
        FieldClass::Fermi => RealityClass::Imaginary,
        FieldClass::Bose => RealityClass::Real,
    };
    let conj_ok = worst.1 <= CONJUGATION_TOL;
    let real_ok = class == want;
    let verdict = Verdict::check("T5", conj_ok && real_ok, || {
        let mut why = Vec::new();
        if !conj_ok {
            why.push(format!("conjugation of U^{} off by {:e}", worst.0, worst.1));
        }
        if !real_ok {
            why.push(format!("D is {class} but a {cls} field needs {want}"));
        }
        why.join("; ")
    })
    .with_residual(worst.1)
    .with_detail("per_mu", json!(per_mu))
    .with_detail("reality_class", json!(class.to_string()));
    Ok(verdict)
}

/// Pairs spin with statistics: half-integer spin with Fermi fields and an
/// imaginary `D`, integer spin with Bose fields and a real `D`.
pub fn spin_statistics_verdict(spin2: u32, cls: FieldClass, d_class: RealityClass) -> Verdict {
    let half_integer = spin2 % 2 == 1;
    let spin_class = if half_integer { RealityClass::Imaginary } else { RealityClass::Real };
    let field_class = match cls {
        FieldClass::Fermi => RealityClass::Imaginary,
        FieldClass::Bose => RealityClass::Real,
    };
    let mut why = Vec::new();
    if d_class != field_class {
        why.push(format!("T5: a {cls} field requires D {field_class}, found {d_class}"));
    }
    if d_class != spin_class {
        why.push(format!("T6: spin {}/2 requires D {spin_class}, found {d_class}", spin2));
    }
    let v = if why.is_empty() { Verdict::pass("T7") } else { Verdict::fail("T7", why.join("; ")) };
    v.with_detail("spin2", json!(spin2))
        .with_detail("class", json!(cls.to_string()))
        .with_detail("d_class", json!(d_class.to_string()))
}

/// Components in the support of `poly`, for diagnostics.
pub fn support(poly: &GradedPoly) -> BTreeSet<usize> {
    poly.terms().flat_map(|(w, _)| w.iter().map(|s| s.component)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m2(a: [Complex64; 4]) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &a)
    }

    fn set(m: CMatrix) -> UMatrixSet {
        UMatrixSet::new(vec![m]).unwrap()
    }

    fn isx() -> CMatrix {
        m2([c(0., 0.), c(0., 1.), c(0., 1.), c(0., 0.)])
    }

    fn eps() -> CMatrix {
        m2([c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.)])
    }

    fn block(a: &CMatrix, b: &CMatrix) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(a);
        m.view_mut((2, 2), (2, 2)).copy_from(b);
        m
    }

    #[test]
    fn t1_examples() {
        assert!(check_t1(&set(eps())).is_pass());
        assert!(check_t1(&set(isx())).is_pass());
        let v = check_t1(&set(CMatrix::identity(2, 2)));
        assert!(!v.is_pass());
        assert!(v.witness.unwrap().contains("(0,0)"));
    }

    #[test]
    fn decompose_examples() {
        let (s, a) = decompose(&m2([c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]));
        assert_eq!(s, m2([c(0., 0.), c(0.5, 0.), c(0.5, 0.), c(0., 0.)]));
        assert_eq!(a, m2([c(0., 0.), c(0.5, 0.), c(-0.5, 0.), c(0., 0.)]));
        let (s, a) = decompose(&isx());
        assert_eq!((s, a), (isx(), CMatrix::zeros(2, 2)));
    }

    #[test]
    fn t2_examples() {
        assert!(check_t2(&set(isx())).is_pass());
        assert!(check_t2(&set(eps())).is_pass());
        assert!(!check_t2(&set(m2([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]))).is_pass());
    }

    #[test]
    fn classify_examples() {
        let f = ComponentClass::Field(FieldClass::Fermi);
        let b = ComponentClass::Field(FieldClass::Bose);
        assert_eq!(classify(&set(isx())).unwrap().components, vec![f, f]);
        assert_eq!(classify(&set(eps())).unwrap().components, vec![b, b]);
        let mixed = classify(&set(block(&isx(), &eps()))).unwrap();
        assert_eq!(mixed.components, vec![f, f, b, b]);
        assert_eq!(mixed.blocks, vec![vec![0, 1], vec![2, 3]]);
        let lone = classify(&set(block(&isx(), &CMatrix::zeros(2, 2)))).unwrap();
        assert_eq!(lone.class_of(3), ComponentClass::Unconstrained);
        let clash = set(m2([c(0., 0.), c(1., 1.), c(-1., 1.), c(0., 0.)]));
        match classify(&clash) {
            Err(Error::ClassificationConflict { components }) => assert_eq!(components, vec![0, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lagrangian_cancellations() {
        use Parity::*;
        assert!(lagrangian_kin(&set(isx()), &[Commuting, Commuting]).unwrap().is_zero());
        assert!(lagrangian_kin(&set(eps()), &[Anticommuting, Anticommuting]).unwrap().is_zero());
        let l = lagrangian_kin(&set(isx()), &[Anticommuting, Anticommuting]).unwrap();
        assert_eq!(l.len(), 2, "{l}");
        let l = lagrangian_kin(&set(eps()), &[Commuting, Commuting]).unwrap();
        assert_eq!(l.len(), 2, "{l}");
    }

    #[test]
    fn grassmann_square_vanishes() {
        let s = GradedSymbol { component: 0, derivative: None, parity: Parity::Anticommuting };
        let mut p = GradedPoly::zero();
        p.add_word(c(1., 0.), &[s, s]);
        assert!(p.is_zero());
    }

    fn sigma_y() -> CMatrix {
        m2([c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    #[test]
    fn t5_fixtures() {
        let u = UMatrixSet::new(vec![CMatrix::zeros(2, 2), isx()]).unwrap();
        assert!(check_t5(&sigma_y(), &u, FieldClass::Fermi).unwrap().is_pass());
        // real D for a Fermi field fails the reality clause only
        let v = check_t5(&(sigma_y() * c(0., 1.)), &u, FieldClass::Fermi).unwrap();
        assert!(!v.is_pass());
        assert!(v.witness.unwrap().starts_with("D is real"));
        let spatial = UMatrixSet::new(vec![CMatrix::zeros(2, 2), eps()]).unwrap();
        assert!(check_t5(&CMatrix::identity(2, 2), &spatial, FieldClass::Bose).unwrap().is_pass());
        assert!(check_t5(&CMatrix::zeros(2, 2), &spatial, FieldClass::Bose).is_err());
    }

    #[test]
    fn truth_table() {
        use RealityClass::*;
        for spin2 in [0u32, 1] {
            for cls in [FieldClass::Fermi, FieldClass::Bose] {
                for d in [Real, Imaginary] {
                    let want = (spin2 == 1 && cls == FieldClass::Fermi && d == Imaginary)
                        || (spin2 == 0 && cls == FieldClass::Bose && d == Real);
                    assert_eq!(spin_statistics_verdict(spin2, cls, d).is_pass(), want);
                }
            }
        }
        let v = spin_statistics_verdict(0, FieldClass::Fermi, Real);
        assert!(v.witness.unwrap().starts_with("T5"));
    }

    #[test]
    fn parse_matrix_file() {
        let u = UMatrixSet::parse("# pauli\ndim 2\n0 0+1i\n0+1i 0\n0 1\n-1 0\n", "u.txt").unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.get(0), &isx());
        assert_eq!(u.get(1), &eps());
        match UMatrixSet::parse("dim 2\n0 1 2\n", "bad.txt") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field.as_str()), (2, "entries")),
            other => panic!("{other:?}"),
        }
        match UMatrixSet::parse("dim 2\n0 x\n1 0\n", "bad.txt") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field.as_str()), (2, "entry 2")),
            other => panic!("{other:?}"),
        }
    }
}

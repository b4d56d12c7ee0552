//! Structure-constant tables with exact Jacobi and centrality checks.
//!
//! Constants are real and follow `[X, Y] = Σ_Z c·Z` for anti-hermitian
//! generators, which is the convention of the matrix Lie algebra of the group
//! acting on `(x, t, 1)`. In that convention the extended Galilei table reads
//! `[J_i, J_j] = ε_ijk J_k`, `[J_i, P_j] = ε_ijk P_k`, `[J_i, K_j] = ε_ijk K_k`,
//! `[K_i, H] = P_i`, `[K_i, P_j] = δ_ij M`, everything else zero.

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, Rational};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraTable {
    name: String,
    labels: Vec<String>,
    /// `c[(x*n + y)*n + z]`
    constants: Vec<Rational>,
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl AlgebraTable {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Self {
        let n = labels.len();
        AlgebraTable { name: name.into(), labels, constants: vec![Rational::zero(); n * n * n] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Input(format!("label `{label}` not in basis of {}", self.name)))
    }

    fn slot(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.dim();
        (x * n + y) * n + z
    }

    pub fn constant(&self, x: usize, y: usize, z: usize) -> &Rational {
        &self.constants[self.slot(x, y, z)]
    }

    /// Sets `[X, Y] = Σ c·Z` and `[Y, X] = −Σ c·Z`.
    pub fn set(&mut self, x: &str, y: &str, rhs: &[(Rational, &str)]) -> Result<()> {
        let (xi, yi) = (self.index(x)?, self.index(y)?);
        let mut row = vec![Rational::zero(); self.dim()];
        for (c, z) in rhs {
            row[self.index(z)?] += c;
        }
        for (z, c) in row.into_iter().enumerate() {
            let a = self.slot(xi, yi, z);
            let b = self.slot(yi, xi, z);
            self.constants[b] = -c.clone();
            self.constants[a] = c;
        }
        Ok(())
    }

    /// Overwrites a single constant without touching its antisymmetric partner.
    pub fn set_raw(&mut self, x: usize, y: usize, z: usize, c: Rational) {
        let s = self.slot(x, y, z);
        self.constants[s] = c;
    }

    /// `[X, Y]` as a coefficient vector over the basis.
    pub fn bracket(&self, x: usize, y: usize) -> Vec<Rational> {
        let n = self.dim();
        (0..n).map(|z| self.constant(x, y, z).clone()).collect()
    }

    fn bracket_vec(&self, u: &[Rational], y: usize) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (x, ux) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (z, slot) in out.iter_mut().enumerate() {
                let c = self.constant(x, y, z);
                if !c.is_zero() {
                    *slot += ux * c;
                }
            }
        }
        out
    }

    /// First pair `(X, Y)` violating `c[X][Y] = −c[Y][X]`.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for x in 0..n {
            for y in x..n {
                for z in 0..n {
                    if *self.constant(x, y, z) != -self.constant(y, x, z).clone() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn extended_galilei() -> Self {
        let labels = ["H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3", "M"];
        let mut t = AlgebraTable::new("extended-galilei", labels.iter().map(|s| s.to_string()).collect());
        for i in 0..3 {
            t.set(&format!("K{}", i + 1), "H", &[(int(1), &format!("P{}", i + 1))]).unwrap();
            t.set(&format!("K{}", i + 1), &format!("P{}", i + 1), &[(int(1), "M")]).unwrap();
        }
        t.add_rotation_brackets(&["J", "P", "K"]);
        t
    }

    pub fn poincare() -> Self {
        let labels = ["H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"];
        let mut t = AlgebraTable::new("poincare", labels.iter().map(|s| s.to_string()).collect());
        for i in 0..3 {
            t.set(&format!("K{}", i + 1), "H", &[(int(1), &format!("P{}", i + 1))]).unwrap();
            t.set(&format!("K{}", i + 1), &format!("P{}", i + 1), &[(int(1), "H")]).unwrap();
            for j in 0..3 {
                for k in 0..3 {
                    let e = levi_civita(i, j, k);
                    if e != 0 && i < j {
                        let (ki, kj, jk) = (format!("K{}", i + 1), format!("K{}", j + 1), format!("J{}", k + 1));
                        t.set(&ki, &kj, &[(int(-e), &jk)]).unwrap();
                    }
                }
            }
        }
        t.add_rotation_brackets(&["J", "P", "K"]);
        t
    }

    fn add_rotation_brackets(&mut self, vectors: &[&str]) {
        for v in vectors {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let e = levi_civita(i, j, k);
                        if e == 0 || (*v == "J" && i > j) {
                            continue;
                        }
                        let ji = format!("J{}", i + 1);
                        let vj = format!("{v}{}", j + 1);
                        let vk = format!("{v}{}", k + 1);
                        self.set(&ji, &vj, &[(int(e), &vk)]).unwrap();
                    }
                }
            }
        }
    }

    /// Parses the line-oriented table format:
    ///
    /// ```text
    /// # comment
    /// name extended-galilei
    /// basis H P1 P2 P3 K1 K2 K3 J1 J2 J3 M
    /// K1 P1 -> 1 M
    /// J1 J2 -> 1 J3 + 0 M
    /// ```
    ///
    /// Each bracket line sets `[X,Y]` and its antisymmetric partner; a line that
    /// contradicts an earlier one is rejected.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let err = |line: usize, field: &str, message: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            field: field.to_string(),
            message,
        };
        let mut name = source_name.to_string();
        let mut table: Option<AlgebraTable> = None;
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("name ") {
                name = rest.trim().to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("basis") {
                if table.is_some() {
                    return Err(err(line_no, "basis", "basis declared twice".into()));
                }
                let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(err(line_no, "basis", "empty basis".into()));
                }
                table = Some(AlgebraTable::new(name.clone(), labels));
                continue;
            }
            let t = table
                .as_mut()
                .ok_or_else(|| err(line_no, "basis", "bracket line before basis declaration".into()))?;
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| err(line_no, "bracket", format!("expected `X Y -> c Z`, got `{line}`")))?;
            let ops: Vec<&str> = lhs.split_whitespace().collect();
            let [x, y] = ops.as_slice() else {
                return Err(err(line_no, "bracket", format!("expected two generators, got `{lhs}`")));
            };
            let xi = t.index(x).map_err(|e| err(line_no, "bracket", e.to_string()))?;
            let yi = t.index(y).map_err(|e| err(line_no, "bracket", e.to_string()))?;
            let mut terms = Vec::new();
            for term in rhs.split('+') {
                let parts: Vec<&str> = term.split_whitespace().collect();
                let (c, z) = match parts.as_slice() {
                    [z] => (int(1), *z),
                    [c, z] => (parse_rational(c).map_err(|m| err(line_no, "coefficient", m))?, *z),
                    [] if rhs.trim() == "0" => continue,
                    _ => return Err(err(line_no, "bracket", format!("malformed term `{}`", term.trim()))),
                };
                if z == "0" {
                    continue;
                }
                t.index(z).map_err(|e| err(line_no, "bracket", e.to_string()))?;
                terms.push((c, z.to_string()));
            }
            let mut row = vec![Rational::zero(); t.dim()];
            for (c, z) in &terms {
                row[t.index(z).unwrap()] += c;
            }
            if let Some(&(a, b)) = seen.iter().find(|&&(a, b)| (a, b) == (xi, yi) || (a, b) == (yi, xi)) {
                let previous = if (a, b) == (xi, yi) {
                    t.bracket(xi, yi)
                } else {
                    t.bracket(yi, xi).into_iter().map(|c| -c).collect()
                };
                if previous != row {
                    return Err(err(line_no, "bracket", format!("[{x},{y}] contradicts an earlier line")));
                }
                continue;
            }
            seen.push((xi, yi));
            let refs: Vec<(Rational, &str)> = terms.iter().map(|(c, z)| (c.clone(), z.as_str())).collect();
            t.set(x, y, &refs).map_err(|e| err(line_no, "bracket", e.to_string()))?;
        }
        let mut t = table.ok_or_else(|| err(0, "basis", "no basis declared".into()))?;
        t.name = name;
        Ok(t)
    }

    /// Serializes to the format accepted by [`AlgebraTable::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("name {}\nbasis {}\n", self.name, self.labels.join(" "));
        let n = self.dim();
        for x in 0..n {
            for y in (x + 1)..n {
                let terms: Vec<String> = (0..n)
                    .filter(|&z| !self.constant(x, y, z).is_zero())
                    .map(|z| format!("{} {}", self.constant(x, y, z), self.labels[z]))
                    .collect();
                if !terms.is_empty() {
                    let _ = writeln!(s, "{} {} -> {}", self.labels[x], self.labels[y], terms.join(" + "));
                }
            }
        }
        s
    }
}

fn render(table: &AlgebraTable, v: &[Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(z, c)| format!("{}*{}", c, table.labels[z]))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Exact Jacobi identity `[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0` over all basis triples.
pub fn jacobi_check(table: &AlgebraTable) -> Verdict {
    let label = format!("jacobi:{}", table.name);
    if let Some((x, y, z)) = table.antisymmetry_violation() {
        return Verdict::fail(
            label,
            format!(
                "not antisymmetric at [{},{}] component {}",
                table.labels[x], table.labels[y], table.labels[z]
            ),
        );
    }
    let n = table.dim();
    let mut checked = 0usize;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                checked += 1;
                let xy = table.bracket_vec(&table.bracket(x, y), z);
                let yz = table.bracket_vec(&table.bracket(y, z), x);
                let zx = table.bracket_vec(&table.bracket(z, x), y);
                let sum: Vec<Rational> = (0..n).map(|k| &xy[k] + &yz[k] + &zx[k]).collect();
                if sum.iter().any(|c| !c.is_zero()) {
                    let worst = sum.iter().map(|c| c.abs()).max().unwrap_or_default();
                    return Verdict::fail(
                        label,
                        format!(
                            "({}, {}, {}): cyclic sum = {}",
                            table.labels[x],
                            table.labels[y],
                            table.labels[z],
                            render(table, &sum)
                        ),
                    )
                    .with_residual(worst.to_f64().unwrap_or(f64::INFINITY))
                    .with_detail("triple", json!([table.labels[x], table.labels[y], table.labels[z]]));
                }
            }
        }
    }
    Verdict::pass(label).with_detail("triples_checked", checked)
}

/// `Z` is central, and when the table carries `K_i`, `P_j`, additionally
/// `[K_i, P_j] = δ_ij Z`.
pub fn centrality_check(table: &AlgebraTable, z: &str) -> Verdict {
    let label = format!("centrality:{}:{}", table.name, z);
    let zi = match table.index(z) {
        Ok(i) => i,
        Err(e) => return Verdict::fail(label, e.to_string()),
    };
    for x in 0..table.dim() {
        let v = table.bracket(zi, x);
        if v.iter().any(|c| !c.is_zero()) {
            return Verdict::fail(label, format!("[{}, {}] = {}", z, table.labels[x], render(table, &v)));
        }
    }
    let names = |p: &str| (1..=3).map(|i| table.index(&format!("{p}{i}"))).collect::<Result<Vec<_>>>();
    if let (Ok(ks), Ok(ps)) = (names("K"), names("P")) {
        for (i, &k) in ks.iter().enumerate() {
            for (j, &p) in ps.iter().enumerate() {
                let mut expect = vec![Rational::zero(); table.dim()];
                if i == j {
                    expect[zi] = int(1);
                }
                let got = table.bracket(k, p);
                if got != expect {
                    return Verdict::fail(
                        label,
                        format!("[K{}, P{}] = {}, expected {}", i + 1, j + 1, render(table, &got), render(table, &expect)),
                    );
                }
            }
        }
    }
    Verdict::pass(label)
}

//! Exact algebra of creation and annihilation operators on discrete modes.
//!
//! Expressions are kept in normal order: every creator stands left of every
//! annihilator, and inside each block the factors are sorted by [`Mode`]. The
//! rewrite `a(k')a†(k) = ±a†(k)a(k') + δ_{k'k}` drives all products, with the
//! upper sign for Bose and the lower for Fermi grading.

pub mod fock;
mod normal;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Coeff, Rational};

pub use normal::normal_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Species {
    Particle,
    Antiparticle,
}

/// A single-particle mode. The derived order (species, spin component,
/// momentum) is the total order used inside normal-ordered blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub species: Species,
    /// Twice the spin projection λ.
    pub spin2: i8,
    /// Integer momentum indices `n`, unused trailing components are zero.
    pub momentum: [i16; 3],
}

impl Mode {
    pub fn scalar(species: Species, momentum: &[i64]) -> Self {
        let mut m = [0i16; 3];
        for (slot, &n) in m.iter_mut().zip(momentum) {
            *slot = n as i16;
        }
        Mode { species, spin2: 0, momentum: m }
    }

    pub fn with_spin(mut self, spin2: i8) -> Self {
        self.spin2 = spin2;
        self
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.momentum[..])?;
        if self.spin2 != 0 {
            write!(f, ",{}/2", self.spin2)?;
        }
        Ok(())
    }
}

/// The set of admissible modes: momentum indices in `[-N/2, N/2)^d` and spin
/// projections `-s..=s` in unit steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeSpace {
    pub dimension: usize,
    pub points_per_side: u32,
    pub spin2: u8,
}

impl ModeSpace {
    pub fn new(dimension: usize, points_per_side: u32, spin2: u8) -> Result<Self> {
        if !(1..=3).contains(&dimension) {
            return Err(Error::Input(format!("dimension {dimension} not in 1..=3")));
        }
        if points_per_side < 2 || !points_per_side.is_multiple_of(2) || points_per_side > 2 * i16::MAX as u32 {
            return Err(Error::Input(format!("points_per_side {points_per_side} must be even and >= 2")));
        }
        Ok(ModeSpace { dimension, points_per_side, spin2 })
    }

    pub fn check(&self, mode: &Mode) -> Result<()> {
        let half = (self.points_per_side / 2) as i16;
        for (axis, &n) in mode.momentum.iter().enumerate() {
            let ok = if axis < self.dimension { (-half..half).contains(&n) } else { n == 0 };
            if !ok {
                return Err(Error::Structural(format!("mode {mode} outside lattice {self:?}")));
            }
        }
        let s2 = self.spin2 as i8;
        if mode.spin2 < -s2 || mode.spin2 > s2 || (mode.spin2 - s2) % 2 != 0 {
            return Err(Error::Structural(format!("spin component {}/2 invalid for spin {}/2", mode.spin2, s2)));
        }
        Ok(())
    }

    /// All momentum index vectors of the lattice, in lexicographic order.
    pub fn momenta(&self) -> Vec<[i16; 3]> {
        let half = (self.points_per_side / 2) as i16;
        let mut out = vec![[0i16; 3]];
        for axis in 0..self.dimension {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (-half..half).map(move |n| {
                        let mut v = m;
                        v[axis] = n;
                        v
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    pub fn volume(&self) -> u64 {
        (self.points_per_side as u64).pow(self.dimension as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// `a†(mode)` or `a(mode)`. The derived order puts creators first, which is
/// exactly the normal-ordering comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ladder {
    pub kind: LadderKind,
    pub mode: Mode,
}

impl Ladder {
    pub fn create(mode: Mode) -> Self {
        Ladder { kind: LadderKind::Create, mode }
    }

    pub fn annihilate(mode: Mode) -> Self {
        Ladder { kind: LadderKind::Annihilate, mode }
    }

    pub fn adjoint(self) -> Self {
        let kind = match self.kind {
            LadderKind::Create => LadderKind::Annihilate,
            LadderKind::Annihilate => LadderKind::Create,
        };
        Ladder { kind, mode: self.mode }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.mode.species {
            Species::Particle => 'a',
            Species::Antiparticle => 'b',
        };
        let dag = if self.kind == LadderKind::Create { "+" } else { "" };
        write!(f, "{name}{dag}({})", self.mode)
    }
}

/// Bose (commutator) or Fermi (anticommutator) grading, uniform per expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    /// Sign picked up when two distinct ladder factors are exchanged.
    pub fn exchange_sign(self) -> i8 {
        match self {
            Statistics::Bose => 1,
            Statistics::Fermi => -1,
        }
    }

    /// The sign in `[A, B]∓ = AB + sign·BA`: −1 for Bose, +1 for Fermi.
    pub fn bracket_sign(self) -> i8 {
        -self.exchange_sign()
    }

    pub fn both() -> [Statistics; 2] {
        [Statistics::Bose, Statistics::Fermi]
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Bose => write!(f, "Bose"),
            Statistics::Fermi => write!(f, "Fermi"),
        }
    }
}

/// A coefficient times an ordered product of ladder operators, not necessarily
/// normal-ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: Coeff,
    pub factors: Vec<Ladder>,
}

impl Monomial {
    pub fn new(coeff: Coeff, factors: Vec<Ladder>) -> Self {
        Monomial { coeff, factors }
    }
}

/// A normal-ordered sum of monomials over one mode space and one statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpr {
    space: ModeSpace,
    stats: Statistics,
    terms: BTreeMap<Vec<Ladder>, Coeff>,
}

impl OperatorExpr {
    pub fn zero(space: ModeSpace, stats: Statistics) -> Self {
        OperatorExpr { space, stats, terms: BTreeMap::new() }
    }

    pub fn scalar(space: ModeSpace, stats: Statistics, c: Coeff) -> Self {
        let mut e = Self::zero(space, stats);
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    pub fn identity(space: ModeSpace, stats: Statistics) -> Self {
        Self::scalar(space, stats, Coeff::one())
    }

    pub fn ladder(space: ModeSpace, stats: Statistics, l: Ladder) -> Result<Self> {
        Self::from_monomials(space, stats, [Monomial::new(Coeff::one(), vec![l])])
    }

    /// Builds the normal-ordered sum of arbitrary monomials.
    pub fn from_monomials(
        space: ModeSpace,
        stats: Statistics,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let monomials: Vec<Monomial> = monomials.into_iter().collect();
        for m in &monomials {
            for l in &m.factors {
                space.check(&l.mode)?;
            }
        }
        Ok(normal_order(space, stats, monomials))
    }

    pub fn space(&self) -> ModeSpace {
        self.space
    }

    pub fn statistics(&self) -> Statistics {
        self.stats
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

    /// True when only the empty (identity) monomial survives.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], &Coeff)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn coefficient(&self, word: &[Ladder]) -> Coeff {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(w, c)| Monomial::new(c.clone(), w.clone()))
            .collect()
    }

    /// Re-normal-orders the stored terms; a no-op on any valid expression.
    pub fn canonicalize(&self) -> Self {
        normal_order(self.space, self.stats, self.monomials())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Structural(format!(
                "mode spaces differ: {:?} vs {:?}",
                self.space, other.space
            )));
        }
        if self.stats != other.stats {
            return Err(Error::Structural(format!(
                "statistics differ: {} vs {}",
                self.stats, other.stats
            )));
        }
        Ok(())
    }

    pub(crate) fn insert_term(&mut self, word: Vec<Ladder>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coeff::from_integer(-1))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.space, self.stats);
        for (w, x) in &self.terms {
            out.insert_term(w.clone(), x * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.space, self.stats);
        for (w, x) in &self.terms {
            out.insert_term(w.clone(), x.scale(q));
        }
        out
    }

    /// Normal-ordered product under the given statistics.
    pub fn multiply(&self, other: &Self, stats: Statistics) -> Result<Self> {
        self.compatible(other)?;
        if stats != self.stats {
            return Err(Error::Structural(format!(
                "product requested under {stats} for {} expressions",
                self.stats
            )));
        }
        let mut out = Self::zero(self.space, stats);
        let mut scratch = Vec::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let c = ca * cb;
                let mut word = Vec::with_capacity(wa.len() + wb.len());
                word.extend_from_slice(wa);
                word.extend_from_slice(wb);
                normal::order_word(stats, word, &mut scratch);
                for (sign, w) in scratch.drain(..) {
                    let term = if sign > 0 { c.clone() } else { -c.clone() };
                    out.insert_term(w, term);
                }
            }
        }
        Ok(out)
    }

    /// Hermitian adjoint: reverse the factors, flip each ladder, conjugate the
    /// coefficient, then restore normal order.
    pub fn adjoint(&self) -> Self {
        let monomials = self.terms.iter().map(|(w, c)| {
            Monomial::new(c.conj(), w.iter().rev().map(|l| l.adjoint()).collect())
        });
        normal_order(self.space, self.stats, monomials)
    }

    /// `[A, B]∓ = AB − BA` (Bose) or `AB + BA` (Fermi).
    ///
    /// Expanded bilinearly: each pair of words is bracketed with integer signs
    /// first, and coefficients are only multiplied for pairs whose word bracket
    /// survives.
    pub fn bracket(&self, other: &Self, stats: Statistics) -> Result<Self> {
        self.compatible(other)?;
        if stats != self.stats {
            return Err(Error::Structural(format!(
                "bracket requested under {stats} for {} expressions",
                self.stats
            )));
        }
        let sign = stats.bracket_sign() as i64;
        let mut out = Self::zero(self.space, stats);
        let mut scratch = Vec::new();
        let mut words: BTreeMap<Vec<Ladder>, i64> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                words.clear();
                for (first, second, weight) in [(wa, wb, 1i64), (wb, wa, sign)] {
                    let mut word = Vec::with_capacity(wa.len() + wb.len());
                    word.extend_from_slice(first);
                    word.extend_from_slice(second);
                    normal::order_word(stats, word, &mut scratch);
                    for (s, w) in scratch.drain(..) {
                        *words.entry(w).or_insert(0) += weight * s as i64;
                    }
                }
                if words.values().all(|&k| k == 0) {
                    continue;
                }
                let c = ca * cb;
                for (w, &k) in words.iter().filter(|(_, &k)| k != 0) {
                    out.insert_term(w.clone(), c.scale(&Rational::from_integer(k.into())));
                }
            }
        }
        Ok(out)
    }

    /// Vacuum expectation value: the coefficient of the empty monomial.
    pub fn vacuum_expect(&self) -> Coeff {
        self.coefficient(&[])
    }

    /// Applies `f` to every ladder factor. `f` must be compatible with the
    /// mode order for the result to stay meaningful; the output is re-normal-ordered.
    pub fn map_ladders(&self, f: impl Fn(Ladder) -> Ladder) -> Result<Self> {
        let monomials = self
            .terms
            .iter()
            .map(|(w, c)| Monomial::new(c.clone(), w.iter().map(|&l| f(l)).collect()));
        Self::from_monomials(self.space, self.stats, monomials)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for l in w {
                write!(f, " {l}")?;
            }
        }
        Ok(())
    }
}

pub fn add(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr> {
    a.add(b)
}

pub fn multiply(a: &OperatorExpr, b: &OperatorExpr, s: Statistics) -> Result<OperatorExpr> {
    a.multiply(b, s)
}

pub fn adjoint(a: &OperatorExpr) -> OperatorExpr {
    a.adjoint()
}

pub fn bracket(a: &OperatorExpr, b: &OperatorExpr, s: Statistics) -> Result<OperatorExpr> {
    a.bracket(b, s)
}

pub fn vacuum_expect(a: &OperatorExpr) -> Coeff {
    a.vacuum_expect()
}

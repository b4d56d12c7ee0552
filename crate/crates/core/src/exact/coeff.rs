use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{Cyclotomic, Rational};

/// Formal phase variables. `e^{i·q·var}` with `var` not a rational multiple of π
/// cannot be folded into a cyclotomic field and is carried symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhaseVar {
    /// π², used by the dispersion phase `E(k)t`.
    PiSquared,
    /// One radian, used for `e^{imγ}` with rational `mγ`.
    Radian,
}

impl PhaseVar {
    pub fn value(self) -> f64 {
        match self {
            PhaseVar::PiSquared => std::f64::consts::PI * std::f64::consts::PI,
            PhaseVar::Radian => 1.0,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            PhaseVar::PiSquared => "pi^2",
            PhaseVar::Radian => "rad",
        }
    }
}

/// Rational-linear exponent `Σ q_v·v` of a formal phase `e^{iΣ q_v v}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseForm(Vec<(PhaseVar, Rational)>);

impl PhaseForm {
    pub fn zero() -> Self {
        PhaseForm(Vec::new())
    }

    pub fn single(var: PhaseVar, q: Rational) -> Self {
        if q.is_zero() {
            PhaseForm::zero()
        } else {
            PhaseForm(vec![(var, q)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let mut m: BTreeMap<PhaseVar, Rational> = self.0.iter().cloned().collect();
        for (v, q) in &other.0 {
            *m.entry(*v).or_insert_with(Rational::zero) += q;
        }
        PhaseForm(m.into_iter().filter(|(_, q)| !q.is_zero()).collect())
    }

    pub fn negated(&self) -> Self {
        PhaseForm(self.0.iter().map(|(v, q)| (*v, -q.clone())).collect())
    }

    pub fn angle(&self) -> f64 {
        self.0
            .iter()
            .map(|(v, q)| q.to_f64().unwrap_or(f64::NAN) * v.value())
            .sum()
    }
}

/// Exact complex coefficient: a finite sum `Σ_f c_f·e^{i f}` of cyclotomic numbers
/// `c_f` times formal phases `f`.
///
/// Distinct formal phases are treated as linearly independent, so cancellation
/// happens exactly when the formal exponents match.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    parts: BTreeMap<PhaseForm, Cyclotomic>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Cyclotomic::one().into()
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic::from_rational(q).into()
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic::from_integer(n).into()
    }

    pub fn i() -> Self {
        Cyclotomic::i().into()
    }

    /// `c·e^{i·phase}`.
    pub fn phased(c: Cyclotomic, phase: PhaseForm) -> Self {
        let mut parts = BTreeMap::new();
        if !c.is_zero() {
            parts.insert(phase, c);
        }
        Coeff { parts }
    }

    /// `e^{iθ}` for a rational angle θ in radians.
    pub fn exp_i_radians(theta: &Rational) -> Self {
        Self::phased(Cyclotomic::one(), PhaseForm::single(PhaseVar::Radian, theta.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The value as a cyclotomic number when no formal phase survives.
    pub fn as_cyclotomic(&self) -> Option<Cyclotomic> {
        match self.parts.len() {
            0 => Some(Cyclotomic::zero()),
            1 => self.parts.get(&PhaseForm::zero()).cloned(),
            _ => None,
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&PhaseForm, &Cyclotomic)> {
        self.parts.iter()
    }

    pub fn conj(&self) -> Self {
        Coeff {
            parts: self
                .parts
                .iter()
                .map(|(f, c)| (f.negated(), c.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            parts: self.parts.iter().map(|(f, c)| (f.clone(), c.scale(q))).collect(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.parts
            .iter()
            .map(|(f, c)| c.to_complex() * Complex64::from_polar(1.0, f.angle()))
            .sum()
    }

    fn accumulate(&mut self, phase: PhaseForm, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.parts.entry(phase) {
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
}

impl From<Cyclotomic> for Coeff {
    fn from(c: Cyclotomic) -> Self {
        Coeff::phased(c, PhaseForm::zero())
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (f, c) in &rhs.parts {
            out.accumulate(f.clone(), c.clone());
        }
        out
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(mut self, rhs: Coeff) -> Coeff {
        for (f, c) in rhs.parts {
            self.accumulate(f, c);
        }
        self
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            parts: self.parts.into_iter().map(|(f, c)| (f, -c)).collect(),
        }
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.clone() + (-rhs.clone())
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (fa, ca) in &self.parts {
            for (fb, cb) in &rhs.parts {
                out.accumulate(fa.plus(fb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (phase, c)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if phase.is_zero() {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*exp(i*(", c)?;
                for (j, (v, q)) in phase.0.iter().enumerate() {
                    if j > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}*{}", q, v.symbol())?;
                }
                write!(f, "))")?;
            }
        }
        Ok(())
    }
}

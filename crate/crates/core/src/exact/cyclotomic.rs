//! Elements of cyclotomic fields `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
//!
//! Every value produced by the field constructions (roots of unity from lattice
//! plane waves, `i`, square roots of rationals from the `V^{-1/2}` normalization,
//! user-supplied `r·e^{iπq}` mixing coefficients) lives in some `Q(ζ_n)`. Keeping
//! them there makes cancellations such as `Σ_k e^{ik(x-y)} = 0` exact.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Reduction data for one order `n`: `x^j mod Φ_n(x)` for every `j < n`.
struct Reduction {
    phi: usize,
    powers: Vec<Vec<(u32, i64)>>,
}

thread_local! {
    static REDUCTIONS: RefCell<HashMap<u32, Rc<Reduction>>> = RefCell::new(HashMap::new());
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients (low to high degree) of the `n`-th cyclotomic polynomial.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = divide_monic(&num, &den);
    }
    let p = Rc::new(num);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn reduction(n: u32) -> Rc<Reduction> {
    if let Some(r) = REDUCTIONS.with(|c| c.borrow().get(&n).cloned()) {
        return r;
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as u32, c))
                .collect(),
        );
        // multiply by x, folding x^phi = -(poly - x^phi)
        let top = cur[phi - 1];
        for e in (1..phi).rev() {
            cur[e] = cur[e - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for e in 0..phi {
                cur[e] -= top * poly[e];
            }
        }
    }
    let r = Rc::new(Reduction { phi, powers });
    REDUCTIONS.with(|c| c.borrow_mut().insert(n, r.clone()));
    r
}

/// Euler's totient via the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    reduction(n).phi
}

/// An exact element of `Q(ζ_order)`.
///
/// Stored sparsely in the reduced power basis, so two elements of the same order
/// are equal iff their term lists are equal. Elements of different orders are
/// compared after lifting to a common order.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    terms: Vec<(u32, Rational)>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic { order: 1, terms: vec![(0, q)] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// The imaginary unit `ζ_4`.
    pub fn i() -> Self {
        Self::root_of_unity(1, 4)
    }

    /// `ζ_n^k = e^{2πik/n}`.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as u32;
        Self::reduce_dense(n, &[(e, Rational::one())])
    }

    /// `e^{iπq}` for rational `q`.
    pub fn exp_i_pi(q: &Rational) -> Self {
        let num = q.numer().to_i64().expect("phase numerator out of range");
        let den = q.denom().to_u32().expect("phase denominator out of range");
        Self::root_of_unity(num, 2 * den)
    }

    /// `re + im·i`.
    pub fn complex(re: Rational, im: Rational) -> Self {
        Self::from_rational(re) + Self::i() * Self::from_rational(im)
    }

    /// `r·e^{iπq}`.
    pub fn polar(r: Rational, q: &Rational) -> Self {
        Self::exp_i_pi(q).scale(&r)
    }

    /// Exact principal square root of a non-negative rational.
    ///
    /// Uses `√2 = ζ_8 + ζ_8^{-1}` and the quadratic Gauss sums for odd primes.
    pub fn sqrt_rational(q: &Rational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Self::zero();
        }
        // sqrt(a/b) = sqrt(a*b)/b
        let n = q.numer() * q.denom();
        let n = n.to_u64().expect("radicand out of range");
        let (square, free) = split_square(n);
        let mut out = Self::from_rational(Rational::new(square.into(), q.denom().clone()));
        for p in prime_factors(free) {
            out = out * sqrt_prime(p);
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let dense: Vec<(u32, Rational)> = self
            .terms
            .iter()
            .map(|(e, c)| ((n - e) % n, c.clone()))
            .collect();
        Self::reduce_dense(n, &dense)
    }

    /// `|z|²`, itself an element of the real subfield.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.terms
            .iter()
            .map(|(e, c)| {
                let theta = 2.0 * std::f64::consts::PI * (*e as f64) / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Re-express in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, target);
        let step = target / self.order;
        let dense: Vec<(u32, Rational)> = self
            .terms
            .iter()
            .map(|(e, c)| (e * step, c.clone()))
            .collect();
        Self::reduce_dense(target, &dense)
    }

    /// Sum `Σ c·x^e` with arbitrary exponents, reduced modulo `Φ_n`.
    fn reduce_dense(n: u32, raw: &[(u32, Rational)]) -> Self {
        let red = reduction(n);
        let mut acc: Vec<Rational> = vec![Rational::zero(); red.phi];
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            for (f, k) in &red.powers[(*e % n) as usize] {
                let term = c * Rational::from_integer((*k).into());
                acc[*f as usize] += term;
            }
        }
        Self::from_dense(n, acc)
    }

    fn from_dense(n: u32, acc: Vec<Rational>) -> Self {
        let terms: Vec<(u32, Rational)> = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c))
            .collect();
        let order = if terms.iter().all(|(e, _)| *e == 0) { 1 } else { n };
        Cyclotomic { order, terms }
    }

    fn common_order(a: &Self, b: &Self) -> u32 {
        a.order.lcm(&b.order)
    }
}

fn split_square(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        square *= p.pow(k / 2);
        if k % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= n;
    (square, free)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn legendre(a: u64, p: u64) -> i64 {
    // Euler's criterion
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return Cyclotomic::root_of_unity(1, 8) + Cyclotomic::root_of_unity(-1, 8);
    }
    let n = u32::try_from(p).expect("prime radicand out of range");
    let raw: Vec<(u32, Rational)> = (1..p)
        .map(|a| (a as u32, Rational::from_integer(legendre(a, p).into())))
        .collect();
    let gauss = Cyclotomic::reduce_dense(n, &raw);
    if p % 4 == 1 {
        gauss
    } else {
        // the Gauss sum equals i·√p here
        -(Cyclotomic::i() * gauss)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let n = Self::common_order(self, other);
        self.lift(n).terms == other.lift(n).terms
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = Cyclotomic::common_order(self, rhs);
        let (a, b) = (self.lift(n), rhs.lift(n));
        let mut acc: Vec<Rational> = vec![Rational::zero(); totient(n)];
        for (e, c) in a.terms.into_iter().chain(b.terms) {
            acc[e as usize] += c;
        }
        Cyclotomic::from_dense(n, acc)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs.clone())
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        let n = Cyclotomic::common_order(self, rhs);
        let (a, b) = (self.lift(n), rhs.lift(n));
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                raw.push((ea + eb, ca * cb));
            }
        }
        Cyclotomic::reduce_dense(n, &raw)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::one()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "z{}", self.order)?,
                (1, false) => write!(f, "{}*z{}", mag, self.order)?,
                (_, true) => write!(f, "z{}^{}", self.order, e)?,
                (_, false) => write!(f, "{}*z{}^{}", mag, self.order, e)?,
            }
        }
        Ok(())
    }
}

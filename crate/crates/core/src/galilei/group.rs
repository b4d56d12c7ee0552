use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];

/// Scalars the group can be evaluated over: exact rationals or `f64`.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_ratio(n: i64, d: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Equality up to `tol`; exact for rationals.
    fn close(&self, other: &Self, tol: f64) -> bool;
}

impl Scalar for Rational {
    fn from_ratio(n: i64, d: i64) -> Self {
        rat(n, d)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn close(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }
}

fn zeros<T: Scalar>() -> Vec3<T> {
    [T::zero(), T::zero(), T::zero()]
}

fn identity3<T: Scalar>() -> Mat3<T> {
    let mut m = [zeros(), zeros(), zeros()];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn dot<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn add3<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0].clone() + b[0].clone(), a[1].clone() + b[1].clone(), a[2].clone() + b[2].clone()]
}

pub fn scale3<T: Scalar>(a: &Vec3<T>, s: &T) -> Vec3<T> {
    [a[0].clone() * s.clone(), a[1].clone() * s.clone(), a[2].clone() * s.clone()]
}

pub fn neg3<T: Scalar>(a: &Vec3<T>) -> Vec3<T> {
    [-a[0].clone(), -a[1].clone(), -a[2].clone()]
}

pub fn mat_vec<T: Scalar>(m: &Mat3<T>, v: &Vec3<T>) -> Vec3<T> {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [zeros(), zeros(), zeros()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..3).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone());
        }
    }
    out
}

pub fn transpose<T: Scalar>(m: &Mat3<T>) -> Mat3<T> {
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = m[j][i].clone();
        }
    }
    out
}

/// A Galilei transformation `(b, a, v, R)` acting as `x' = Rx + vt + a`, `t' = t + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct GalileiElement<T> {
    pub time_shift: T,
    pub translation: Vec3<T>,
    pub boost: Vec3<T>,
    pub rotation: Mat3<T>,
}

impl<T: Scalar> GalileiElement<T> {
    pub fn identity() -> Self {
        GalileiElement {
            time_shift: T::zero(),
            translation: zeros(),
            boost: zeros(),
            rotation: identity3(),
        }
    }

    pub fn new(time_shift: T, translation: Vec3<T>, boost: Vec3<T>, rotation: Mat3<T>) -> Result<Self> {
        let g = GalileiElement { time_shift, translation, boost, rotation };
        if !g.is_orthogonal(1e-12) {
            return Err(Error::Input(format!("rotation part is not orthogonal: {:?}", g.rotation)));
        }
        Ok(g)
    }

    pub fn time_shift(b: T) -> Self {
        GalileiElement { time_shift: b, ..Self::identity() }
    }

    pub fn translation(a: Vec3<T>) -> Self {
        GalileiElement { translation: a, ..Self::identity() }
    }

    pub fn boost(v: Vec3<T>) -> Self {
        GalileiElement { boost: v, ..Self::identity() }
    }

    pub fn rotation(r: Mat3<T>) -> Result<Self> {
        Self::new(T::zero(), zeros(), zeros(), r)
    }

    /// `RᵀR = I`, exactly for rational entries.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let p = mat_mul(&transpose(&self.rotation), &self.rotation);
        let id: Mat3<T> = identity3();
        (0..3).all(|i| (0..3).all(|j| p[i][j].close(&id[i][j], tol)))
    }

    /// `(Rx + vt + a, t + b)`.
    pub fn act(&self, x: &Vec3<T>, t: &T) -> (Vec3<T>, T) {
        let rx = mat_vec(&self.rotation, x);
        let vt = scale3(&self.boost, t);
        (add3(&add3(&rx, &vt), &self.translation), t.clone() + self.time_shift.clone())
    }

    /// `self ∘ other`: the element acting as `self.act(other.act(p))`.
    pub fn compose(&self, other: &Self) -> Self {
        let r = &self.rotation;
        GalileiElement {
            time_shift: self.time_shift.clone() + other.time_shift.clone(),
            translation: add3(
                &add3(&self.translation, &mat_vec(r, &other.translation)),
                &scale3(&self.boost, &other.time_shift),
            ),
            boost: add3(&self.boost, &mat_vec(r, &other.boost)),
            rotation: mat_mul(r, &other.rotation),
        }
    }

    pub fn inverse(&self) -> Self {
        let rt = transpose(&self.rotation);
        let b = self.time_shift.clone();
        // x = Rᵀ(x' − v t' − a + v b) with t = t' − b
        let shifted = add3(&neg3(&self.translation), &scale3(&self.boost, &b));
        GalileiElement {
            time_shift: -b,
            translation: mat_vec(&rt, &shifted),
            boost: neg3(&mat_vec(&rt, &self.boost)),
            rotation: rt,
        }
    }

    /// The projective exponent `m(½|v|²t + v·Rx)` of the field transformation law.
    pub fn gamma(&self, mass: &T, x: &Vec3<T>, t: &T) -> T {
        let v = &self.boost;
        let half = T::from_ratio(1, 2);
        let kinetic = half * dot(v, v) * t.clone();
        mass.clone() * (kinetic + dot(v, &mat_vec(&self.rotation, x)))
    }

    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        let flat = |g: &Self| {
            let mut v = vec![g.time_shift.clone()];
            v.extend(g.translation.iter().cloned());
            v.extend(g.boost.iter().cloned());
            v.extend(g.rotation.iter().flat_map(|r| r.iter().cloned()));
            v
        };
        flat(self).iter().zip(flat(other).iter()).all(|(a, b)| a.close(b, tol))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> GalileiElement<U> {
        GalileiElement {
            time_shift: f(&self.time_shift),
            translation: [f(&self.translation[0]), f(&self.translation[1]), f(&self.translation[2])],
            boost: [f(&self.boost[0]), f(&self.boost[1]), f(&self.boost[2])],
            rotation: [
                [f(&self.rotation[0][0]), f(&self.rotation[0][1]), f(&self.rotation[0][2])],
                [f(&self.rotation[1][0]), f(&self.rotation[1][1]), f(&self.rotation[1][2])],
                [f(&self.rotation[2][0]), f(&self.rotation[2][1]), f(&self.rotation[2][2])],
            ],
        }
    }
}

impl GalileiElement<f64> {
    /// Rotation by `angle` about the unit vector `axis` (Rodrigues).
    pub fn rotation_axis_angle(axis: Vec3<f64>, angle: f64) -> Result<Self> {
        Self::rotation(rotation_matrix_f64(axis, angle)?)
    }
}

pub fn rotation_matrix_f64(axis: Vec3<f64>, angle: f64) -> Result<Mat3<f64>> {
    let norm = dot(&axis, &axis).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Input(format!("rotation axis {axis:?} is not a unit vector")));
    }
    let [x, y, z] = axis;
    let (s, c) = angle.sin_cos();
    let k = 1.0 - c;
    Ok([
        [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
        [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
        [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
    ])
}

impl GalileiElement<Rational> {
    /// Exact rational rotation from the unit quaternion direction `(1, w)`:
    /// every such matrix is orthogonal with rational entries.
    pub fn rational_rotation(w: Vec3<Rational>) -> Self {
        let [a, b, c] = w;
        let n = int(1) + &a * &a + &b * &b + &c * &c;
        let two = int(2);
        let m = [
            [
                int(1) + &a * &a - &b * &b - &c * &c,
                &two * (&a * &b - &c),
                &two * (&a * &c + &b),
            ],
            [
                &two * (&a * &b + &c),
                int(1) - &a * &a + &b * &b - &c * &c,
                &two * (&b * &c - &a),
            ],
            [
                &two * (&a * &c - &b),
                &two * (&b * &c + &a),
                int(1) - &a * &a - &b * &b + &c * &c,
            ],
        ];
        let rotation = m.map(|row| row.map(|e| e / &n));
        GalileiElement { rotation, ..Self::identity() }
    }

    pub fn to_f64(&self) -> GalileiElement<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Fixed sample points `(x, t)` used to test that the cocycle difference is
/// independent of where it is evaluated.
pub fn sample_points<T: Scalar>() -> Vec<(Vec3<T>, T)> {
    let p = |x: [i64; 3], t: (i64, i64)| (x.map(|c| T::from_ratio(c, 1)), T::from_ratio(t.0, t.1));
    vec![
        p([0, 0, 0], (0, 1)),
        p([1, 0, 0], (0, 1)),
        p([0, 1, 0], (1, 1)),
        p([0, 0, 1], (-1, 2)),
        p([2, -1, 3], (3, 2)),
        p([-3, 2, 1], (-2, 1)),
        p([1, 1, 1], (5, 3)),
        p([-2, -5, 4], (7, 4)),
    ]
}

/// `Δ(x,t) = γ(g2;x,t) + γ(g; g2(x,t)) − γ(g∘g2; x,t)` with unit mass.
pub fn cocycle_difference<T: Scalar>(g: &GalileiElement<T>, g2: &GalileiElement<T>, x: &Vec3<T>, t: &T) -> T {
    let one = T::one();
    let (x2, t2) = g2.act(x, t);
    g2.gamma(&one, x, t) + g.gamma(&one, &x2, &t2) - g.compose(g2).gamma(&one, x, t)
}

/// The Bargmann phase `ζ(g, g2) = m·Δ`, after checking that `Δ` does not depend on
/// the evaluation point (exactly for rationals, within `tol` for floats).
pub fn cocycle_exponent<T: Scalar>(g: &GalileiElement<T>, g2: &GalileiElement<T>, mass: &T, tol: f64) -> Result<T> {
    let pts = sample_points::<T>();
    let deltas: Vec<T> = pts.iter().map(|(x, t)| cocycle_difference(g, g2, x, t)).collect();
    let first = deltas[0].clone();
    if let Some((i, d)) = deltas.iter().enumerate().find(|(_, d)| !d.close(&first, tol)) {
        return Err(Error::Consistency(format!(
            "cocycle difference depends on (x,t): {:?} at sample 0 vs {:?} at sample {i}",
            first, d
        )));
    }
    Ok(mass.clone() * first)
}

//! Finite-dimensional spin representations of the rotation group.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const UNIT_TOL: f64 = 1e-10;
const CLASS_TOL: f64 = 1e-12;

/// Angular momentum matrices for spin `s = spin2 / 2`, Condon–Shortley phases,
/// basis ordered `λ = s, s−1, …, −s`.
#[derive(Clone, Debug)]
pub struct SpinRep {
    spin2: u32,
    jx: CMatrix,
    jy: CMatrix,
    jz: CMatrix,
}

impl SpinRep {
    pub fn new(spin2: u32) -> SpinRep {
        let n = spin2 as usize + 1;
        let s = spin2 as f64 / 2.0;
        let lambda = |row: usize| s - row as f64;
        // J+ |λ⟩ = √(s(s+1) − λ(λ+1)) |λ+1⟩; row r-1 holds λ+1
        let mut jp = CMatrix::zeros(n, n);
        for col in 1..n {
            let l = lambda(col);
            jp[(col - 1, col)] = Complex64::new((s * (s + 1.0) - l * (l + 1.0)).sqrt(), 0.0);
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm).map(|z| z * 0.5);
        let jy = (&jp - &jm).map(|z| z * Complex64::new(0.0, -0.5));
        let jz = CMatrix::from_fn(n, n, |r, c| if r == c { Complex64::new(lambda(r), 0.0) } else { Complex64::new(0.0, 0.0) });
        SpinRep { spin2, jx, jy, jz }
    }

    pub fn spin2(&self) -> u32 {
        self.spin2
    }

    pub fn spin(&self) -> f64 {
        self.spin2 as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.spin2 as usize + 1
    }

    pub fn jx(&self) -> &CMatrix {
        &self.jx
    }

    pub fn jy(&self) -> &CMatrix {
        &self.jy
    }

    pub fn jz(&self) -> &CMatrix {
        &self.jz
    }

    pub fn generators(&self) -> [&CMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    /// `exp(−i·angle·(n·J))`.
    pub fn rotation_matrix(&self, axis: [f64; 3], angle: f64) -> Result<CMatrix> {
        let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::Input(format!("rotation axis {axis:?} is not a unit vector")));
        }
        if !angle.is_finite() {
            return Err(Error::Input(format!("rotation angle {angle} is not finite")));
        }
        let generator = &self.jx * Complex64::new(axis[0], 0.0)
            + &self.jy * Complex64::new(axis[1], 0.0)
            + &self.jz * Complex64::new(axis[2], 0.0);
        Ok((generator * Complex64::new(0.0, -angle)).exp())
    }

    /// The scalar `c` with `D(n, 2π) = c·I`, checked on two axes.
    pub fn two_pi_sign(&self) -> Result<i8> {
        let generic = {
            let v = [1.0f64, 2.0, 2.0];
            [v[0] / 3.0, v[1] / 3.0, v[2] / 3.0]
        };
        let mut sign = None;
        for axis in [[0.0, 0.0, 1.0], generic] {
            let d = self.rotation_matrix(axis, 2.0 * std::f64::consts::PI)?;
            let c = d[(0, 0)];
            let identity = CMatrix::identity(self.dim(), self.dim());
            let residual = (&d - &identity * c).camax();
            if residual > 1e-9 || c.im.abs() > 1e-9 || (c.re.abs() - 1.0).abs() > 1e-9 {
                return Err(Error::Consistency(format!(
                    "2π rotation at spin {} is not ±I (residual {residual:e})",
                    self.spin()
                )));
            }
            let s = if c.re > 0.0 { 1 } else { -1 };
            if sign.is_some_and(|prev| prev != s) {
                return Err(Error::Consistency("2π rotation sign depends on the axis".into()));
            }
            sign = Some(s);
        }
        Ok(sign.unwrap())
    }

    /// `phase · D(y, π)`, a candidate for the time-reversal representative.
    pub fn timereversal_candidate(&self, phase: Complex64) -> CMatrix {
        self.rotation_matrix([0.0, 1.0, 0.0], std::f64::consts::PI).expect("unit axis") * phase
    }
}

/// Whether a matrix is real, purely imaginary, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RealityClass {
    Real,
    Imaginary,
    /// First entry (row-major) at which neither class survives.
    Neither { row: usize, col: usize },
}

impl RealityClass {
    /// `e^{2iπk}` in `M* = e^{2iπk} M`, when defined.
    pub fn conjugation_sign(self) -> Option<i8> {
        match self {
            RealityClass::Real => Some(1),
            RealityClass::Imaginary => Some(-1),
            RealityClass::Neither { .. } => None,
        }
    }
}

impl fmt::Display for RealityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealityClass::Real => f.write_str("real"),
            RealityClass::Imaginary => f.write_str("imaginary"),
            RealityClass::Neither { row, col } => write!(f, "neither (entry {row},{col})"),
        }
    }
}

/// Classifies `M` by `M* = M` or `M* = −M`, entrywise within `1e−12`.
/// The zero matrix counts as real.
pub fn reality_class(m: &CMatrix) -> RealityClass {
    let mut real_ok = true;
    let mut imag_ok = true;
    for row in 0..m.nrows() {
        for col in 0..m.ncols() {
            let z = m[(row, col)];
            real_ok &= z.im.abs() <= CLASS_TOL;
            imag_ok &= z.re.abs() <= CLASS_TOL;
            if !real_ok && !imag_ok {
                return RealityClass::Neither { row, col };
            }
        }
    }
    if real_ok {
        RealityClass::Real
    } else {
        RealityClass::Imaginary
    }
}

/// Unit quaternion `(w, x, y, z)` for a rotation, keeping the SU(2) sign.
pub fn quaternion(axis: [f64; 3], angle: f64) -> [f64; 4] {
    let (s, c) = (angle / 2.0).sin_cos();
    [c, axis[0] * s, axis[1] * s, axis[2] * s]
}

pub fn quaternion_mul(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

/// Axis and angle in `[0, 2π]` of a unit quaternion; angles past `π` encode
/// the other sheet of the double cover.
pub fn quaternion_axis_angle(q: [f64; 4]) -> ([f64; 3], f64) {
    let v = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    if v < 1e-300 {
        return ([0.0, 0.0, 1.0], if q[0] > 0.0 { 0.0 } else { 2.0 * std::f64::consts::PI });
    }
    ([q[1] / v, q[2] / v, q[3] / v], 2.0 * v.atan2(q[0]))
}

//! Numerical bridge between the group law and the structure constants.
//!
//! Group elements carry a central phase composed with the Bargmann cocycle
//! `ω(g, g') = ½|v|²b' + v·Ra'`, so the commutator of a boost and a translation
//! returns a pure phase whose `ε²` coefficient is the `M` component of `[K, P]`.

use std::fmt;

use serde_json::json;

use super::algebra::AlgebraTable;
use super::group::{dot, mat_vec, rotation_matrix_f64, GalileiElement, Vec3};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Generators of one-parameter subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneParam {
    TimeShift,
    Translation(usize),
    Boost(usize),
    Rotation(usize),
}

impl OneParam {
    pub fn all() -> Vec<OneParam> {
        let mut v = vec![OneParam::TimeShift];
        v.extend((0..3).map(OneParam::Translation));
        v.extend((0..3).map(OneParam::Boost));
        v.extend((0..3).map(OneParam::Rotation));
        v
    }

    pub fn label(self) -> String {
        match self {
            OneParam::TimeShift => "H".into(),
            OneParam::Translation(i) => format!("P{}", i + 1),
            OneParam::Boost(i) => format!("K{}", i + 1),
            OneParam::Rotation(i) => format!("J{}", i + 1),
        }
    }

    fn element(self, s: f64) -> Extended {
        let unit = |i: usize| {
            let mut e = [0.0; 3];
            e[i] = s;
            e
        };
        let g = match self {
            OneParam::TimeShift => GalileiElement::time_shift(s),
            OneParam::Translation(i) => GalileiElement::translation(unit(i)),
            OneParam::Boost(i) => GalileiElement::boost(unit(i)),
            OneParam::Rotation(i) => {
                let mut axis = [0.0; 3];
                axis[i] = 1.0;
                GalileiElement::rotation(rotation_matrix_f64(axis, s).expect("unit axis"))
                    .expect("rotation is orthogonal")
            }
        };
        Extended { g, phase: 0.0 }
    }
}

impl fmt::Display for OneParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Element of the centrally extended group: `(g, θ)` with
/// `(g, θ)(g', θ') = (gg', θ + θ' + ω(g, g'))`.
#[derive(Clone, Debug)]
struct Extended {
    g: GalileiElement<f64>,
    phase: f64,
}

fn omega(g: &GalileiElement<f64>, h: &GalileiElement<f64>) -> f64 {
    let v = &g.boost;
    0.5 * dot(v, v) * h.time_shift + dot(v, &mat_vec(&g.rotation, &h.translation))
}

impl Extended {
    fn mul(&self, other: &Extended) -> Extended {
        Extended {
            g: self.g.compose(&other.g),
            phase: self.phase + other.phase + omega(&self.g, &other.g),
        }
    }

    fn inverse(&self) -> Extended {
        let inv = self.g.inverse();
        Extended { phase: -self.phase - omega(&self.g, &inv), g: inv }
    }

    /// First-kind coordinates near the identity, in the order
    /// `H, P1..3, K1..3, J1..3, M`.
    fn coordinates(&self) -> [f64; 11] {
        let r = &self.g.rotation;
        let w: Vec3<f64> = [(r[2][1] - r[1][2]) / 2.0, (r[0][2] - r[2][0]) / 2.0, (r[1][0] - r[0][1]) / 2.0];
        let s = dot(&w, &w).sqrt();
        let cos = ((r[0][0] + r[1][1] + r[2][2]) - 1.0) / 2.0;
        let angle = s.atan2(cos);
        let factor = if s < 1e-300 { 1.0 } else { angle / s };
        let g = &self.g;
        [
            g.time_shift,
            g.translation[0],
            g.translation[1],
            g.translation[2],
            g.boost[0],
            g.boost[1],
            g.boost[2],
            w[0] * factor,
            w[1] * factor,
            w[2] * factor,
            self.phase,
        ]
    }
}

const BASIS: [&str; 11] = ["H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3", "M"];

/// Step ladder `ε, ε/2, ε/4` for the extrapolation.
pub const BCH_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// `c(ε)/ε²` for the group commutator `g_X g_Y g_X⁻¹ g_Y⁻¹`.
fn scaled_commutator(x: OneParam, y: OneParam, eps: f64) -> [f64; 11] {
    let gx = x.element(eps);
    let gy = y.element(eps);
    let c = gx.mul(&gy).mul(&gx.inverse()).mul(&gy.inverse());
    c.coordinates().map(|v| v / (eps * eps))
}

/// Estimates `[X, Y]` from group commutators with second-order Richardson
/// extrapolation over [`BCH_STEPS`].
pub fn extrapolated_bracket(x: OneParam, y: OneParam) -> Result<[f64; 11]> {
    let f = BCH_STEPS.map(|e| scaled_commutator(x, y, e));
    let mut out = [0.0; 11];
    for k in 0..11 {
        let r1a = 2.0 * f[1][k] - f[0][k];
        let r1b = 2.0 * f[2][k] - f[1][k];
        let r2 = (4.0 * r1b - r1a) / 3.0;
        if !r2.is_finite() || (r1b - r1a).abs() > 1e-2 * r2.abs().max(1.0) {
            return Err(Error::Numeric(format!(
                "extrapolation of [{x},{y}] component {} did not settle: {r1a} vs {r1b}",
                BASIS[k]
            )));
        }
        out[k] = r2;
    }
    Ok(out)
}

/// Compares the extrapolated group commutator with the table's `[X, Y]`
/// (relative tolerance `tol`, floored at unit scale).
pub fn bch_crosscheck(x: OneParam, y: OneParam, table: &AlgebraTable, tol: f64) -> Result<Verdict> {
    let label = format!("bch:[{x},{y}]");
    let estimate = extrapolated_bracket(x, y)?;
    let xi = table.index(&x.label())?;
    let yi = table.index(&y.label())?;
    let mut expect = [0.0; 11];
    for (k, name) in BASIS.iter().enumerate() {
        if let Ok(z) = table.index(name) {
            expect[k] = num_traits::ToPrimitive::to_f64(table.constant(xi, yi, z)).unwrap_or(f64::NAN);
        }
    }
    let scale = expect.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let (worst_k, worst) = (0..11)
        .map(|k| (k, (estimate[k] - expect[k]).abs()))
        .fold((0, 0.0f64), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let rel = worst / scale;
    let v = Verdict::check(label, rel <= tol, || {
        format!(
            "component {}: group commutator gives {:.9}, table gives {}",
            BASIS[worst_k], estimate[worst_k], expect[worst_k]
        )
    })
    .with_residual(rel)
    .with_detail("estimate", json!(estimate.to_vec()));
    Ok(v)
}

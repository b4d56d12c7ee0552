//! Spin-zero Galilean field on a periodic momentum lattice and its equal-time
//! brackets.
//!
//! The field is
//!
//! ```text
//! ξ(x,t) = V^{-1/2} Σ_k [ α e^{i(E(k)t − k·x)} a(k) + β e^{−i(E(k)t − k·x)} b†(k) ]
//! ```
//!
//! with `k = 2πn/L`, `x = Lj/N`, `V = N^d` and `E(k) = |k|²/(2m)` (ħ = 1). Plane
//! waves are roots of unity `ζ_N^{n·j}` and the dispersion phase is carried as the
//! formal symbol `e^{iπ²·2|n|²t/(mL²)}`, so all cancellations are exact.

use std::time::Instant;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{int, Coeff, Cyclotomic, PhaseForm, PhaseVar, Rational};
use crate::op_algebra::{Ladder, Mode, ModeSpace, Monomial, OperatorExpr, Species, Statistics};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub dimension: usize,
    pub points_per_side: u32,
    pub side_length: Rational,
}

impl LatticeSpec {
    pub fn new(dimension: usize, points_per_side: u32, side_length: Rational) -> Result<Self> {
        ModeSpace::new(dimension, points_per_side, 0)?;
        if !side_length.is_positive() {
            return Err(Error::Input(format!("side length {side_length} must be positive")));
        }
        Ok(LatticeSpec { dimension, points_per_side, side_length })
    }

    pub fn mode_space(&self) -> ModeSpace {
        ModeSpace {
            dimension: self.dimension,
            points_per_side: self.points_per_side,
            spin2: 0,
        }
    }

    pub fn volume(&self) -> u64 {
        self.mode_space().volume()
    }

    /// Integer grid coordinates `j ∈ [0,N)^d` of every lattice site.
    pub fn sites(&self) -> Vec<Vec<i64>> {
        let n = self.points_per_side as i64;
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.dimension {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..n).map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The point `x = L j / N` at time `t`.
    pub fn point(&self, site: &[i64], time: Rational) -> SpacetimePoint {
        let scale = &self.side_length / int(self.points_per_side as i64);
        SpacetimePoint {
            position: site.iter().map(|&j| &scale * int(j)).collect(),
            time,
        }
    }

    /// Grid coordinates of `p`, or a structural error when it is off the grid.
    pub fn site_of(&self, p: &SpacetimePoint) -> Result<Vec<i64>> {
        if p.position.len() != self.dimension {
            return Err(Error::Structural(format!(
                "position has {} components, lattice dimension is {}",
                p.position.len(),
                self.dimension
            )));
        }
        let n = int(self.points_per_side as i64);
        p.position
            .iter()
            .map(|x| {
                let j = x * &n / &self.side_length;
                match (j.is_integer(), j.to_integer().to_i64()) {
                    (true, Some(j)) if (0..self.points_per_side as i64).contains(&j) => Ok(j),
                    _ => Err(Error::Structural(format!("position component {x} is not on the lattice grid"))),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimePoint {
    pub position: Vec<Rational>,
    pub time: Rational,
}

/// A spin-zero field: mass, particle/antiparticle mixing `α`, `β`, and lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub mass: Rational,
    pub alpha: Cyclotomic,
    pub beta: Cyclotomic,
    pub lattice: LatticeSpec,
}

impl FieldSpec {
    pub fn new(mass: Rational, alpha: Cyclotomic, beta: Cyclotomic, lattice: LatticeSpec) -> Result<Self> {
        if mass.is_zero() {
            return Err(Error::Input("field mass must be nonzero".into()));
        }
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Input("alpha and beta cannot both vanish".into()));
        }
        Ok(FieldSpec { mass, alpha, beta, lattice })
    }

    /// The plane-wave phase `e^{i(E(k)t − k·x)}` for momentum index `n` at `site`.
    fn phase(&self, n: &[i16; 3], site: &[i64], time: &Rational) -> Coeff {
        let big_n = self.lattice.points_per_side as i64;
        let dot: i64 = site.iter().zip(n.iter()).map(|(&j, &k)| j * k as i64).sum();
        let plane = Cyclotomic::root_of_unity(-dot, big_n as u32);
        let n2: i64 = n.iter().map(|&k| (k as i64) * (k as i64)).sum();
        // E(k) t = π² · 2|n|² t / (m L²)
        let l2 = &self.lattice.side_length * &self.lattice.side_length;
        let disp = int(2 * n2) * time / (&self.mass * l2);
        Coeff::phased(plane, PhaseForm::single(PhaseVar::PiSquared, disp))
    }

    /// The closed form `(|α|² ∓ |β|²)·δ(x,y)` of the equal-time bracket.
    pub fn closed_form_bracket(&self, same_site: bool, stats: Statistics) -> Cyclotomic {
        if !same_site {
            return Cyclotomic::zero();
        }
        let a2 = self.alpha.norm_sqr();
        let b2 = self.beta.norm_sqr();
        match stats.bracket_sign() {
            s if s < 0 => &a2 - &b2,
            _ => &a2 + &b2,
        }
    }
}

/// The field operator `ξ(x,t)` as an exact normal-ordered expression.
pub fn build_field(spec: &FieldSpec, p: &SpacetimePoint, stats: Statistics) -> Result<OperatorExpr> {
    let site = spec.lattice.site_of(p)?;
    let space = spec.lattice.mode_space();
    let norm = Coeff::from(Cyclotomic::sqrt_rational(&Rational::new(
        One::one(),
        spec.lattice.volume().into(),
    )));
    let alpha = &norm * &Coeff::from(spec.alpha.clone());
    let beta = &norm * &Coeff::from(spec.beta.clone());
    let mut monomials = Vec::new();
    for n in space.momenta() {
        let phase = spec.phase(&n, &site, &p.time);
        let mode = |species| Mode { species, spin2: 0, momentum: n };
        if !spec.alpha.is_zero() {
            monomials.push(Monomial::new(&alpha * &phase, vec![Ladder::annihilate(mode(Species::Particle))]));
        }
        if !spec.beta.is_zero() {
            monomials.push(Monomial::new(&beta * &phase.conj(), vec![Ladder::create(mode(Species::Antiparticle))]));
        }
    }
    OperatorExpr::from_monomials(space, stats, monomials)
}

/// `ξ†(x,t)` built directly from the conjugated expansion, without `adjoint`.
pub fn build_conjugate_field(spec: &FieldSpec, p: &SpacetimePoint, stats: Statistics) -> Result<OperatorExpr> {
    let site = spec.lattice.site_of(p)?;
    let space = spec.lattice.mode_space();
    let norm = Coeff::from(Cyclotomic::sqrt_rational(&Rational::new(
        One::one(),
        spec.lattice.volume().into(),
    )));
    let alpha = &norm * &Coeff::from(spec.alpha.conj());
    let beta = &norm * &Coeff::from(spec.beta.conj());
    let mut monomials = Vec::new();
    for n in space.momenta() {
        let phase = spec.phase(&n, &site, &p.time);
        let mode = |species| Mode { species, spin2: 0, momentum: n };
        monomials.push(Monomial::new(&alpha * &phase.conj(), vec![Ladder::create(mode(Species::Particle))]));
        monomials.push(Monomial::new(&beta * &phase, vec![Ladder::annihilate(mode(Species::Antiparticle))]));
    }
    OperatorExpr::from_monomials(space, stats, monomials)
}

/// `[ξ(x,t), ξ†(y,t)]∓`, which must reduce to a c-number.
pub fn equal_time_bracket(
    spec: &FieldSpec,
    x: &SpacetimePoint,
    y: &SpacetimePoint,
    stats: Statistics,
) -> Result<Coeff> {
    if x.time != y.time {
        return Err(Error::Unsupported(format!(
            "unequal-time bracket ({} vs {})",
            x.time, y.time
        )));
    }
    let xi = build_field(spec, x, stats)?;
    let xi_dag = build_field(spec, y, stats)?.adjoint();
    scalar_bracket(&xi, &xi_dag, stats)
}

fn scalar_bracket(xi: &OperatorExpr, xi_dag: &OperatorExpr, stats: Statistics) -> Result<Coeff> {
    let br = xi.bracket(xi_dag, stats)?;
    if !br.is_scalar() {
        return Err(Error::Consistency(format!(
            "equal-time bracket left {} operator-valued term(s)",
            br.len() - usize::from(!br.vacuum_expect().is_zero())
        )));
    }
    Ok(br.vacuum_expect())
}

/// Which lattice point pairs the counterexample sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSweep {
    /// Every ordered pair of sites.
    All,
    /// Every site paired with the origin, in both argument orders.
    Anchored,
}

/// Sweeps the equal-time bracket for both statistics and compares every entry
/// with `(|α|² ∓ |β|²)·δ`.
///
/// Passes when both gradings reproduce the closed form, i.e. when Galilean
/// covariance alone leaves the choice of statistics open.
pub fn counterexample_report(spec: &FieldSpec, time: &Rational, sweep: PairSweep) -> Result<Verdict> {
    let start = Instant::now();
    let sites = spec.lattice.sites();
    let pairs: Vec<(usize, usize)> = match sweep {
        PairSweep::All => (0..sites.len())
            .flat_map(|i| (0..sites.len()).map(move |j| (i, j)))
            .collect(),
        PairSweep::Anchored => (0..sites.len())
            .map(|i| (i, 0))
            .chain((1..sites.len()).map(|j| (0, j)))
            .collect(),
    };
    let mut verdict = Verdict::pass("S2-counterexample");
    let mut failures = Vec::new();
    for stats in Statistics::both() {
        let fields: Vec<(OperatorExpr, OperatorExpr)> = sites
            .par_iter()
            .map(|s| {
                let p = spec.lattice.point(s, time.clone());
                let xi = build_field(spec, &p, stats)?;
                let dag = xi.adjoint();
                Ok((xi, dag))
            })
            .collect::<Result<_>>()?;
        let values: Vec<Coeff> = pairs
            .par_iter()
            .map(|&(i, j)| scalar_bracket(&fields[i].0, &fields[j].1, stats))
            .collect::<Result<_>>()?;
        let mut table = Vec::with_capacity(pairs.len());
        for (&(i, j), v) in pairs.iter().zip(&values) {
            let expect = Coeff::from(spec.closed_form_bracket(i == j, stats));
            if *v != expect && failures.len() < 8 {
                failures.push(format!(
                    "{stats} x={:?} y={:?}: got {v}, expected {expect}",
                    sites[i], sites[j]
                ));
            }
            table.push(json!([sites[i], sites[j], v.to_string()]));
        }
        let key = match stats {
            Statistics::Bose => "commutator",
            Statistics::Fermi => "anticommutator",
        };
        verdict = verdict
            .with_detail(format!("{key}_closed_form"), spec.closed_form_bracket(true, stats).to_string())
            .with_detail(format!("{key}_table"), table);
    }
    verdict = verdict
        .with_detail("dimension", spec.lattice.dimension)
        .with_detail("points_per_side", spec.lattice.points_per_side)
        .with_detail("pairs", pairs.len())
        .with_detail("alpha", spec.alpha.to_string())
        .with_detail("beta", spec.beta.to_string());
    if !failures.is_empty() {
        verdict.status = crate::verdict::Status::Fail;
        verdict.witness = Some(failures.join("; "));
    }
    verdict.seconds = start.elapsed().as_secs_f64();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn lattice(d: usize, n: u32) -> LatticeSpec {
        LatticeSpec::new(d, n, int(1)).unwrap()
    }

    fn spec(alpha: Cyclotomic, beta: Cyclotomic, lat: LatticeSpec) -> FieldSpec {
        FieldSpec::new(int(1), alpha, beta, lat).unwrap()
    }

    fn one() -> Cyclotomic {
        Cyclotomic::one()
    }

    #[test]
    fn field_at_origin_has_unit_phases() {
        let lat = lattice(1, 2);
        let s = spec(one(), Cyclotomic::zero(), lat.clone());
        let p = lat.point(&[0], int(0));
        let xi = build_field(&s, &p, Statistics::Bose).unwrap();
        let norm = Coeff::from(Cyclotomic::sqrt_rational(&rat(1, 2)));
        let sp = lat.mode_space();
        let expect = OperatorExpr::from_monomials(
            sp,
            Statistics::Bose,
            [-1i64, 0].iter().map(|&k| {
                Monomial::new(norm.clone(), vec![Ladder::annihilate(Mode::scalar(Species::Particle, &[k]))])
            }),
        )
        .unwrap();
        assert_eq!(xi, expect);
    }

    #[test]
    fn adjoint_matches_conjugate_expansion() {
        let lat = lattice(1, 4);
        let s = spec(Cyclotomic::complex(rat(1, 2), rat(1, 3)), Cyclotomic::polar(rat(2, 1), &rat(1, 4)), lat.clone());
        for stats in Statistics::both() {
            let p = lat.point(&[3], rat(5, 7));
            let xi = build_field(&s, &p, stats).unwrap();
            assert_eq!(xi.adjoint(), build_conjugate_field(&s, &p, stats).unwrap());
        }
    }

    #[test]
    fn off_lattice_point_is_rejected() {
        let lat = lattice(1, 4);
        let s = spec(one(), one(), lat);
        let p = SpacetimePoint { position: vec![rat(1, 3)], time: int(0) };
        assert!(matches!(build_field(&s, &p, Statistics::Bose), Err(Error::Structural(_))));
    }

    #[test]
    fn unequal_times_are_unsupported() {
        let lat = lattice(1, 2);
        let s = spec(one(), one(), lat.clone());
        let r = equal_time_bracket(&s, &lat.point(&[0], int(0)), &lat.point(&[0], int(1)), Statistics::Bose);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn equal_weights_give_two_and_zero() {
        let lat = lattice(1, 4);
        let s = spec(one(), one(), lat.clone());
        let x = lat.point(&[1], int(0));
        let y = lat.point(&[2], int(0));
        assert_eq!(equal_time_bracket(&s, &x, &x, Statistics::Fermi).unwrap(), Coeff::from_integer(2));
        assert!(equal_time_bracket(&s, &x, &x, Statistics::Bose).unwrap().is_zero());
        assert!(equal_time_bracket(&s, &x, &y, Statistics::Bose).unwrap().is_zero());
        assert!(equal_time_bracket(&s, &x, &y, Statistics::Fermi).unwrap().is_zero());
    }

    #[test]
    fn unequal_weights_commutator() {
        let lat = lattice(1, 4);
        let s = spec(Cyclotomic::from_integer(2), one(), lat.clone());
        let x = lat.point(&[0], rat(1, 3));
        let y = lat.point(&[3], rat(1, 3));
        assert_eq!(equal_time_bracket(&s, &x, &x, Statistics::Bose).unwrap(), Coeff::from_integer(3));
        assert!(equal_time_bracket(&s, &x, &y, Statistics::Bose).unwrap().is_zero());
    }

    #[test]
    fn report_for_single_species_field() {
        let lat = lattice(1, 4);
        let s = spec(one(), Cyclotomic::zero(), lat);
        let v = counterexample_report(&s, &int(0), PairSweep::All).unwrap();
        assert!(v.is_pass(), "{v}");
        assert_eq!(v.details["commutator_closed_form"], "1");
        assert_eq!(v.details["anticommutator_closed_form"], "1");
    }

    #[test]
    fn report_with_rotated_alpha() {
        let lat = lattice(1, 4);
        let s = spec(Cyclotomic::polar(rat(3, 5), &rat(1, 3)), Cyclotomic::from_rational(rat(4, 5)), lat);
        let v = counterexample_report(&s, &rat(1, 2), PairSweep::All).unwrap();
        assert!(v.is_pass(), "{v}");
        assert_eq!(v.details["commutator_closed_form"], "-7/25");
    }
}

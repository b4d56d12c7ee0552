//! Hermiticity against Galilean covariance for massive fields, and the
//! doubled-component mass matrix that forces equal particle and antiparticle
//! weights.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Coeff, Cyclotomic, Rational};
use crate::field::{build_field, equal_time_bracket, FieldSpec, LatticeSpec, SpacetimePoint};
use crate::galilei::{GalileiElement, Vec3};
use crate::op_algebra::{OperatorExpr, Statistics};
use crate::reps::SpinRep;
use crate::verdict::Verdict;

/// `ξ_λ ↦ e^{imγ} Σ D_{λλ'}(R⁻¹) ξ_λ'` for mass `m` and spin `s`.
#[derive(Clone, Debug)]
pub struct TransformLaw {
    pub mass: Rational,
    pub rep: SpinRep,
}

impl TransformLaw {
    pub fn new(mass: Rational, spin2: u32) -> TransformLaw {
        TransformLaw { mass, rep: SpinRep::new(spin2) }
    }

    pub fn spin2(&self) -> u32 {
        self.rep.spin2()
    }
}

/// Which Galilei elements the sampler may draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    General,
    /// Rotations, translations and time shifts only.
    NoBoost,
}

/// How `ξ` and `ξ†` phases compare over the samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compatibility {
    Compatible,
    Incompatible,
    InconclusiveUnderRestriction,
}

impl Compatibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Compatibility::Compatible => "COMPATIBLE",
            Compatibility::Incompatible => "INCOMPATIBLE",
            Compatibility::InconclusiveUnderRestriction => "INCONCLUSIVE-UNDER-RESTRICTION",
        }
    }
}

/// One `(g, x, t)` draw.
#[derive(Clone, Debug)]
pub struct Sample {
    pub g: GalileiElement<Rational>,
    pub x: Vec3<Rational>,
    pub t: Rational,
}

impl Sample {
    pub fn gamma(&self) -> Rational {
        self.g.gamma(&Rational::one(), &self.x, &self.t)
    }

    pub fn describe(&self) -> String {
        let v = |a: &Vec3<Rational>| format!("({}, {}, {})", a[0], a[1], a[2]);
        format!(
            "b={} a={} v={} R={:?} x={} t={}",
            self.g.time_shift,
            v(&self.g.translation),
            v(&self.g.boost),
            self.g.rotation.iter().map(&v).collect::<Vec<_>>(),
            v(&self.x),
            self.t
        )
    }
}

/// Boost `v = (1,0,0)` at `x = (1,0,0)`, `t = 0`, where `γ = 1`.
pub fn reference_sample() -> Sample {
    Sample {
        g: GalileiElement::boost([int(1), int(0), int(0)]),
        x: [int(1), int(0), int(0)],
        t: int(0),
    }
}

fn small_rational(rng: &mut ChaCha8Rng, max_num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), den)
}

/// Draws a sample. Boost magnitudes lie in `[1/2, 2]` with a rational
/// direction, positions on the lattice, and `t ∈ [0, 2]`.
pub fn draw_sample(rng: &mut ChaCha8Rng, lattice: &LatticeSpec, sampling: Sampling) -> Sample {
    let w = [small_rational(rng, 6, 4), small_rational(rng, 6, 4), small_rational(rng, 6, 4)];
    let mut g = GalileiElement::rational_rotation(w);
    g.time_shift = small_rational(rng, 8, 4);
    g.translation = [small_rational(rng, 8, 4), small_rational(rng, 8, 4), small_rational(rng, 8, 4)];
    if sampling == Sampling::General {
        let speed = rat(rng.gen_range(4..=16), 8);
        let dir = GalileiElement::rational_rotation([
            small_rational(rng, 6, 4),
            small_rational(rng, 6, 4),
            small_rational(rng, 6, 4),
        ]);
        g.boost = [
            &dir.rotation[0][0] * &speed,
            &dir.rotation[1][0] * &speed,
            &dir.rotation[2][0] * &speed,
        ];
    }
    let n = lattice.points_per_side as i64;
    let mut x: Vec3<Rational> = [int(0), int(0), int(0)];
    for xi in x.iter_mut().take(lattice.dimension) {
        *xi = &lattice.side_length * rat(rng.gen_range(0..n), n);
    }
    let t = rat(rng.gen_range(0..=128), 64);
    Sample { g, x, t }
}

/// Whether `e^{imγ}` and `e^{−imγ}` differ, compared as exact phase symbols.
pub fn phases_differ(mass: &Rational, gamma: &Rational) -> bool {
    let theta = mass * gamma;
    Coeff::exp_i_radians(&theta) != Coeff::exp_i_radians(&-theta)
}

/// Compares the phases of `ξ` and `ξ†` over `samples` seeded draws; the
/// verdict passes when the outcome is the expected one for the mass
/// (incompatible iff `m ≠ 0`).
pub fn hermiticity_compatible(
    law: &TransformLaw,
    lattice: &LatticeSpec,
    samples: usize,
    seed: u64,
    sampling: Sampling,
) -> Result<Verdict> {
    if samples == 0 {
        return Err(Error::Input("at least one sample is required".into()));
    }
    let label = "S5-nogo";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Option<(usize, Sample, Rational)> = None;
    let mut boosted = 0usize;
    for k in 0..samples {
        let s = draw_sample(&mut rng, lattice, sampling);
        if s.g.boost.iter().any(|c| !c.is_zero()) {
            boosted += 1;
        }
        let gamma = s.gamma();
        if first.is_none() && phases_differ(&law.mass, &gamma) {
            first = Some((k, s, gamma));
        }
    }
    let reference = if sampling == Sampling::General {
        let r = reference_sample();
        let gamma = r.gamma();
        phases_differ(&law.mass, &gamma).then_some((r, gamma))
    } else {
        None
    };
    let outcome = if law.mass.is_zero() {
        Compatibility::Compatible
    } else if first.is_some() || reference.is_some() {
        Compatibility::Incompatible
    } else {
        Compatibility::InconclusiveUnderRestriction
    };
    let expected = if law.mass.is_zero() { Compatibility::Compatible } else { Compatibility::Incompatible };
    let mut v = match outcome {
        Compatibility::InconclusiveUnderRestriction => Verdict::inconclusive(
            label,
            format!("no witness among {samples} samples without boosts (gamma vanishes when v = 0)"),
        ),
        o if o == expected => Verdict::pass(label),
        o => Verdict::fail(label, format!("outcome {} for m = {}", o.as_str(), law.mass)),
    };
    if let Some((k, s, gamma)) = &first {
        v = v
            .with_witness(format!("sample {k}: {} gamma={gamma} m*gamma={}", s.describe(), &law.mass * gamma))
            .with_detail("first_sample_witness", json!(k))
            .with_detail("witness_gamma", json!(gamma.to_string()));
    } else if let Some((s, gamma)) = &reference {
        v = v.with_witness(format!("{} gamma={gamma}", s.describe()));
    }
    if let Some((_, gamma)) = &reference {
        v = v.with_detail("reference_gamma", json!(gamma.to_string()));
    }
    Ok(v
        .with_detail("outcome", json!(outcome.as_str()))
        .with_detail("mass", json!(law.mass.to_string()))
        .with_detail("spin2", json!(law.spin2()))
        .with_detail("samples", json!(samples))
        .with_detail("boosted_samples", json!(boosted)))
}

/// `ψ⁺ = (ξ + ξ†)/2` and `ψ⁻ = (ξ − ξ†)/2i`, each checked to be hermitian.
pub fn decompose_hermitian_pair(
    spec: &FieldSpec,
    p: &SpacetimePoint,
    stats: Statistics,
) -> Result<(OperatorExpr, OperatorExpr)> {
    let xi = build_field(spec, p, stats)?;
    let (plus, minus) = hermitian_parts(&xi)?;
    for (name, psi) in [("psi+", &plus), ("psi-", &minus)] {
        if psi.adjoint() != *psi {
            return Err(Error::Consistency(format!("{name} is not self-adjoint")));
        }
    }
    Ok((plus, minus))
}

fn hermitian_parts(xi: &OperatorExpr) -> Result<(OperatorExpr, OperatorExpr)> {
    let dag = xi.adjoint();
    let half = rat(1, 2);
    let plus = xi.add(&dag)?.scale_rational(&half);
    let minus_i_half = Coeff::from(Cyclotomic::i()).scale(&rat(-1, 2));
    let minus = xi.sub(&dag)?.scale(&minus_i_half);
    Ok((plus, minus))
}

/// First pair of words whose 2×2 minor `a_i b_j − a_j b_i` is nonzero, i.e.
/// a proof that `a` is not a multiple of `b`.
fn non_proportional_witness(a: &OperatorExpr, b: &OperatorExpr) -> Option<(String, String)> {
    let words: Vec<Vec<_>> = {
        let mut w: Vec<Vec<_>> = a.terms().map(|(w, _)| w.to_vec()).collect();
        w.extend(b.terms().map(|(w, _)| w.to_vec()));
        w.sort();
        w.dedup();
        w
    };
    for (i, wi) in words.iter().enumerate() {
        for wj in &words[i + 1..] {
            let minor = &(&a.coefficient(wi) * &b.coefficient(wj)) - &(&a.coefficient(wj) * &b.coefficient(wi));
            if !minor.is_zero() {
                return Some((format!("{wi:?}"), format!("{wj:?}")));
            }
        }
    }
    if b.is_zero() && !a.is_zero() {
        return Some(("nonzero image".into(), "zero operator".into()));
    }
    None
}

/// Applies a boost `v` at `t = 0` to `ψ⁺(x)`: the image is
/// `(e^{iθ} ξ(x) + e^{−iθ} ξ†(x))/2` with `θ = m v·x`. Passes when that image
/// is not a multiple of `ψ⁺(x)` for `m ≠ 0`, and is `ψ⁺(x)` itself for `m = 0`.
pub fn covariance_loss(spec: &FieldSpec, site: &[i64], boost: Vec3<Rational>, stats: Statistics) -> Result<Verdict> {
    let label = "S5-covariance";
    let p = spec.lattice.point(site, int(0));
    let mut x: Vec3<Rational> = [int(0), int(0), int(0)];
    for (xi, pi) in x.iter_mut().zip(p.position.iter()) {
        *xi = pi.clone();
    }
    let g = GalileiElement::boost(boost);
    let (x2, _) = g.act(&x, &int(0));
    if x2 != x {
        return Err(Error::Consistency("a pure boost at t = 0 must fix the point".into()));
    }
    let theta = &spec.mass * g.gamma(&Rational::one(), &x, &int(0));
    let (plus, _) = decompose_hermitian_pair(spec, &p, stats)?;
    let xi = build_field(spec, &p, stats)?;
    let image = xi
        .scale(&Coeff::exp_i_radians(&theta))
        .add(&xi.adjoint().scale(&Coeff::exp_i_radians(&-theta.clone())))?
        .scale_rational(&rat(1, 2));
    let witness = non_proportional_witness(&image, &plus);
    let mixes = witness.is_some();
    let ok = if theta.is_zero() { image == plus } else { mixes };
    let v = Verdict::check(label, ok, || {
        if theta.is_zero() {
            "zero phase but the transformed operator differs from psi+".into()
        } else {
            format!("theta = {theta} yet the transformed psi+ is a multiple of psi+")
        }
    })
    .with_detail("theta", json!(theta.to_string()))
    .with_detail("mixes_psi_minus", json!(mixes));
    Ok(match witness {
        Some((a, b)) if !theta.is_zero() && ok => v.with_detail("minor_words", json!([a, b])),
        _ => v,
    })
}

/// Exact spectral data of `M = m[[0, −i], [i, 0]]`.
#[derive(Clone, Debug)]
pub struct MassSpectrum {
    pub eigenvalues: [Rational; 2],
    /// Columns as `(component 0, component 1)`, unnormalized.
    pub eigenvectors: [[Cyclotomic; 2]; 2],
    /// `|v_i|² / |v|²` per eigenvector.
    pub weights: [[Rational; 2]; 2],
}

pub fn mass_matrix(m: &Rational) -> [[Cyclotomic; 2]; 2] {
    let mi = Cyclotomic::i().scale(m);
    [[Cyclotomic::zero(), -mi.clone()], [mi, Cyclotomic::zero()]]
}

pub fn mass_spectrum(m: &Rational) -> Result<MassSpectrum> {
    if m.is_zero() {
        return Err(Error::Input("mass must be nonzero".into()));
    }
    let mm = mass_matrix(m);
    let b = mm[0][1].clone();
    let lambdas = [m.abs(), -m.abs()];
    let mut vecs = Vec::new();
    let mut weights = Vec::new();
    for l in &lambdas {
        // (M − λ)v = 0 with v = (b, λ) since M has zero diagonal
        let v = [b.clone(), Cyclotomic::from_rational(l.clone())];
        for row in 0..2 {
            let lhs = &(&mm[row][0] * &v[0]) + &(&mm[row][1] * &v[1]);
            if lhs != v[row].scale(l) {
                return Err(Error::Consistency(format!("eigenvector check failed for eigenvalue {l}")));
            }
        }
        let n0 = v[0].norm_sqr().as_rational().ok_or_else(|| Error::Consistency("non-rational norm".into()))?;
        let n1 = v[1].norm_sqr().as_rational().ok_or_else(|| Error::Consistency("non-rational norm".into()))?;
        let total = &n0 + &n1;
        weights.push([&n0 / &total, &n1 / &total]);
        vecs.push(v);
    }
    let [v0, v1]: [[Cyclotomic; 2]; 2] = vecs.try_into().expect("two eigenvectors");
    let [w0, w1]: [[Rational; 2]; 2] = weights.try_into().expect("two weights");
    Ok(MassSpectrum { eigenvalues: lambdas, eigenvectors: [v0, v1], weights: [w0, w1] })
}

/// Diagonalizes the doubled mass matrix, then checks that the equal-weight
/// field `α = β = √(1/2)` has a vanishing Bose bracket and a Fermi bracket
/// equal to `δ` at every lattice pair.
pub fn doubled_mass_analysis(m: &Rational, lattice: &LatticeSpec) -> Result<Verdict> {
    let label = "S5-doubled";
    let spec = mass_spectrum(m)?;
    let half = rat(1, 2);
    let mut problems = Vec::new();
    if spec.eigenvalues[0] != -&spec.eigenvalues[1] || spec.eigenvalues[0] != m.abs() {
        problems.push(format!("eigenvalues {:?}", spec.eigenvalues));
    }
    if spec.weights.iter().flatten().any(|w| *w != half) {
        problems.push("eigenvector weights differ from 1/2".to_string());
    }
    let amp = Cyclotomic::sqrt_rational(&half);
    let field = FieldSpec::new(m.clone(), amp.clone(), amp, lattice.clone())?;
    let sites = lattice.sites();
    let mut bose_nonzero = 0usize;
    let mut fermi_mismatch = 0usize;
    for x in &sites {
        for y in &sites {
            let px = lattice.point(x, int(0));
            let py = lattice.point(y, int(0));
            let bose = equal_time_bracket(&field, &px, &py, Statistics::Bose)?;
            let fermi = equal_time_bracket(&field, &px, &py, Statistics::Fermi)?;
            if !bose.is_zero() {
                bose_nonzero += 1;
            }
            let delta = if x == y { Coeff::one() } else { Coeff::zero() };
            if fermi != delta {
                fermi_mismatch += 1;
            }
        }
    }
    if bose_nonzero > 0 {
        problems.push(format!("Bose bracket nonzero at {bose_nonzero} pair(s)"));
    }
    if fermi_mismatch > 0 {
        problems.push(format!("Fermi bracket differs from delta at {fermi_mismatch} pair(s)"));
    }
    let v = if problems.is_empty() { Verdict::pass(label) } else { Verdict::fail(label, problems.join("; ")) };
    Ok(v.with_detail("eigenvalues", json!([spec.eigenvalues[0].to_string(), spec.eigenvalues[1].to_string()]))
        .with_detail(
            "weights",
            json!(spec.weights.iter().map(|w| [w[0].to_string(), w[1].to_string()]).collect::<Vec<_>>()),
        )
        .with_detail("pairs", json!(sites.len() * sites.len())))
}

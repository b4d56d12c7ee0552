//! The named verification suites and the batch runner.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{Suite, SuiteConfig};
use crate::error::Result;
use crate::exact::{int, rat, Rational};
use crate::field::{counterexample_report, FieldSpec, LatticeSpec, PairSweep};
use crate::galilei::{
    bch_crosscheck, centrality_check, cocycle_difference, cocycle_exponent, jacobi_check, sample_points,
    AlgebraTable, GalileiElement, OneParam,
};
use crate::nogo::{covariance_loss, doubled_mass_analysis, hermiticity_compatible, Sampling, TransformLaw};
use crate::reps::{quaternion, quaternion_axis_angle, quaternion_mul, reality_class, CMatrix, RealityClass, SpinRep};
use crate::schwinger::{
    check_t1, check_t2, check_t5, classify, lagrangian_kin, spin_statistics_verdict, ComponentClass, FieldClass,
    Parity, UMatrixSet,
};
use crate::verdict::{Status, Verdict};

/// Verdicts of one suite, in emission order.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: Suite,
    pub verdicts: Vec<Verdict>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_pass)
    }
}

/// Runs the configured suites in declared order. Each suite draws from its
/// own stream derived from the master seed, so parallel execution yields the
/// same verdicts.
pub fn run(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    let one = |s: &Suite| SuiteResult { suite: *s, verdicts: run_suite(*s, cfg) };
    if cfg.parallel {
        cfg.suites.par_iter().map(one).collect()
    } else {
        cfg.suites.iter().map(one).collect()
    }
}

pub fn suite_seed(cfg: &SuiteConfig, suite: Suite) -> u64 {
    cfg.seed ^ suite.seed_offset().wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(cfg, suite));
    let timed = |label: &str, f: &mut dyn FnMut() -> Result<Verdict>| -> Verdict {
        let start = Instant::now();
        let mut v = f().unwrap_or_else(|e| Verdict::fail(label, e.to_string()));
        v.seconds = start.elapsed().as_secs_f64();
        v
    };
    match suite {
        Suite::Counterexample => vec![timed("S2-counterexample", &mut || counterexample(cfg))],
        Suite::Cocycle => vec![
            timed("S4-cocycle", &mut || Ok(cocycle_independence(cfg, &mut rng))),
            timed("S4-cocycle-boost-translation", &mut || Ok(boost_translation(cfg, &mut rng))),
            timed("S4-cocycle-identity", &mut || Ok(cocycle_identity(cfg, &mut rng))),
        ],
        Suite::Algebra => {
            let g = &cfg.galilei_table;
            let p = &cfg.poincare_table;
            vec![
                timed("jacobi", &mut || Ok(jacobi_check(g))),
                timed("jacobi", &mut || Ok(jacobi_check(p))),
                timed("centrality", &mut || Ok(centrality_check(g, "M"))),
                timed("centrality", &mut || Ok(no_central_element(p))),
                timed("bch", &mut || Ok(bch_all(g, cfg.tolerances.bch))),
            ]
        }
        Suite::Reps => vec![
            timed("reps:su2", &mut || Ok(su2_relations())),
            timed("reps:rotation", &mut || Ok(rotation_properties(&mut rng))),
            timed("reps:two-pi-sign", &mut || Ok(two_pi_signs())),
            timed("T6-reality", &mut || Ok(reality_candidates())),
        ],
        Suite::Schwinger => {
            let u = &cfg.u_matrices;
            vec![
                timed("T1", &mut || Ok(check_t1(u))),
                timed("T2", &mut || Ok(check_t2(u))),
                timed("T1=>T2", &mut || Ok(t1_implies_t2(cfg.samples.random_matrices, &mut rng))),
                timed("T3-classify", &mut || Ok(classification(u))),
                timed("T4-lagrangian", &mut || lagrangian_cancellation(cfg.samples.lagrangian, &mut rng)),
                timed("T5", &mut || t5_fixtures()),
                timed("T7", &mut || Ok(truth_table())),
            ]
        }
        Suite::Nogo => {
            let seed = rng.gen();
            let mut out = vec![timed("S5-nogo", &mut || {
                hermiticity_compatible(
                    &TransformLaw::new(cfg.mass.clone(), cfg.spin2),
                    &cfg.lattice,
                    cfg.samples.nogo,
                    seed,
                    Sampling::General,
                )
            })];
            if !cfg.mass.is_zero() {
                out.push(timed("S5-covariance", &mut || covariance(cfg)));
                out.push(timed("S5-doubled", &mut || doubled_mass_analysis(&cfg.mass, &cfg.lattice)));
            }
            out
        }
    }
}

fn counterexample(cfg: &SuiteConfig) -> Result<Verdict> {
    let spec = FieldSpec::new(
        cfg.mass_or_one(),
        cfg.alpha.to_cyclotomic(),
        cfg.beta.to_cyclotomic(),
        cfg.lattice.clone(),
    )?;
    let mut v = counterexample_report(&spec, &cfg.time, PairSweep::All)?;
    if cfg.confirm_3d {
        let lattice = LatticeSpec::new(3, 4, cfg.lattice.side_length.clone())?;
        let spec3 = FieldSpec { lattice, ..spec };
        let c = counterexample_report(&spec3, &cfg.time, PairSweep::Anchored)?;
        v = v.with_detail(
            "confirmation_3d",
            json!({ "status": c.status, "pairs": c.details["pairs"], "witness": c.witness }),
        );
        if !c.is_pass() {
            v.status = Status::Fail;
            v.witness = Some(format!("d=3 N=4: {}", c.witness.unwrap_or_default()));
        }
    }
    Ok(v)
}

impl SuiteConfig {
    /// The field suites need `m ≠ 0`; a massless configuration falls back to 1.
    fn mass_or_one(&self) -> Rational {
        if self.mass.is_zero() {
            int(1)
        } else {
            self.mass.clone()
        }
    }
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, r: f64) -> [f64; 3] {
    [rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r)]
}

pub fn random_element(rng: &mut ChaCha8Rng) -> GalileiElement<f64> {
    let axis = unit_vector(rng);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut g = GalileiElement::rotation_axis_angle(axis, angle).expect("unit axis");
    g.time_shift = rng.gen_range(-2.0..2.0);
    g.translation = random_vec(rng, 2.0);
    g.boost = random_vec(rng, 2.0);
    g
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

pub fn random_rational_element(rng: &mut ChaCha8Rng) -> GalileiElement<Rational> {
    let mut g = GalileiElement::rational_rotation([random_rational(rng), random_rational(rng), random_rational(rng)]);
    g.time_shift = random_rational(rng);
    g.translation = [random_rational(rng), random_rational(rng), random_rational(rng)];
    g.boost = [random_rational(rng), random_rational(rng), random_rational(rng)];
    g
}

fn cocycle_independence(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Verdict {
    let tol = cfg.tolerances.cocycle;
    let pts = sample_points::<f64>();
    let mut worst = 0.0f64;
    let mut failure = None;
    for k in 0..cfg.samples.cocycle_pairs {
        let (g, h) = (random_element(rng), random_element(rng));
        let d: Vec<f64> = pts.iter().map(|(x, t)| cocycle_difference(&g, &h, x, t)).collect();
        let spread = d.iter().map(|v| (v - d[0]).abs()).fold(0.0, f64::max);
        worst = worst.max(spread);
        if spread > tol && failure.is_none() {
            failure = Some(format!("pair {k}: spread {spread:e}"));
        }
        let (gq, hq) = (random_rational_element(rng), random_rational_element(rng));
        if let Err(e) = cocycle_exponent(&gq, &hq, &int(1), 0.0) {
            failure.get_or_insert(format!("exact pair {k}: {e}"));
        }
    }
    let v = match failure {
        None => Verdict::pass("S4-cocycle"),
        Some(w) => Verdict::fail("S4-cocycle", w),
    };
    v.with_residual(worst).with_detail("pairs", json!(cfg.samples.cocycle_pairs))
}

fn boost_translation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Verdict {
    let m = cfg.mass_or_one();
    let v = [random_rational(rng), random_rational(rng), random_rational(rng)];
    let a = [random_rational(rng), random_rational(rng), random_rational(rng)];
    let g = GalileiElement::boost(v.clone());
    let h = GalileiElement::translation(a.clone());
    let expected: Rational = &m * (&v[0] * &a[0] + &v[1] * &a[1] + &v[2] * &a[2]);
    let label = "S4-cocycle-boost-translation";
    let exact = match cocycle_exponent(&g, &h, &m, 0.0) {
        Ok(z) => z,
        Err(e) => return Verdict::fail(label, e.to_string()),
    };
    let float = cocycle_exponent(&g.to_f64(), &h.to_f64(), &crate::galilei::Scalar::to_f64(&m), cfg.tolerances.cocycle);
    let to_f = |q: &Rational| crate::galilei::Scalar::to_f64(q);
    let residual = match &float {
        Ok(z) => (z - to_f(&expected)).abs(),
        Err(_) => f64::INFINITY,
    };
    let ok = exact == expected && residual <= cfg.tolerances.cocycle;
    Verdict::check(label, ok, || format!("zeta = {exact} (float {float:?}), m v.a' = {expected}"))
        .with_residual(if residual.is_finite() { residual } else { f64::MAX })
        .with_detail("zeta", json!(exact.to_string()))
        .with_detail("nonzero", json!(!exact.is_zero()))
}

fn zeta(g: &GalileiElement<f64>, h: &GalileiElement<f64>, tol: f64) -> Result<f64> {
    cocycle_exponent(g, h, &1.0, tol)
}

fn cocycle_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Verdict {
    let label = "S4-cocycle-identity";
    let tol = cfg.tolerances.cocycle_identity;
    let mut worst = 0.0f64;
    let e = GalileiElement::<f64>::identity();
    for k in 0..cfg.samples.cocycle_triples {
        let (a, b, c) = (random_element(rng), random_element(rng), random_element(rng));
        let r = (|| -> Result<f64> {
            let lhs = zeta(&a, &b, tol)? + zeta(&a.compose(&b), &c, tol)?;
            let rhs = zeta(&a, &b.compose(&c), tol)? + zeta(&b, &c, tol)?;
            let unit = zeta(&a, &e, tol)?.abs().max(zeta(&e, &a, tol)?.abs());
            Ok((lhs - rhs).abs().max(unit))
        })();
        match r {
            Ok(d) => {
                worst = worst.max(d);
                if d > tol {
                    return Verdict::fail(label, format!("triple {k}: defect {d:e}")).with_residual(d);
                }
            }
            Err(err) => return Verdict::fail(label, format!("triple {k}: {err}")),
        }
    }
    Verdict::pass(label).with_residual(worst).with_detail("triples", json!(cfg.samples.cocycle_triples))
}

fn no_central_element(table: &AlgebraTable) -> Verdict {
    let label = format!("centrality:{}", table.name());
    let central: Vec<String> =
        table.labels().iter().filter(|z| centrality_check(table, z).is_pass()).cloned().collect();
    let v = if central.is_empty() {
        Verdict::pass(label)
    } else {
        Verdict::fail(label, format!("central element(s) {}", central.join(", ")))
    };
    v.with_detail("candidates", json!(table.labels()))
}

fn bch_all(table: &AlgebraTable, tol: f64) -> Verdict {
    let label = format!("bch:{}", table.name());
    let gens = OneParam::all();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            checked += 1;
            match bch_crosscheck(*x, *y, table, tol) {
                Ok(v) => {
                    worst = worst.max(v.residual.unwrap_or(0.0));
                    if !v.is_pass() {
                        failures.push(format!("[{x},{y}]: {}", v.witness.unwrap_or_default()));
                    }
                }
                Err(e) => failures.push(format!("[{x},{y}]: {e}")),
            }
        }
    }
    let v = if failures.is_empty() { Verdict::pass(label) } else { Verdict::fail(label, failures.join("; ")) };
    v.with_residual(worst).with_detail("pairs", json!(checked))
}

const MAX_SPIN2: u32 = 6;

fn su2_relations() -> Verdict {
    let mut worst = 0.0f64;
    let i = Complex64::new(0.0, 1.0);
    for spin2 in 0..=MAX_SPIN2 {
        let r = SpinRep::new(spin2);
        let [x, y, z] = r.generators();
        let s = r.spin();
        let id = CMatrix::identity(r.dim(), r.dim());
        let residuals = [
            (x * y - y * x - z * i).camax(),
            (y * z - z * y - x * i).camax(),
            (z * x - x * z - y * i).camax(),
            (x * x + y * y + z * z - &id * Complex64::new(s * (s + 1.0), 0.0)).camax(),
        ];
        let diag = (0..r.dim()).map(|k| (z[(k, k)].re - (s - k as f64)).abs()).fold(0.0, f64::max);
        worst = residuals.into_iter().fold(worst.max(diag), f64::max);
    }
    Verdict::check("reps:su2", worst <= 1e-12, || format!("largest defect {worst:e}"))
        .with_residual(worst)
        .with_detail("max_spin2", json!(MAX_SPIN2))
}

fn rotation_properties(rng: &mut ChaCha8Rng) -> Verdict {
    let mut unitary = 0.0f64;
    let mut group = 0.0f64;
    for spin2 in 0..=MAX_SPIN2 {
        let r = SpinRep::new(spin2);
        let id = CMatrix::identity(r.dim(), r.dim());
        for _ in 0..10 {
            let (a, ta) = (unit_vector(rng), rng.gen_range(0.0..std::f64::consts::TAU));
            let (b, tb) = (unit_vector(rng), rng.gen_range(0.0..std::f64::consts::TAU));
            let da = r.rotation_matrix(a, ta).expect("unit axis");
            let db = r.rotation_matrix(b, tb).expect("unit axis");
            let inv = r.rotation_matrix(a, -ta).expect("unit axis");
            unitary = unitary.max((da.adjoint() * &da - &id).camax()).max((&inv - da.adjoint()).camax());
            let (axis, angle) = quaternion_axis_angle(quaternion_mul(quaternion(a, ta), quaternion(b, tb)));
            let dab = r.rotation_matrix(axis, angle).expect("unit axis");
            group = group.max((da * db - dab).camax());
        }
    }
    let ok = unitary <= 1e-10 && group <= 1e-9;
    Verdict::check("reps:rotation", ok, || format!("unitarity defect {unitary:e}, group law defect {group:e}"))
        .with_residual(unitary.max(group))
}

fn two_pi_signs() -> Verdict {
    let mut table = Vec::new();
    let mut bad = Vec::new();
    for spin2 in 0..=MAX_SPIN2 {
        let want = if spin2 % 2 == 0 { 1 } else { -1 };
        match SpinRep::new(spin2).two_pi_sign() {
            Ok(s) => {
                table.push(json!([spin2, s]));
                if s != want {
                    bad.push(format!("spin {spin2}/2 gave {s}"));
                }
            }
            Err(e) => bad.push(format!("spin {spin2}/2: {e}")),
        }
    }
    let v = if bad.is_empty() { Verdict::pass("reps:two-pi-sign") } else { Verdict::fail("reps:two-pi-sign", bad.join("; ")) };
    v.with_detail("signs", json!(table))
}

fn reality_candidates() -> Verdict {
    let mut table = Vec::new();
    let mut bad = Vec::new();
    for spin2 in 0..=MAX_SPIN2 {
        let r = SpinRep::new(spin2);
        let classes: Vec<RealityClass> = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
            .iter()
            .map(|p| reality_class(&r.timereversal_candidate(*p)))
            .collect();
        let flipped = matches!(
            (classes[0], classes[1]),
            (RealityClass::Real, RealityClass::Imaginary) | (RealityClass::Imaginary, RealityClass::Real)
        );
        if !flipped {
            bad.push(format!("spin {spin2}/2: phases 1 and i give {} and {}", classes[0], classes[1]));
        }
        table.push(json!({ "spin2": spin2, "phase_1": classes[0].to_string(), "phase_i": classes[1].to_string() }));
    }
    let v = if bad.is_empty() { Verdict::pass("T6-reality") } else { Verdict::fail("T6-reality", bad.join("; ")) };
    v.with_detail("candidates", json!(table))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_anti_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    &a - a.adjoint()
}

fn t1_implies_t2(count: usize, rng: &mut ChaCha8Rng) -> Verdict {
    let label = "T1=>T2";
    let mut worst = 0.0f64;
    for k in 0..count {
        let n = rng.gen_range(1..=6);
        let u = UMatrixSet::new(vec![random_anti_hermitian(rng, n)]).expect("square");
        let t1 = check_t1(&u);
        let t2 = check_t2(&u);
        worst = worst.max(t2.residual.unwrap_or(0.0));
        if !t1.is_pass() || !t2.is_pass() {
            return Verdict::fail(label, format!("matrix {k}: T1 {} T2 {}", t1.status, t2.status)).with_residual(worst);
        }
    }
    Verdict::pass(label).with_residual(worst).with_detail("matrices", json!(count))
}

fn classification(u: &UMatrixSet) -> Verdict {
    match classify(u) {
        Ok(c) => {
            let names: Vec<String> = c
                .components
                .iter()
                .map(|k| match k {
                    ComponentClass::Field(f) => f.to_string(),
                    ComponentClass::Unconstrained => "unconstrained".into(),
                })
                .collect();
            Verdict::pass("T3-classify").with_detail("components", json!(names)).with_detail("blocks", json!(c.blocks))
        }
        Err(e) => Verdict::fail("T3-classify", e.to_string()),
    }
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    &a + a.transpose()
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    &a - a.transpose()
}

fn lagrangian_cancellation(count: usize, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let label = "T4-lagrangian";
    let mut nonzero_matched = 0;
    for k in 0..count {
        let n = rng.gen_range(2..=6);
        let mu = rng.gen_range(1..=4);
        let sym = UMatrixSet::new((0..mu).map(|_| random_symmetric(rng, n)).collect())?;
        let anti = UMatrixSet::new((0..mu).map(|_| random_antisymmetric(rng, n)).collect())?;
        let even = vec![Parity::Commuting; n];
        let odd = vec![Parity::Anticommuting; n];
        let checks = [
            (lagrangian_kin(&sym, &even)?, true, "symmetric U, commuting fields"),
            (lagrangian_kin(&anti, &odd)?, true, "antisymmetric U, anticommuting fields"),
            (lagrangian_kin(&sym, &odd)?, false, "symmetric U, anticommuting fields"),
            (lagrangian_kin(&anti, &even)?, false, "antisymmetric U, commuting fields"),
        ];
        for (poly, should_vanish, what) in checks {
            if should_vanish && !poly.is_zero() {
                return Ok(Verdict::fail(label, format!("case {k} ({what}, n={n}): {} surviving word(s)", poly.len())));
            }
            if !should_vanish {
                if poly.is_zero() {
                    return Ok(Verdict::fail(label, format!("case {k} ({what}, n={n}) vanished")));
                }
                nonzero_matched += 1;
            }
        }
    }
    Ok(Verdict::pass(label).with_detail("cases", json!(count)).with_detail("nonzero_matched", json!(nonzero_matched)))
}

fn t5_fixtures() -> Result<Verdict> {
    let c = |re, im| Complex64::new(re, im);
    let sigma_y = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let isx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(0., 1.), c(0., 0.)]);
    let u = UMatrixSet::new(vec![CMatrix::zeros(2, 2), isx])?;
    let good = check_t5(&sigma_y, &u, FieldClass::Fermi)?;
    let real_d = &sigma_y * c(0., 1.);
    let mismatch = check_t5(&real_d, &u, FieldClass::Fermi)?;
    let ok = good.is_pass() && !mismatch.is_pass();
    Ok(Verdict::check("T5", ok, || {
        format!("fixture {} / class-mismatch fixture {}", good.status, mismatch.status)
    })
    .with_residual(good.residual.unwrap_or(0.0))
    .with_detail("fixture", json!(good.status))
    .with_detail("class_mismatch", json!({ "status": mismatch.status, "witness": mismatch.witness })))
}

fn truth_table() -> Verdict {
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for spin2 in [0u32, 1] {
        for cls in [FieldClass::Fermi, FieldClass::Bose] {
            for d in [RealityClass::Real, RealityClass::Imaginary] {
                let want = (spin2 == 1 && cls == FieldClass::Fermi && d == RealityClass::Imaginary)
                    || (spin2 == 0 && cls == FieldClass::Bose && d == RealityClass::Real);
                let v = spin_statistics_verdict(spin2, cls, d);
                if v.is_pass() != want {
                    bad.push(format!("spin {spin2}/2 {cls} {d}"));
                }
                rows.push(json!([spin2, cls.to_string(), d.to_string(), v.status]));
            }
        }
    }
    let v = if bad.is_empty() { Verdict::pass("T7") } else { Verdict::fail("T7", bad.join("; ")) };
    v.with_detail("cases", json!(rows))
}

fn covariance(cfg: &SuiteConfig) -> Result<Verdict> {
    let spec = FieldSpec::new(cfg.mass.clone(), crate::exact::Cyclotomic::one(), crate::exact::Cyclotomic::zero(), cfg.lattice.clone())?;
    let mut site = vec![0i64; cfg.lattice.dimension];
    site[0] = 1;
    covariance_loss(&spec, &site, [int(1), int(0), int(0)], crate::op_algebra::Statistics::Bose)
}

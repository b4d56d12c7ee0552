//! End-to-end acceptance checks. Run with `--nocapture` to see one line per
//! criterion; the test fails if any criterion does.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use galspin::exact::{int, rat, Cyclotomic, Rational};
use galspin::field::{counterexample_report, FieldSpec, LatticeSpec, PairSweep};
use galspin::galilei::{
    bch_crosscheck, centrality_check, cocycle_difference, cocycle_exponent, jacobi_check, sample_points,
    AlgebraTable, GalileiElement, OneParam,
};
use galspin::nogo::{doubled_mass_analysis, hermiticity_compatible, mass_spectrum, Sampling, TransformLaw};
use galspin::op_algebra::fock::matrix_element;
use galspin::op_algebra::{Monomial, OperatorExpr, Statistics};
use galspin::reps::{reality_class, CMatrix, RealityClass, SpinRep};
use galspin::schwinger::{
    check_t1, check_t2, check_t5, classify, lagrangian_kin, spin_statistics_verdict, ComponentClass, FieldClass,
    Parity, UMatrixSet,
};
use galspin::suites::{random_anti_hermitian, random_antisymmetric, random_element, random_symmetric};
use galspin::verdict::Status;
use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 20240601;

const COCYCLE_TOL: f64 = 1e-10;
const COCYCLE_IDENTITY_TOL: f64 = 1e-9;
const BCH_TOL: f64 = 1e-6;
const FOCK_TOL: f64 = 1e-12;
const SU2_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ offset)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn amp(re: (i64, i64), im: (i64, i64)) -> Cyclotomic {
    Cyclotomic::complex(rat(re.0, re.1), rat(im.0, im.1))
}

/// Twenty weight pairs; the first five have `|α| = |β|`.
fn weight_pairs() -> Vec<(Cyclotomic, Cyclotomic)> {
    let h = Cyclotomic::sqrt_rational(&rat(1, 2));
    let rot = |z: Cyclotomic, p: Rational| z * Cyclotomic::exp_i_pi(&p);
    vec![
        (Cyclotomic::one(), Cyclotomic::one()),
        (h.clone(), h.clone()),
        (amp((3, 5), (0, 1)), amp((3, 5), (0, 1))),
        (amp((3, 5), (4, 5)), amp((4, 5), (-3, 5))),
        (rot(h.clone(), rat(1, 3)), rot(h.clone(), rat(-1, 4))),
        (amp((3, 5), (0, 1)), amp((4, 5), (0, 1))),
        (amp((4, 5), (0, 1)), amp((3, 5), (0, 1))),
        (Cyclotomic::one(), Cyclotomic::zero()),
        (Cyclotomic::zero(), Cyclotomic::one()),
        (amp((1, 2), (1, 2)), amp((1, 3), (0, 1))),
        (amp((0, 1), (2, 1)), amp((1, 1), (0, 1))),
        (amp((-1, 3), (1, 4)), amp((2, 7), (-1, 2))),
        (rot(Cyclotomic::one(), rat(1, 6)), amp((1, 2), (0, 1))),
        (amp((5, 13), (12, 13)), amp((0, 1), (1, 5))),
        (rot(amp((2, 3), (0, 1)), rat(3, 4)), rot(amp((1, 3), (0, 1)), rat(1, 5))),
        (amp((2, 1), (0, 1)), amp((0, 1), (-1, 1))),
        (amp((1, 5), (0, 1)), amp((7, 5), (1, 5))),
        (h.clone(), Cyclotomic::zero()),
        (amp((3, 4), (-1, 4)), rot(h, rat(2, 3))),
        (amp((-2, 3), (0, 1)), amp((1, 6), (5, 6))),
    ]
}

fn criterion_1() -> Outcome {
    let masses = [int(1), rat(3, 2), int(-1), rat(1, 3)];
    let times = [int(0), rat(1, 3), rat(-5, 2)];
    let lattice = LatticeSpec::new(1, 16, int(1)).map_err(|e| e.to_string())?;
    let pairs = weight_pairs();
    let mut zero_bose = 0;
    for (k, (a, b)) in pairs.iter().enumerate() {
        let spec = FieldSpec::new(masses[k % 4].clone(), a.clone(), b.clone(), lattice.clone()).map_err(|e| e.to_string())?;
        let v = counterexample_report(&spec, &times[k % 3], PairSweep::All).map_err(|e| e.to_string())?;
        ensure(v.is_pass(), || format!("pair {k}: {}", v.witness.clone().unwrap_or_default()))?;
        ensure(v.details["pairs"] == 256, || format!("pair {k}: swept {} pairs", v.details["pairs"]))?;
        if a.norm_sqr() == b.norm_sqr() {
            let table = v.details["commutator_table"].as_array().unwrap();
            ensure(table.iter().all(|row| row[2] == "0"), || format!("pair {k}: nonzero Bose entry"))?;
            zero_bose += 1;
        }
    }
    ensure(zero_bose == 5, || format!("{zero_bose} pairs with |a|=|b|, expected 5"))?;
    let l3 = LatticeSpec::new(3, 4, int(1)).map_err(|e| e.to_string())?;
    let (a, b) = pairs[3].clone();
    let spec = FieldSpec::new(int(1), a, b, l3).map_err(|e| e.to_string())?;
    let v = counterexample_report(&spec, &rat(1, 3), PairSweep::Anchored).map_err(|e| e.to_string())?;
    ensure(v.is_pass(), || format!("d=3: {}", v.witness.clone().unwrap_or_default()))?;
    Ok(format!("{} weight pairs on d=1 N=16, {zero_bose} with vanishing commutator, d=3 N=4 confirmed", pairs.len()))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let fock = [DenseFock::new(Statistics::Bose, 6), DenseFock::new(Statistics::Fermi, 6)];
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let stats = if k % 2 == 0 { Statistics::Bose } else { Statistics::Fermi };
        let monos = random_monomials(&mut r);
        let e = OperatorExpr::from_monomials(space(), stats, monos.clone()).map_err(|e| e.to_string())?;
        let again = OperatorExpr::from_monomials(space(), stats, e.monomials()).map_err(|e| e.to_string())?;
        ensure(again == e, || format!("expression {k}: normal order not idempotent"))?;
        ensure(e.adjoint().adjoint() == e, || format!("expression {k}: adjoint not an involution"))?;
        let (b, d) = (random_expr(&mut r, stats), random_expr(&mut r, stats));
        let s = random_coeff(&mut r);
        let lhs = e.scale(&s).add(&d).and_then(|x| x.bracket(&b, stats)).map_err(|e| e.to_string())?;
        let rhs = e
            .bracket(&b, stats)
            .and_then(|x| x.scale(&s).add(&d.bracket(&b, stats)?))
            .map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("expression {k}: bracket not linear"))?;
        if stats == Statistics::Fermi {
            let l = random_ladder(&mut r, 3);
            let sq = OperatorExpr::from_monomials(space(), stats, [Monomial::new(galspin::exact::Coeff::one(), vec![l, l])])
                .map_err(|e| e.to_string())?;
            ensure(sq.is_zero(), || format!("expression {k}: {l:?} squared is nonzero"))?;
        }
        let f = &fock[k % 2];
        for ket in 0..f.dim {
            let occ = f.occupations(ket);
            if occ.iter().any(|&n| n > 1) {
                continue;
            }
            let out = f.apply(&monos, &f.basis(ket));
            for bra in 0..f.dim {
                let sym = matrix_element(&e, &fock_state(&f.occupations(bra)), &fock_state(&occ));
                worst = worst.max((sym - out[bra]).norm());
            }
        }
        let vac = e.vacuum_expect().to_complex();
        worst = worst.max((vac - f.apply(&monos, &f.basis(0))[0]).norm());
    }
    ensure(worst <= FOCK_TOL, || format!("dense Fock disagreement {worst:e}"))?;
    Ok(format!("1000 expressions, Fock oracle max deviation {worst:.1e}"))
}

fn mutant_fails(mut t: AlgebraTable, x: &str, y: &str, rhs: &[(Rational, &str)]) -> Result<(), String> {
    t.set(x, y, rhs).map_err(|e| e.to_string())?;
    let v = jacobi_check(&t);
    ensure(v.status == Status::Fail && v.details.contains_key("triple"), || format!("mutant of {} not caught", t.name()))
}

fn criterion_3() -> Outcome {
    let g = AlgebraTable::extended_galilei();
    let p = AlgebraTable::poincare();
    for t in [&g, &p] {
        let v = jacobi_check(t);
        ensure(v.is_pass(), || format!("{}: {}", t.name(), v.witness.clone().unwrap_or_default()))?;
    }
    ensure(centrality_check(&g, "M").is_pass(), || "M not central".into())?;
    mutant_fails(g.clone(), "K1", "H", &[(int(1), "P2")])?;
    mutant_fails(p.clone(), "K1", "P2", &[(int(1), "H")])?;

    let mut r = rng(3);
    let pts = sample_points::<f64>();
    let mut spread = 0.0f64;
    for _ in 0..1000 {
        let (a, b) = (random_element(&mut r), random_element(&mut r));
        let d: Vec<f64> = pts.iter().map(|(x, t)| cocycle_difference(&a, &b, x, t)).collect();
        spread = d.iter().map(|v| (v - d[0]).abs()).fold(spread, f64::max);
    }
    ensure(spread <= COCYCLE_TOL, || format!("cocycle spread {spread:e}"))?;

    let m = rat(3, 2);
    let v = [rat(1, 2), int(-2), rat(3, 4)];
    let a = [int(3), rat(1, 5), int(-1)];
    let expected: Rational = &m * (&v[0] * &a[0] + &v[1] * &a[1] + &v[2] * &a[2]);
    let (bq, tq) = (GalileiElement::boost(v), GalileiElement::translation(a));
    let exact = cocycle_exponent(&bq, &tq, &m, 0.0).map_err(|e| e.to_string())?;
    ensure(exact == expected, || format!("zeta {exact} vs m v.a' {expected}"))?;
    let (bf, tf) = (bq.to_f64(), tq.to_f64());
    let m_f = 1.5;
    let zeta_f = cocycle_exponent(&bf, &tf, &m_f, COCYCLE_TOL).map_err(|e| e.to_string())?;
    let delta_f = m_f * cocycle_difference(&bf, &tf, &[0.7, -0.2, 1.1], &0.4);
    let bt = (zeta_f - delta_f).abs().max((zeta_f - galspin::galilei::Scalar::to_f64(&expected)).abs());
    ensure(bt <= COCYCLE_TOL, || format!("boost-translation residual {bt:e}"))?;

    let e = GalileiElement::<f64>::identity();
    let z = |x: &GalileiElement<f64>, y: &GalileiElement<f64>| cocycle_exponent(x, y, &1.0, COCYCLE_IDENTITY_TOL);
    let mut defect = 0.0f64;
    for k in 0..200 {
        let (a, b, c) = (random_element(&mut r), random_element(&mut r), random_element(&mut r));
        let d = (|| -> galspin::Result<f64> {
            let lhs = z(&a, &b)? + z(&a.compose(&b), &c)?;
            let rhs = z(&a, &b.compose(&c))? + z(&b, &c)?;
            Ok((lhs - rhs).abs().max(z(&a, &e)?.abs()).max(z(&e, &a)?.abs()))
        })()
        .map_err(|err| format!("triple {k}: {err}"))?;
        defect = defect.max(d);
    }
    ensure(defect <= COCYCLE_IDENTITY_TOL, || format!("2-cocycle defect {defect:e}"))?;

    let gens = OneParam::all();
    let mut bch = 0.0f64;
    let mut count = 0;
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            let v = bch_crosscheck(*x, *y, &g, BCH_TOL).map_err(|e| e.to_string())?;
            ensure(v.is_pass(), || format!("bch [{x},{y}]: {}", v.witness.clone().unwrap_or_default()))?;
            bch = bch.max(v.residual.unwrap_or(0.0));
            count += 1;
        }
    }
    Ok(format!(
        "Jacobi and centrality exact, mutants caught, cocycle spread {spread:.1e}, triple defect {defect:.1e}, {count} BCH pairs within {bch:.1e}"
    ))
}

fn criterion_4() -> Outcome {
    let i = c(0.0, 1.0);
    let mut worst = 0.0f64;
    for spin2 in 0..=6u32 {
        let r = SpinRep::new(spin2);
        let [x, y, z] = r.generators();
        let s = r.spin();
        let id = CMatrix::identity(r.dim(), r.dim());
        worst = worst
            .max((x * y - y * x - z * i).camax())
            .max((y * z - z * y - x * i).camax())
            .max((z * x - x * z - y * i).camax())
            .max((x * x + y * y + z * z - &id * c(s * (s + 1.0), 0.0)).camax());
        let want = if spin2 % 2 == 0 { 1 } else { -1 };
        let sign = r.two_pi_sign().map_err(|e| e.to_string())?;
        ensure(sign == want, || format!("two_pi_sign for spin {spin2}/2 is {sign}"))?;
    }
    ensure(worst <= SU2_TOL, || format!("su(2) defect {worst:e}"))?;

    let mut r = rng(4);
    let nonzero_real = |r: &mut ChaCha8Rng| -> f64 {
        let v = r.gen_range(1..=5) as f64;
        if r.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    for k in 0..100 {
        let n = r.gen_range(2..=5);
        let base = CMatrix::from_fn(n, n, |_, _| c(nonzero_real(&mut r), 0.0));
        let (m, want) = match k % 3 {
            0 => (base, RealityClass::Real),
            1 => (base * i, RealityClass::Imaginary),
            _ => {
                let (row, col) = loop {
                    let rc = (r.gen_range(0..n), r.gen_range(0..n));
                    if rc != (0, 0) {
                        break rc;
                    }
                };
                let mut m = base;
                m[(row, col)] = c(0.0, nonzero_real(&mut r));
                (m, RealityClass::Neither { row, col })
            }
        };
        let got = reality_class(&m);
        ensure(got == want, || format!("matrix {k}: classified {got}, constructed {want}"))?;
    }
    Ok(format!("su(2) relations within {worst:.1e} up to spin 3, 2pi signs, 100 reality classes"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    for k in 0..1000 {
        let n = r.gen_range(1..=6);
        let u = UMatrixSet::new(vec![random_anti_hermitian(&mut r, n)]).map_err(|e| e.to_string())?;
        ensure(check_t1(&u).is_pass() && check_t2(&u).is_pass(), || format!("anti-hermitian matrix {k} fails T1 or T2"))?;
    }
    let mut matched_nonzero = 0;
    for k in 0..100 {
        let n = r.gen_range(2..=6);
        let sym = UMatrixSet::new(vec![random_symmetric(&mut r, n)]).map_err(|e| e.to_string())?;
        let anti = UMatrixSet::new(vec![random_antisymmetric(&mut r, n)]).map_err(|e| e.to_string())?;
        let (even, odd) = (vec![Parity::Commuting; n], vec![Parity::Anticommuting; n]);
        let l = |u: &UMatrixSet, p: &[Parity]| lagrangian_kin(u, p).map_err(|e| e.to_string());
        ensure(l(&sym, &even)?.is_zero(), || format!("pairing {k}: symmetric U with commuting fields survives"))?;
        ensure(l(&anti, &odd)?.is_zero(), || format!("pairing {k}: antisymmetric U with anticommuting fields survives"))?;
        matched_nonzero += usize::from(!l(&sym, &odd)?.is_zero()) + usize::from(!l(&anti, &even)?.is_zero());
    }
    ensure(matched_nonzero == 200, || format!("only {matched_nonzero}/200 matched pairings are nonzero"))?;

    let mut block = CMatrix::zeros(4, 4);
    block[(0, 1)] = c(0.0, 1.0);
    block[(1, 0)] = c(0.0, 1.0);
    block[(2, 3)] = c(1.0, 0.0);
    block[(3, 2)] = c(-1.0, 0.0);
    let cls = classify(&UMatrixSet::new(vec![block]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (f, b) = (ComponentClass::Field(FieldClass::Fermi), ComponentClass::Field(FieldClass::Bose));
    ensure(cls.components == vec![f, f, b, b] && cls.blocks == vec![vec![0, 1], vec![2, 3]], || {
        format!("mixed block classified as {:?} {:?}", cls.components, cls.blocks)
    })?;

    let sigma_y = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let isx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(0., 1.), c(0., 0.)]);
    let u = UMatrixSet::new(vec![CMatrix::zeros(2, 2), isx]).map_err(|e| e.to_string())?;
    let good = check_t5(&sigma_y, &u, FieldClass::Fermi).map_err(|e| e.to_string())?;
    ensure(good.is_pass(), || format!("Pauli fixture: {}", good.witness.clone().unwrap_or_default()))?;
    let bad = check_t5(&(&sigma_y * c(0., 1.)), &u, FieldClass::Fermi).map_err(|e| e.to_string())?;
    ensure(bad.status == Status::Fail, || "class-mismatch fixture passed".into())?;

    for spin2 in [0u32, 1] {
        for cls in [FieldClass::Fermi, FieldClass::Bose] {
            for d in [RealityClass::Real, RealityClass::Imaginary] {
                let want = matches!(
                    (spin2, cls, d),
                    (1, FieldClass::Fermi, RealityClass::Imaginary) | (0, FieldClass::Bose, RealityClass::Real)
                );
                let v = spin_statistics_verdict(spin2, cls, d);
                ensure(v.is_pass() == want, || format!("truth table: spin {spin2}/2 {cls} {d} gave {}", v.status))?;
            }
        }
    }
    Ok("1000 T1=>T2, 100 graded pairings, mixed block, T5 fixtures, 8-case truth table".into())
}

fn criterion_6() -> Outcome {
    let lattice = LatticeSpec::new(1, 16, int(1)).map_err(|e| e.to_string())?;
    let mut seed = SEED;
    for m in [int(1), int(-1), rat(3, 2)] {
        for spin2 in [0u32, 1, 2] {
            seed += 1;
            let v = hermiticity_compatible(&TransformLaw::new(m.clone(), spin2), &lattice, 50, seed, Sampling::General)
                .map_err(|e| e.to_string())?;
            ensure(v.is_pass() && v.details["outcome"] == "INCOMPATIBLE" && v.witness.is_some(), || {
                format!("m={m} s={spin2}/2: {} {}", v.details["outcome"], v.status)
            })?;
            let g: Rational = v.details["witness_gamma"]
                .as_str()
                .or(v.details["reference_gamma"].as_str())
                .ok_or("no exact witness")?
                .parse()
                .map_err(|_| "witness gamma is not rational".to_string())?;
            ensure(galspin::nogo::phases_differ(&m, &g), || format!("m={m}: witness gamma {g} does not separate phases"))?;
        }
    }
    let v = hermiticity_compatible(&TransformLaw::new(int(0), 0), &lattice, 50, SEED, Sampling::General)
        .map_err(|e| e.to_string())?;
    ensure(v.is_pass() && v.details["outcome"] == "COMPATIBLE", || format!("m=0: {}", v.details["outcome"]))?;

    for m in [int(1), int(-1), rat(3, 2)] {
        let s = mass_spectrum(&m).map_err(|e| e.to_string())?;
        ensure(s.eigenvalues[0] == -s.eigenvalues[1].clone() && s.eigenvalues[0] == m.abs(), || {
            format!("m={m}: eigenvalues {:?}", s.eigenvalues)
        })?;
        ensure(s.weights.iter().flatten().all(|w| *w == rat(1, 2)), || format!("m={m}: unequal weights"))?;
        let v = doubled_mass_analysis(&m, &lattice).map_err(|e| e.to_string())?;
        ensure(v.is_pass(), || format!("doubled m={m}: {}", v.witness.clone().unwrap_or_default()))?;
    }
    Ok("9 massive laws incompatible with exact witnesses, m=0 compatible over 50 samples, doubled mass exact".into())
}

const CONFIG: &str = r#"[lattice]
dimension = 1
points_per_side = 16

[field]
mass = "1"
alpha = "3/5"
beta = "4/5"

[seeds]
master = 11

[run]
suites = ["all"]
"#;

fn galspin(config: &Path, extra: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_galspin"))
        .arg("run")
        .arg("--config")
        .arg(config)
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by signal")?;
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn zero_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "seconds" {
                    *x = Value::from(0.0);
                } else {
                    zero_timings(x);
                }
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(zero_timings),
        _ => {}
    }
}

fn normalized(json: &str) -> Result<String, String> {
    let mut v: Value = serde_json::from_str(json).map_err(|e| format!("report is not JSON: {e}"))?;
    zero_timings(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let good = dir.path().join("good.toml");
    std::fs::write(&good, CONFIG).map_err(|e| e.to_string())?;

    let (c1, a) = galspin(&good, &["--format", "json"])?;
    let (c2, b) = galspin(&good, &["--format", "json"])?;
    let (c3, p) = galspin(&good, &["--format", "json", "--parallel"])?;
    ensure([c1, c2, c3] == [0, 0, 0], || format!("all-pass config exited with {c1}, {c2}, {c3}"))?;
    let (a, b, p) = (normalized(&a)?, normalized(&b)?, normalized(&p)?);
    ensure(a == b, || "two identical runs differ".into())?;
    let strip_parallel = |s: &str| s.replace("\"parallel\": true", "\"parallel\": false");
    ensure(strip_parallel(&p) == a, || "parallel run differs from sequential".into())?;

    let mut mutant = AlgebraTable::extended_galilei();
    mutant.set("K1", "H", &[(int(1), "P2")]).map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("mutant.table"), mutant.to_text()).map_err(|e| e.to_string())?;
    let bad = dir.path().join("mutant.toml");
    let text = CONFIG.replace("suites = [\"all\"]", "suites = [\"algebra\"]") + "\n[algebra]\ngalilei = \"mutant.table\"\n";
    std::fs::write(&bad, text).map_err(|e| e.to_string())?;
    let (code, _) = galspin(&bad, &[])?;
    ensure(code == 1, || format!("mutant config exited with {code}"))?;

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "[lattice]\npoints_per_side = 15\n[seeds]\nmaster = 1\n").map_err(|e| e.to_string())?;
    let (code, _) = galspin(&broken, &[])?;
    ensure(code == 2, || format!("malformed config exited with {code}"))?;
    Ok("byte-identical JSON across runs and under --parallel, exit codes 0/1/2".into())
}

#[test]
fn acceptance() {
    let criteria: [(fn() -> Outcome, u64); 7] = [
        (criterion_1, 30),
        (criterion_2, 60),
        (criterion_3, 120),
        (criterion_4, 30),
        (criterion_5, 60),
        (criterion_6, 30),
        (criterion_7, 120),
    ];
    let mut failed = Vec::new();
    for (n, (run, budget)) in criteria.into_iter().enumerate() {
        let n = n + 1;
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took > Duration::from_secs(budget) {
                Err(format!("{msg}; but took {:.1}s, budget {budget}s", took.as_secs_f64()))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS ({:.2}s) {msg}", took.as_secs_f64()),
            Err(msg) => {
                println!("criterion {n}: FAIL ({:.2}s) {msg}", took.as_secs_f64());
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

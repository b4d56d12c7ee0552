//! Run configuration: a TOML document with `[lattice]`, `[field]`,
//! `[samples]`, `[seeds]`, `[tolerances]`, `[run]`, `[algebra]` and
//! `[schwinger]` sections. Exact values (rationals `p/q`, complex numbers
//! `re+imi` or `r@q`) are written as strings so they never pass through a float.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use serde_json::{json, Value};
use toml::Spanned;

use crate::error::{Error, Result};
use crate::exact::{parse_complex, parse_rational, ExactComplex, Rational};
use crate::field::LatticeSpec;
use crate::galilei::AlgebraTable;
use crate::reps::CMatrix;
use crate::schwinger::UMatrixSet;

/// Named verification suites, in their canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Counterexample,
    Cocycle,
    Algebra,
    Reps,
    Schwinger,
    Nogo,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Counterexample, Suite::Cocycle, Suite::Algebra, Suite::Reps, Suite::Schwinger, Suite::Nogo];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counterexample => "counterexample",
            Suite::Cocycle => "cocycle",
            Suite::Algebra => "algebra",
            Suite::Reps => "reps",
            Suite::Schwinger => "schwinger",
            Suite::Nogo => "nogo",
        }
    }

    /// Offset mixed into the master seed so suites draw independent streams.
    pub fn seed_offset(self) -> u64 {
        self as u64 + 1
    }

    /// Expands a name; `all` yields every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::from_str(name).map(|s| vec![s])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    dimension: Option<Spanned<i64>>,
    points_per_side: Option<Spanned<i64>>,
    side_length: Option<Spanned<String>>,
    confirm_3d: Option<bool>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawField {
    mass: Option<Spanned<String>>,
    spin: Option<Spanned<String>>,
    alpha: Option<Spanned<String>>,
    beta: Option<Spanned<String>>,
    time: Option<Spanned<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSamples {
    cocycle_pairs: Option<Spanned<i64>>,
    cocycle_triples: Option<Spanned<i64>>,
    nogo: Option<Spanned<i64>>,
    random_matrices: Option<Spanned<i64>>,
    lagrangian: Option<Spanned<i64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSeeds {
    master: Option<Spanned<i64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    cocycle: Option<Spanned<f64>>,
    cocycle_identity: Option<Spanned<f64>>,
    bch: Option<Spanned<f64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawRun {
    suites: Option<Vec<Spanned<String>>>,
    parallel: Option<bool>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    galilei: Option<Spanned<String>>,
    poincare: Option<Spanned<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSchwinger {
    u_matrices: Option<Spanned<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    lattice: RawLattice,
    #[serde(default)]
    field: RawField,
    #[serde(default)]
    samples: RawSamples,
    #[serde(default)]
    seeds: RawSeeds,
    #[serde(default)]
    tolerances: RawTolerances,
    #[serde(default)]
    run: RawRun,
    #[serde(default)]
    algebra: RawAlgebra,
    #[serde(default)]
    schwinger: RawSchwinger,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    pub cocycle_pairs: usize,
    pub cocycle_triples: usize,
    pub nogo: usize,
    pub random_matrices: usize,
    pub lagrangian: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub cocycle: f64,
    pub cocycle_identity: f64,
    pub bch: f64,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub lattice: LatticeSpec,
    pub confirm_3d: bool,
    pub mass: Rational,
    pub spin2: u32,
    pub alpha: ExactComplex,
    pub beta: ExactComplex,
    pub time: Rational,
    pub samples: Samples,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub suites: Vec<Suite>,
    pub parallel: bool,
    pub galilei_table: AlgebraTable,
    pub poincare_table: AlgebraTable,
    pub u_matrices: UMatrixSet,
    sources: Vec<(String, String)>,
}

struct Ctx<'a> {
    text: &'a str,
    source: &'a str,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn err<T>(&self, field: &str, span: Option<std::ops::Range<usize>>, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            source_name: self.source.to_string(),
            line: span.map(|s| self.line(s.start)).unwrap_or(0),
            field: field.to_string(),
            message: message.into(),
        })
    }

    fn rational(&self, field: &str, v: &Option<Spanned<String>>, default: &str) -> Result<Rational> {
        match v {
            None => Ok(parse_rational(default).expect("valid default")),
            Some(s) => match parse_rational(s.get_ref()) {
                Ok(q) => Ok(q),
                Err(m) => self.err(field, Some(s.span()), m),
            },
        }
    }

    fn complex(&self, field: &str, v: &Option<Spanned<String>>, default: &str) -> Result<ExactComplex> {
        match v {
            None => Ok(parse_complex(default).expect("valid default")),
            Some(s) => match parse_complex(s.get_ref()) {
                Ok(z) => Ok(z),
                Err(m) => self.err(field, Some(s.span()), m),
            },
        }
    }

    fn count(&self, field: &str, v: &Option<Spanned<i64>>, default: usize, min: i64) -> Result<usize> {
        match v {
            None => Ok(default),
            Some(s) if *s.get_ref() >= min => Ok(*s.get_ref() as usize),
            Some(s) => self.err(field, Some(s.span()), format!("must be at least {min}")),
        }
    }

    fn tol(&self, field: &str, v: &Option<Spanned<f64>>, default: f64) -> Result<f64> {
        match v {
            None => Ok(default),
            Some(s) if s.get_ref().is_finite() && *s.get_ref() > 0.0 => Ok(*s.get_ref()),
            Some(s) => self.err(field, Some(s.span()), "tolerance must be positive and finite"),
        }
    }
}

impl SuiteConfig {
    /// Reads and validates a configuration file; relative table paths are
    /// resolved against its directory.
    pub fn from_path(path: &Path) -> Result<SuiteConfig> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        SuiteConfig::parse(&text, &path.display().to_string(), &base)
    }

    pub fn parse(text: &str, source_name: &str, base_dir: &Path) -> Result<SuiteConfig> {
        let ctx = Ctx { text, source: source_name };
        let raw: RawConfig = match toml::from_str(text) {
            Ok(r) => r,
            Err(e) => {
                let msg = e.message().to_string();
                let field = msg
                    .split('`')
                    .nth(1)
                    .filter(|_| msg.starts_with("unknown field"))
                    .unwrap_or("document")
                    .to_string();
                return ctx.err(&field, e.span(), msg);
            }
        };

        let l = &raw.lattice;
        let dimension = ctx.count("lattice.dimension", &l.dimension, 1, 1)?;
        if dimension > 3 {
            return ctx.err("lattice.dimension", l.dimension.as_ref().map(|s| s.span()), "must be 1, 2 or 3");
        }
        let n = ctx.count("lattice.points_per_side", &l.points_per_side, 16, 2)?;
        if n % 2 != 0 || n > 64 {
            return ctx.err(
                "lattice.points_per_side",
                l.points_per_side.as_ref().map(|s| s.span()),
                "must be even and at most 64",
            );
        }
        let side = ctx.rational("lattice.side_length", &l.side_length, "1")?;
        if side <= Rational::from_integer(0.into()) {
            return ctx.err("lattice.side_length", l.side_length.as_ref().map(|s| s.span()), "must be positive");
        }
        let lattice = LatticeSpec::new(dimension, n as u32, side)
            .or_else(|e| ctx.err("lattice", None, e.to_string()))?;

        let f = &raw.field;
        let mass = ctx.rational("field.mass", &f.mass, "1")?;
        let spin = ctx.rational("field.spin", &f.spin, "0")?;
        let twice = &spin * Rational::from_integer(2.into());
        if !twice.is_integer() || spin < Rational::from_integer(0.into()) || twice > Rational::from_integer(12.into()) {
            return ctx.err("field.spin", f.spin.as_ref().map(|s| s.span()), "must be a half-integer in [0, 6]");
        }
        let spin2: u32 = twice.to_integer().try_into().expect("bounded above");
        let alpha = ctx.complex("field.alpha", &f.alpha, "3/5")?;
        let beta = ctx.complex("field.beta", &f.beta, "4/5")?;
        let time = ctx.rational("field.time", &f.time, "0")?;

        let s = &raw.samples;
        let samples = Samples {
            cocycle_pairs: ctx.count("samples.cocycle_pairs", &s.cocycle_pairs, 1000, 1)?,
            cocycle_triples: ctx.count("samples.cocycle_triples", &s.cocycle_triples, 200, 1)?,
            nogo: ctx.count("samples.nogo", &s.nogo, 50, 1)?,
            random_matrices: ctx.count("samples.random_matrices", &s.random_matrices, 1000, 1)?,
            lagrangian: ctx.count("samples.lagrangian", &s.lagrangian, 100, 1)?,
        };

        let seed = match &raw.seeds.master {
            Some(s) if *s.get_ref() >= 0 => *s.get_ref() as u64,
            Some(s) => return ctx.err("seeds.master", Some(s.span()), "must be non-negative"),
            None => return ctx.err("seeds.master", None, "a master seed is required for reproducibility"),
        };

        let t = &raw.tolerances;
        let tolerances = Tolerances {
            cocycle: ctx.tol("tolerances.cocycle", &t.cocycle, 1e-10)?,
            cocycle_identity: ctx.tol("tolerances.cocycle_identity", &t.cocycle_identity, 1e-9)?,
            bch: ctx.tol("tolerances.bch", &t.bch, 1e-6)?,
        };

        let mut suites = Vec::new();
        for name in raw.run.suites.iter().flatten() {
            match Suite::parse_list(name.get_ref()) {
                Ok(list) => {
                    for s in list {
                        if !suites.contains(&s) {
                            suites.push(s);
                        }
                    }
                }
                Err(_) => return ctx.err("run.suites", Some(name.span()), format!("unknown suite `{}`", name.get_ref())),
            }
        }

        let mut sources = Vec::new();
        let mut load = |field: &str, v: &Option<Spanned<String>>| -> Result<Option<(PathBuf, String)>> {
            let Some(p) = v else { return Ok(None) };
            let path = base_dir.join(p.get_ref());
            match std::fs::read_to_string(&path) {
                Ok(text) => {
                    sources.push((field.to_string(), p.get_ref().clone()));
                    Ok(Some((path, text)))
                }
                Err(e) => ctx.err(field, Some(p.span()), format!("cannot read {}: {e}", path.display())),
            }
        };
        let galilei_table = match load("algebra.galilei", &raw.algebra.galilei)? {
            Some((path, text)) => AlgebraTable::parse(&text, &path.display().to_string())?,
            None => AlgebraTable::extended_galilei(),
        };
        let poincare_table = match load("algebra.poincare", &raw.algebra.poincare)? {
            Some((path, text)) => AlgebraTable::parse(&text, &path.display().to_string())?,
            None => AlgebraTable::poincare(),
        };
        let u_matrices = match load("schwinger.u_matrices", &raw.schwinger.u_matrices)? {
            Some((path, text)) => UMatrixSet::parse(&text, &path.display().to_string())?,
            None => default_u_matrices(),
        };

        Ok(SuiteConfig {
            lattice,
            confirm_3d: l.confirm_3d.unwrap_or(true),
            mass,
            spin2,
            alpha,
            beta,
            time,
            samples,
            seed,
            tolerances,
            suites,
            parallel: raw.run.parallel.unwrap_or(false),
            galilei_table,
            poincare_table,
            u_matrices,
            sources,
        })
    }

    /// Effective settings, echoed into reports.
    pub fn echo(&self) -> Value {
        let spin = Rational::new(self.spin2.into(), 2.into());
        let mut v = json!({
            "lattice": {
                "dimension": self.lattice.dimension,
                "points_per_side": self.lattice.points_per_side,
                "side_length": self.lattice.side_length.to_string(),
                "confirm_3d": self.confirm_3d,
            },
            "field": {
                "mass": self.mass.to_string(),
                "spin": spin.to_string(),
                "alpha": self.alpha.to_string(),
                "beta": self.beta.to_string(),
                "time": self.time.to_string(),
            },
            "samples": {
                "cocycle_pairs": self.samples.cocycle_pairs,
                "cocycle_triples": self.samples.cocycle_triples,
                "nogo": self.samples.nogo,
                "random_matrices": self.samples.random_matrices,
                "lagrangian": self.samples.lagrangian,
            },
            "seeds": { "master": self.seed },
            "tolerances": {
                "cocycle": self.tolerances.cocycle,
                "cocycle_identity": self.tolerances.cocycle_identity,
                "bch": self.tolerances.bch,
            },
            "run": {
                "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "parallel": self.parallel,
            },
        });
        for (field, path) in &self.sources {
            let (section, key) = field.split_once('.').expect("dotted field");
            v[section][key] = json!(path);
        }
        v
    }
}

/// `U^0 = 0`, `U^1 = iσ_x`: a two-component Fermi sector.
pub fn default_u_matrices() -> UMatrixSet {
    use num_complex::Complex64 as C;
    let z = C::new(0.0, 0.0);
    let i = C::new(0.0, 1.0);
    UMatrixSet::new(vec![CMatrix::zeros(2, 2), CMatrix::from_row_slice(2, 2, &[z, i, i, z])])
        .expect("valid default")
}

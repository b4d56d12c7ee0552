#![allow(dead_code)]

use galspin::exact::{rat, Coeff, Cyclotomic, Rational};
use galspin::op_algebra::{Ladder, Mode, ModeSpace, Monomial, OperatorExpr, Species, Statistics};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn space() -> ModeSpace {
    ModeSpace::new(1, 4, 0).unwrap()
}

/// Three modes, in the engine's mode order.
pub fn modes() -> Vec<Mode> {
    let mut m = vec![
        Mode::scalar(Species::Particle, &[0]),
        Mode::scalar(Species::Particle, &[1]),
        Mode::scalar(Species::Antiparticle, &[0]),
    ];
    m.sort();
    m
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    Coeff::from(Cyclotomic::complex(random_rational(rng), random_rational(rng)))
}

pub fn random_ladder(rng: &mut ChaCha8Rng, n_modes: usize) -> Ladder {
    let m = modes()[rng.gen_range(0..n_modes)];
    if rng.gen_bool(0.5) {
        Ladder::create(m)
    } else {
        Ladder::annihilate(m)
    }
}

/// Up to three monomials of at most four ladders over at most three modes.
pub fn random_monomials(rng: &mut ChaCha8Rng) -> Vec<Monomial> {
    let n_modes = rng.gen_range(1..=3);
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let len = rng.gen_range(0..=4);
            Monomial::new(random_coeff(rng), (0..len).map(|_| random_ladder(rng, n_modes)).collect())
        })
        .collect()
}

pub fn random_expr(rng: &mut ChaCha8Rng, stats: Statistics) -> OperatorExpr {
    OperatorExpr::from_monomials(space(), stats, random_monomials(rng)).unwrap()
}

/// Dense operators on a truncated Fock space over [`modes`]: `cutoff`
/// levels per Bose mode, two per Fermi mode with a Jordan–Wigner string.
pub struct DenseFock {
    pub stats: Statistics,
    pub levels: usize,
    pub dim: usize,
}

impl DenseFock {
    pub fn new(stats: Statistics, cutoff: usize) -> DenseFock {
        let levels = match stats {
            Statistics::Bose => cutoff,
            Statistics::Fermi => 2,
        };
        DenseFock { stats, levels, dim: levels.pow(modes().len() as u32) }
    }

    pub fn index(&self, occ: &[usize]) -> usize {
        occ.iter().rev().fold(0, |acc, &n| acc * self.levels + n)
    }

    pub fn occupations(&self, mut idx: usize) -> Vec<usize> {
        (0..modes().len())
            .map(|_| {
                let n = idx % self.levels;
                idx /= self.levels;
                n
            })
            .collect()
    }

    pub fn ladder(&self, l: Ladder) -> DMatrix<Complex64> {
        let k = modes().iter().position(|m| *m == l.mode).unwrap();
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for col in 0..self.dim {
            let mut occ = self.occupations(col);
            let n = occ[k];
            let (new_n, amp) = if l == Ladder::create(l.mode) {
                if n + 1 >= self.levels {
                    continue;
                }
                (n + 1, ((n + 1) as f64).sqrt())
            } else {
                if n == 0 {
                    continue;
                }
                (n - 1, (n as f64).sqrt())
            };
            let string = match self.stats {
                Statistics::Fermi if occ[..k].iter().sum::<usize>() % 2 == 1 => -1.0,
                _ => 1.0,
            };
            occ[k] = new_n;
            out[(self.index(&occ), col)] = Complex64::new(amp * string, 0.0);
        }
        out
    }

    /// `Σ c · w |ket⟩` applied factor by factor, right to left.
    pub fn apply(&self, monomials: &[Monomial], ket: &DVector<Complex64>) -> DVector<Complex64> {
        let mut total = DVector::zeros(self.dim);
        for m in monomials {
            let mut v = ket.clone();
            for l in m.factors.iter().rev() {
                v = self.ladder(*l) * v;
            }
            total += v * m.coeff.to_complex();
        }
        total
    }

    pub fn basis(&self, idx: usize) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.dim);
        v[idx] = Complex64::new(1.0, 0.0);
        v
    }
}

pub fn fock_state(occ: &[usize]) -> galspin::op_algebra::fock::FockState {
    modes()
        .iter()
        .zip(occ)
        .fold(galspin::op_algebra::fock::FockState::vacuum(), |s, (m, &n)| s.with(*m, n as u32))
}

//! Matrix elements of normal-ordered expressions between occupation-number states.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{Ladder, LadderKind, Mode, OperatorExpr, Statistics};

/// Occupation numbers; absent modes are empty. Fermi signs use the mode order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FockState(BTreeMap<Mode, u32>);

impl FockState {
    pub fn vacuum() -> Self {
        FockState::default()
    }

    pub fn with(mut self, mode: Mode, n: u32) -> Self {
        if n == 0 {
            self.0.remove(&mode);
        } else {
            self.0.insert(mode, n);
        }
        self
    }

    pub fn occupation(&self, mode: &Mode) -> u32 {
        self.0.get(mode).copied().unwrap_or(0)
    }

    /// Applies one ladder operator; `None` when the result vanishes.
    fn apply(&self, l: Ladder, stats: Statistics) -> Option<(f64, FockState)> {
        let n = self.occupation(&l.mode);
        let sign = match stats {
            Statistics::Bose => 1.0,
            Statistics::Fermi => {
                let before: u32 = self.0.range(..l.mode).map(|(_, &k)| k).sum();
                if before.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        match (l.kind, stats) {
            (LadderKind::Annihilate, _) if n == 0 => None,
            (LadderKind::Create, Statistics::Fermi) if n == 1 => None,
            (LadderKind::Annihilate, _) => Some((sign * (n as f64).sqrt(), self.clone().with(l.mode, n - 1))),
            (LadderKind::Create, _) => Some((sign * ((n + 1) as f64).sqrt(), self.clone().with(l.mode, n + 1))),
        }
    }
}

/// `⟨bra| expr |ket⟩`, evaluating exact coefficients numerically.
pub fn matrix_element(expr: &OperatorExpr, bra: &FockState, ket: &FockState) -> Complex64 {
    let stats = expr.statistics();
    expr.terms()
        .filter_map(|(word, c)| {
            let mut state = ket.clone();
            let mut amp = 1.0;
            for &l in word.iter().rev() {
                let (a, next) = state.apply(l, stats)?;
                amp *= a;
                state = next;
            }
            (state == *bra).then(|| c.to_complex() * amp)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Coeff;
    use crate::op_algebra::{ModeSpace, Monomial, Species};

    #[test]
    fn number_operator_counts() {
        let sp = ModeSpace::new(1, 2, 0).unwrap();
        let m = Mode::scalar(Species::Particle, &[0]);
        let n = OperatorExpr::from_monomials(
            sp,
            Statistics::Bose,
            [Monomial::new(Coeff::one(), vec![Ladder::create(m), Ladder::annihilate(m)])],
        )
        .unwrap();
        for k in 0..5 {
            let s = FockState::vacuum().with(m, k);
            assert!((matrix_element(&n, &s, &s).re - k as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn fermi_jordan_wigner_sign() {
        let sp = ModeSpace::new(1, 2, 0).unwrap();
        let m0 = Mode::scalar(Species::Particle, &[-1]);
        let m1 = Mode::scalar(Species::Particle, &[0]);
        let e = OperatorExpr::ladder(sp, Statistics::Fermi, Ladder::create(m1)).unwrap();
        let ket = FockState::vacuum().with(m0, 1);
        let bra = ket.clone().with(m1, 1);
        assert_eq!(matrix_element(&e, &bra, &ket).re, -1.0);
    }
}

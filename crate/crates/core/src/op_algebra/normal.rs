use super::{Ladder, LadderKind, ModeSpace, Monomial, OperatorExpr, Statistics};

/// Rewrites one ladder word into a signed sum of normal-ordered words, pushing
/// `(sign, word)` pairs into `out`.
///
/// Adjacent out-of-order factors are exchanged with the grading sign; an
/// annihilator passing its own creator leaves the contraction term behind.
pub(crate) fn order_word(stats: Statistics, word: Vec<Ladder>, out: &mut Vec<(i8, Vec<Ladder>)>) {
    let eps = stats.exchange_sign();
    let mut stack = vec![(1i8, word)];
    while let Some((sign, mut w)) = stack.pop() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            if stats == Statistics::Fermi && w.windows(2).any(|p| p[0] == p[1]) {
                continue;
            }
            out.push((sign, w));
            continue;
        };
        let (x, y) = (w[i], w[i + 1]);
        if x.kind == LadderKind::Annihilate && y.kind == LadderKind::Create && x.mode == y.mode {
            let mut contracted = Vec::with_capacity(w.len() - 2);
            contracted.extend_from_slice(&w[..i]);
            contracted.extend_from_slice(&w[i + 2..]);
            stack.push((sign, contracted));
        }
        w.swap(i, i + 1);
        stack.push((sign * eps, w));
    }
}

/// Normal-ordered sum of arbitrary monomials. Modes are assumed valid for `space`.
pub fn normal_order(
    space: ModeSpace,
    stats: Statistics,
    monomials: impl IntoIterator<Item = Monomial>,
) -> OperatorExpr {
    let mut out = OperatorExpr::zero(space, stats);
    let mut scratch = Vec::new();
    for m in monomials {
        if m.coeff.is_zero() {
            continue;
        }
        order_word(stats, m.factors, &mut scratch);
        for (sign, w) in scratch.drain(..) {
            let c = if sign > 0 { m.coeff.clone() } else { -m.coeff.clone() };
            out.insert_term(w, c);
        }
    }
    out
}

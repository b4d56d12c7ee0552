use galspin::exact::{int, rat, Coeff, Cyclotomic, Rational};
use galspin::field::{build_conjugate_field, build_field, equal_time_bracket, FieldSpec, LatticeSpec};
use galspin::op_algebra::{Ladder, LadderKind, Mode, Species, Statistics};
use proptest::prelude::*;

fn lattice() -> LatticeSpec {
    LatticeSpec::new(1, 4, int(2)).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn amplitude() -> impl Strategy<Value = Cyclotomic> {
    (rational(), rational()).prop_map(|(re, im)| Cyclotomic::complex(re, im))
}

fn mass() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |m| *m != int(0))
}

fn stats() -> impl Strategy<Value = Statistics> {
    prop_oneof![Just(Statistics::Bose), Just(Statistics::Fermi)]
}

fn bracket(spec: &FieldSpec, x: i64, y: i64, t: &Rational, s: Statistics) -> Coeff {
    let l = &spec.lattice;
    equal_time_bracket(spec, &l.point(&[x], t.clone()), &l.point(&[y], t.clone()), s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_the_closed_form_at_any_time(m in mass(), a in amplitude(), b in amplitude(), t in rational(), x in 0i64..4, y in 0i64..4, s in stats()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let spec = FieldSpec::new(m, a, b, lattice()).unwrap();
        let want = Coeff::from(spec.closed_form_bracket(x == y, s));
        prop_assert_eq!(bracket(&spec, x, y, &t, s), want);
    }

    #[test]
    fn global_phases_drop_out(m in mass(), a in amplitude(), b in amplitude(), p in rational(), q in rational(), s in stats()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let spec = FieldSpec::new(m.clone(), a.clone(), b.clone(), lattice()).unwrap();
        let rotated = FieldSpec::new(m, a * Cyclotomic::exp_i_pi(&p), b * Cyclotomic::exp_i_pi(&q), lattice()).unwrap();
        prop_assert_eq!(bracket(&spec, 1, 1, &int(0), s), bracket(&rotated, 1, 1, &int(0), s));
    }

    #[test]
    fn bracket_scales_with_the_modulus_squared(m in mass(), a in amplitude(), b in amplitude(), c in amplitude(), s in stats()) {
        prop_assume!(!(a.is_zero() && b.is_zero()) && !c.is_zero());
        let spec = FieldSpec::new(m.clone(), a.clone(), b.clone(), lattice()).unwrap();
        let scaled = FieldSpec::new(m, &a * &c, &b * &c, lattice()).unwrap();
        let want = &bracket(&spec, 2, 2, &int(0), s) * &Coeff::from(c.norm_sqr());
        prop_assert_eq!(bracket(&scaled, 2, 2, &int(0), s), want);
    }

    #[test]
    fn conjugate_field_is_the_adjoint(m in mass(), a in amplitude(), b in amplitude(), t in rational(), x in 0i64..4, s in stats()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let spec = FieldSpec::new(m, a, b, lattice()).unwrap();
        let p = spec.lattice.point(&[x], t);
        prop_assert_eq!(build_field(&spec, &p, s).unwrap().adjoint(), build_conjugate_field(&spec, &p, s).unwrap());
    }

    /// Relabelling a(k) → b†(−k), b†(k) → a(−k) turns the field of mass −m
    /// with weights (α, β) into the field of mass m with weights (β, α).
    #[test]
    fn negative_mass_is_a_relabelling(m in mass(), a in amplitude(), b in amplitude(), t in rational(), x in 0i64..4, s in stats()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let neg = FieldSpec::new(-m.clone(), a.clone(), b.clone(), lattice()).unwrap();
        let pos = FieldSpec::new(m, b, a, lattice()).unwrap();
        let p = pos.lattice.point(&[x], t);
        let n = pos.lattice.points_per_side as i16;
        let flip = |k: [i16; 3]| k.map(|c| { let w = (-c).rem_euclid(n); if w >= n / 2 { w - n } else { w } });
        let relabel = |l: Ladder| {
            let other = match l.mode.species { Species::Particle => Species::Antiparticle, Species::Antiparticle => Species::Particle };
            let mode = Mode { species: other, momentum: flip(l.mode.momentum), ..l.mode };
            match l.kind { LadderKind::Create => Ladder::annihilate(mode), LadderKind::Annihilate => Ladder::create(mode) }
        };
        let mapped = build_field(&neg, &p, s).unwrap().map_ladders(relabel).unwrap();
        prop_assert_eq!(mapped, build_field(&pos, &p, s).unwrap());
    }
}

#[test]
fn crossing_symmetric_bose_field_has_no_commutator() {
    let amp = Cyclotomic::sqrt_rational(&rat(1, 2));
    let spec = FieldSpec::new(int(1), amp.clone(), amp, lattice()).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            assert!(bracket(&spec, x, y, &rat(1, 3), Statistics::Bose).is_zero());
            let f = bracket(&spec, x, y, &rat(1, 3), Statistics::Fermi);
            assert_eq!(f, if x == y { Coeff::one() } else { Coeff::zero() });
        }
    }
}

#[test]
fn unequal_times_are_unsupported() {
    let spec = FieldSpec::new(int(1), Cyclotomic::one(), Cyclotomic::zero(), lattice()).unwrap();
    let l = &spec.lattice;
    let r = equal_time_bracket(&spec, &l.point(&[0], int(0)), &l.point(&[0], int(1)), Statistics::Bose);
    assert!(matches!(r, Err(galspin::Error::Unsupported(_))));
}

use proptest::prelude::*;

use reflinv::geometry::lift;
use reflinv::groups::{cached_group, GroupName};
use reflinv::klein::phi;
use reflinv::{FieldElement as FE, MPoly, Monomial, Rational, Space};

fn field_element() -> impl Strategy<Value = FE> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 16).prop_map(|v| {
        let coords: [Rational; 16] = std::array::from_fn(|k| Rational::new(v[k].0, v[k].1));
        FE::from_coords(&coords)
    })
}

fn small_fe() -> impl Strategy<Value = FE> {
    (-5i64..=5, 1i64..=3, 0usize..4).prop_map(|(n, d, b)| {
        let r = FE::from_ratio(n, d);
        match b {
            0 => r,
            1 => &r * &FE::i(),
            2 => &r * &FE::sqrt5(),
            _ => &r * &FE::sqrt2(),
        }
    })
}

fn poly(space: Space, max_degree: u16) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(([0..=max_degree, 0..=max_degree, 0..=max_degree, 0..=max_degree], small_fe()), 0..6)
        .prop_map(move |terms| MPoly::from_terms(space, terms.into_iter().map(|(e, c)| (Monomial(e), c))))
}

fn homogeneous_x(degree: u16) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=degree, 0..=degree, 0..=degree, small_fe()), 1..6).prop_map(move |terms| {
        MPoly::from_terms(
            Space::X,
            terms.into_iter().map(|(a, b, c, k)| {
                let a = a.min(degree);
                let b = b.min(degree - a);
                let c = c.min(degree - a - b);
                (Monomial([a, b, c, degree - a - b - c]), k)
            }),
        )
    })
}

/// `x` as a function of `z` through `U = z_left·z_rightᵀ` with the frame
/// `w = (z0z2, z1z3, z0z3, z1z2)`.
fn x_of_z(z: &[FE; 4]) -> [FE; 4] {
    let w = [&z[0] * &z[2], &z[1] * &z[3], &z[0] * &z[3], &z[1] * &z[2]];
    let half = FE::from_ratio(1, 2);
    let minus_half_i = -&(&half * &FE::i());
    [
        &(&w[0] + &w[1]) * &half,
        &(&w[0] - &w[1]) * &minus_half_i,
        &(&w[2] - &w[3]) * &half,
        &(&w[2] + &w[3]) * &minus_half_i,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in field_element(), b in field_element(), c in field_element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), FE::one());
        }
    }

    #[test]
    fn field_text_round_trip(a in field_element()) {
        prop_assert_eq!(a.to_string().parse::<FE>().unwrap(), a);
    }

    #[test]
    fn divrem_reconstructs(p in poly(Space::X, 5)) {
        let d = MPoly::quadric(Space::X);
        let (q, r) = p.divrem(&d).unwrap();
        prop_assert_eq!(q * d + r, p);
    }

    #[test]
    fn poly_text_round_trip(p in poly(Space::X, 6)) {
        prop_assert_eq!(MPoly::from_text(&p.to_text(), Space::X).unwrap(), p);
    }

    #[test]
    fn phi_is_a_ring_homomorphism(a in homogeneous_x(3), b in homogeneous_x(3), c in homogeneous_x(3)) {
        prop_assert_eq!(phi(&(a.clone() * b.clone())).unwrap(), phi(&a).unwrap() * phi(&b).unwrap());
        prop_assert_eq!(phi(&(a.clone() + c.clone())).unwrap(), phi(&a).unwrap() + phi(&c).unwrap());
    }

    #[test]
    fn phi_matches_direct_substitution(p in homogeneous_x(4), z in prop::array::uniform4(small_fe())) {
        prop_assert_eq!(phi(&p).unwrap().eval(&z), p.eval(&x_of_z(&z)));
    }

    #[test]
    fn phi_inverts_lift(a in 0u16..=7, c in 0u16..=7, k in small_fe(), a2 in 0u16..=7, c2 in 0u16..=7) {
        let m = MPoly::from_terms(Space::Z, [
            (Monomial([a, 7 - a, c, 7 - c]), k),
            (Monomial([a2, 7 - a2, c2, 7 - c2]), FE::one()),
        ]);
        prop_assert_eq!(phi(&lift(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn group_action_is_a_left_action(i in 0usize..1152, j in 0usize..1152, p in homogeneous_x(3)) {
        let f4 = cached_group(GroupName::F4).elements();
        let (g, h) = (&f4[i], &f4[j]);
        prop_assert_eq!(g.act(&h.act(&p)), g.compose(h).act(&p));
    }
}

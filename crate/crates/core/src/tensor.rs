//! The tensor frame: polynomials in the entries `w = (U00, U11, U01, U10)`
//! of the identified matrix `U = identify(x)`. Here `(g1, g2)` acts by
//! `U ↦ g1·U·g2⁻¹`, so left and right factors become independent 2×2 block
//! substitutions, and orthogonal matrices that are monomial in `w` stay
//! cheap.

use crate::geometry::SU2Element;
use crate::matrix::{Matrix2, Matrix4};
use crate::mpoly::{MPoly, Space};
use crate::numfield::FieldElement;

type FE = FieldElement;

fn m2(a: FE, b: FE, c: FE, d: FE) -> Matrix2 {
    Matrix2::new(a, b, c, d)
}

/// `w = T·x`.
pub fn frame_matrix() -> Matrix4 {
    let (o, z, i) = (FE::one(), FE::zero(), FE::i());
    Matrix4::from_rows([
        [o.clone(), i.clone(), z.clone(), z.clone()],
        [o.clone(), -&i, z.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone(), i.clone()],
        [z.clone(), z, -&o, i],
    ])
}

/// `x = T⁻¹·w`.
pub fn frame_matrix_inverse() -> Matrix4 {
    frame_matrix().inverse().expect("frame matrix is invertible")
}

/// `P(w) = p(T⁻¹w)`.
pub fn to_u(p: &MPoly) -> MPoly {
    debug_assert_eq!(p.space(), Space::X);
    let h = FE::from_ratio(1, 2);
    let hi = &h * &FE::i();
    p.compose_block2(
        (0, 1),
        &m2(h.clone(), h.clone(), -&hi, hi.clone()),
        (2, 3),
        &m2(h.clone(), -&h, -&hi, -&hi),
    )
    .with_space(Space::U)
}

/// `p(x) = P(T·x)`.
pub fn from_u(p: &MPoly) -> MPoly {
    debug_assert_eq!(p.space(), Space::U);
    let (o, i) = (FE::one(), FE::i());
    p.compose_block2((0, 1), &m2(o.clone(), i.clone(), o.clone(), -&i), (2, 3), &m2(o.clone(), i.clone(), -&o, i))
        .with_space(Space::X)
}

/// `(g, 1)·P`, i.e. `P(g⁻¹·U)`.
pub fn act_left(g: &SU2Element, p: &MPoly) -> MPoly {
    let a = g.inverse().matrix().clone();
    p.compose_block2((0, 3), &a, (2, 1), &a)
}

/// `(1, g)·P`, i.e. `P(U·g)`.
pub fn act_right(g: &SU2Element, p: &MPoly) -> MPoly {
    let b = g.matrix().transpose();
    p.compose_block2((0, 2), &b, (3, 1), &b)
}

/// The substitution matrix `T·M⁻¹·T⁻¹` realizing `M·p` in the frame.
pub fn frame_substitution(m: &Matrix4) -> Matrix4 {
    let minv = m.inverse().expect("group elements are invertible");
    &(&frame_matrix() * &minv) * &frame_matrix_inverse()
}

/// `M·P` for an x-space matrix `M`.
pub fn act_matrix(m: &Matrix4, p: &MPoly) -> MPoly {
    p.compose_linear(&frame_substitution(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sigma, BinaryGroup};
    use crate::groups::matrices;

    fn sample() -> MPoly {
        MPoly::x(0) * MPoly::x(1).pow(2) + MPoly::x(2) * MPoly::x(3) * MPoly::x(0) - MPoly::x(3).pow(3).scale(&FE::sqrt5())
    }

    #[test]
    fn frame_round_trip() {
        let p = sample();
        assert_eq!(from_u(&to_u(&p)), p);
        // w0 = x0 + i x1
        assert_eq!(from_u(&MPoly::var(Space::U, 0)), MPoly::x(0) + MPoly::x(1).scale(&FE::i()));
        assert_eq!(from_u(&MPoly::var(Space::U, 3)), -MPoly::x(2) + MPoly::x(3).scale(&FE::i()));
        assert!((&frame_matrix() * &frame_matrix_inverse()).is_identity());
    }

    #[test]
    fn block_actions_match_sigma() {
        let p = sample();
        let one = SU2Element::identity();
        for g in BinaryGroup::O.elements().iter().step_by(5) {
            assert_eq!(from_u(&act_left(g, &to_u(&p))), sigma(g, &one).act(&p));
            assert_eq!(from_u(&act_right(g, &to_u(&p))), sigma(&one, g).act(&p));
        }
    }

    #[test]
    fn reflections_are_monomial_in_the_frame() {
        for m in [matrices::c(), matrices::c_prime()] {
            assert!(frame_substitution(&m).is_monomial());
            let p = sample();
            assert_eq!(from_u(&act_matrix(&m, &to_u(&p))), p.compose_linear(&m.inverse().unwrap()));
        }
    }
}

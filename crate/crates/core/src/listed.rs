//! The invariants, plane products and test points exactly as printed,
//! typos included. Comparisons against constructed objects live in the
//! driver checks.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, Space};
use crate::numfield::FieldElement;

type FE = FieldElement;

/// Sum of every distinct monomial whose nonzero exponents are a
/// permutation of `shape`.
pub fn shape_sum(shape: &[u16]) -> MPoly {
    let mut padded = [0u16; 4];
    padded[..shape.len()].copy_from_slice(shape);
    padded.sort_unstable();
    let mut out = MPoly::zero(Space::X);
    let d: u16 = shape.iter().sum();
    for e0 in 0..=d {
        for e1 in 0..=d - e0 {
            for e2 in 0..=d - e0 - e1 {
                let e = [e0, e1, e2, d - e0 - e1 - e2];
                let mut s = e;
                s.sort_unstable();
                if s == padded {
                    out.add_term(Monomial(e), &FE::one());
                }
            }
        }
    }
    out
}

fn mono(e: [u16; 4]) -> MPoly {
    MPoly::term(Space::X, Monomial(e), FE::one())
}

fn int(n: i64) -> FE {
    FE::from_int(n)
}

/// `x_j^2 x_k^2 (x_j^2 + x_k^2)`.
fn pair_sextic(j: usize, k: usize) -> MPoly {
    let mut a = [0u16; 4];
    a[j] = 4;
    a[k] = 2;
    let mut b = [0u16; 4];
    b[j] = 2;
    b[k] = 4;
    mono(a) + mono(b)
}

/// The printed sextic.
pub fn f6() -> MPoly {
    shape_sum(&[6])
        + pair_sextic(0, 1).scale(&int(5))
        + pair_sextic(1, 3).scale(&int(5))
        + pair_sextic(1, 2).scale(&int(5))
        + pair_sextic(0, 2).scale(&int(6))
        + pair_sextic(0, 3).scale(&int(6))
        + pair_sextic(3, 2).scale(&int(6))
        + mono([2, 0, 2, 2]).scale(&int(2))
}

/// The printed octic.
pub fn f8() -> MPoly {
    shape_sum(&[8]).scale(&int(3))
        + shape_sum(&[6, 2]).scale(&int(12))
        + shape_sum(&[4, 4]).scale(&int(30))
        + shape_sum(&[4, 2, 2]).scale(&int(24))
        + shape_sum(&[2, 2, 2, 2]).scale(&int(144))
}

/// Coefficients of the printed degree-12 invariant by exponent shape.
pub const F12_SHAPES: [(&[u16], i64, i64); 9] = [
    (&[12], 123, 8),
    (&[10, 2], 231, 4),
    (&[8, 4], 21, 8),
    (&[6, 6], -255, 2),
    (&[8, 2, 2], 949, 2),
    (&[6, 4, 2], 1839, 2),
    (&[4, 4, 4], 6111, 4),
    (&[6, 2, 2, 2], 1809, 1),
    (&[4, 4, 2, 2], 7281, 2),
];

/// The printed degree-12 invariant.
pub fn f12() -> MPoly {
    F12_SHAPES
        .iter()
        .fold(MPoly::zero(Space::X), |acc, (shape, n, d)| acc + shape_sum(shape).scale(&FE::from_ratio(*n, *d)))
}

fn linear(c: [FE; 4]) -> MPoly {
    MPoly::linear(Space::X, c)
}

fn product(forms: impl IntoIterator<Item = MPoly>) -> MPoly {
    forms.into_iter().fold(MPoly::one(Space::X), |acc, f| acc * f)
}

/// `(x2-ix3)(x1+ix3)(x2+ix3)(x1-ix2)(x1-ix3)(x1+ix2)`.
pub fn six_planes() -> MPoly {
    let (o, z, i) = (FE::one(), FE::zero(), FE::i());
    let mi = -&i;
    product([
        linear([z.clone(), z.clone(), o.clone(), mi.clone()]),
        linear([z.clone(), o.clone(), z.clone(), i.clone()]),
        linear([z.clone(), z.clone(), o.clone(), i.clone()]),
        linear([z.clone(), o.clone(), mi.clone(), z.clone()]),
        linear([z.clone(), o.clone(), z.clone(), mi]),
        linear([z.clone(), o, i, z]),
    ])
}

/// The eight planes with `a = (1+i√3)/2`, `b = (1-i√3)/2`.
pub fn eight_planes() -> MPoly {
    let (o, z, a, b) = (FE::one(), FE::zero(), FE::a(), FE::b());
    let n = |e: &FE| -e;
    product([
        linear([z.clone(), o.clone(), a.clone(), n(&b)]),
        linear([z.clone(), o.clone(), b.clone(), n(&a)]),
        linear([z.clone(), o.clone(), n(&a), n(&b)]),
        linear([z.clone(), o.clone(), n(&b), n(&a)]),
        linear([z.clone(), b.clone(), o.clone(), n(&a)]),
        linear([z.clone(), a.clone(), o.clone(), n(&b)]),
        linear([z.clone(), n(&b), o.clone(), a.clone()]),
        linear([z, n(&a), o, b]),
    ])
}

/// The twelve planes with `c = i√2`, both signs of each `±c`.
pub fn twelve_planes() -> MPoly {
    let (o, z) = (FE::one(), FE::zero());
    let mut forms = Vec::new();
    for c in [FE::c(), -&FE::c()] {
        let (mo, mc) = (-&o, -&c);
        forms.extend([
            linear([z.clone(), mo.clone(), c.clone(), o.clone()]),
            linear([z.clone(), mc.clone(), o.clone(), o.clone()]),
            linear([z.clone(), c.clone(), mo.clone(), o.clone()]),
            linear([z.clone(), o.clone(), o.clone(), c.clone()]),
            linear([z.clone(), o.clone(), mc, o.clone()]),
            linear([z.clone(), o.clone(), mo, c]),
        ]);
    }
    product(forms)
}

/// `p1 = (i√2, 1, 1, 0)`.
pub fn p1() -> [FE; 4] {
    [FE::c(), FE::one(), FE::one(), FE::zero()]
}

/// `p2 = (1, i, 0, 0)`.
pub fn p2() -> [FE; 4] {
    [FE::one(), FE::i(), FE::zero(), FE::zero()]
}

/// Names accepted by the listed route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListedName {
    F6,
    F8,
    F12,
    SixPlanes,
    EightPlanes,
    TwelvePlanes,
}

impl ListedName {
    pub fn poly(self) -> MPoly {
        match self {
            ListedName::F6 => f6(),
            ListedName::F8 => f8(),
            ListedName::F12 => f12(),
            ListedName::SixPlanes => six_planes(),
            ListedName::EightPlanes => eight_planes(),
            ListedName::TwelvePlanes => twelve_planes(),
        }
    }
}

impl FromStr for ListedName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F6" => Ok(ListedName::F6),
            "F8" => Ok(ListedName::F8),
            "F12" => Ok(ListedName::F12),
            "P6" | "T6" => Ok(ListedName::SixPlanes),
            "P8" | "O8" => Ok(ListedName::EightPlanes),
            "P12" | "O12" => Ok(ListedName::TwelvePlanes),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_sums_count_distinct_monomials() {
        assert_eq!(shape_sum(&[8]).len(), 4);
        assert_eq!(shape_sum(&[6, 2]).len(), 12);
        assert_eq!(shape_sum(&[4, 4]).len(), 6);
        assert_eq!(shape_sum(&[4, 2, 2]).len(), 12);
        assert_eq!(shape_sum(&[2, 2, 2, 2]).len(), 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(f6().degree(), Some(6));
        assert_eq!(f8().degree(), Some(8));
        assert_eq!(f12().degree(), Some(12));
        assert_eq!(six_planes().degree(), Some(6));
        assert_eq!(eight_planes().degree(), Some(8));
        assert_eq!(twelve_planes().degree(), Some(12));
        assert!(f12().is_homogeneous());
    }

    #[test]
    fn printed_values_at_p1() {
        // the printed sextic takes the value 26 at p1 by direct substitution
        assert_eq!(f6().eval(&p1()), FE::from_int(26));
    }
}

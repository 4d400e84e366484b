//! Klein's binary tetrahedral and icosahedral forms, the projection `phi`
//! onto `P1×P1`, and the classical syzygies.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{BinaryGroup, SU2Element};
use crate::linalg;
use crate::matrix::Matrix4;
use crate::mpoly::{MPoly, Monomial, Space};
use crate::numfield::FieldElement;
use crate::tensor;

type FE = FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KleinName {
    T,
    W,
    Chi,
    F,
    H,
    Tau,
}

impl KleinName {
    pub const ALL: [KleinName; 6] = [KleinName::T, KleinName::W, KleinName::Chi, KleinName::F, KleinName::H, KleinName::Tau];

    pub fn degree(self) -> u32 {
        match self {
            KleinName::T => 6,
            KleinName::W => 8,
            KleinName::Chi | KleinName::F => 12,
            KleinName::H => 20,
            KleinName::Tau => 30,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KleinName::T => "t",
            KleinName::W => "W",
            KleinName::Chi => "chi",
            KleinName::F => "f",
            KleinName::H => "H",
            KleinName::Tau => "Tau",
        }
    }

    /// `(coefficient, exponent of the first variable)`; the second exponent
    /// is the degree minus the first.
    fn terms(self) -> &'static [(i64, u16)] {
        match self {
            KleinName::T => &[(1, 5), (-1, 1)],
            KleinName::W => &[(1, 8), (14, 4), (1, 0)],
            KleinName::Chi => &[(1, 12), (-33, 8), (-33, 4), (1, 0)],
            KleinName::F => &[(1, 11), (11, 6), (-1, 1)],
            KleinName::H => &[(-1, 20), (228, 15), (-494, 10), (-228, 5), (-1, 0)],
            KleinName::Tau => &[(1, 30), (522, 25), (-10005, 20), (-10005, 10), (-522, 5), (1, 0)],
        }
    }
}

impl fmt::Display for KleinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KleinName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KleinName::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Slot 1 uses `(z0, z1)`, slot 2 uses `(z2, z3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    One,
    Two,
}

impl Slot {
    fn offset(self) -> usize {
        match self {
            Slot::One => 0,
            Slot::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinForm {
    pub name: KleinName,
    pub slot: Slot,
    pub poly: MPoly,
}

pub fn klein_form(name: KleinName, slot: Slot) -> KleinForm {
    let d = name.degree() as u16;
    let k = slot.offset();
    let poly = MPoly::from_terms(
        Space::Z,
        name.terms().iter().map(|&(c, a)| {
            let mut e = [0u16; 4];
            e[k] = a;
            e[k + 1] = d - a;
            (Monomial(e), FE::from_int(c))
        }),
    );
    KleinForm { name, slot, poly }
}

/// The SU(2) group whose invariants the form belongs to.
pub fn binary_type(name: KleinName) -> BinaryGroup {
    match name {
        KleinName::T | KleinName::W | KleinName::Chi => BinaryGroup::T,
        _ => BinaryGroup::I,
    }
}

/// `f(g·z)` on the variables of one slot. Slot 2 carries the complex
/// conjugate action, matching `U ↦ U·g⁻¹` on the second ruling.
pub fn act_binary(g: &SU2Element, slot: Slot, f: &MPoly) -> MPoly {
    let k = slot.offset();
    let mut a = Matrix4::identity();
    for r in 0..2 {
        for c in 0..2 {
            let e = &g.matrix().rows[r][c];
            a.rows[k + r][k + c] = if slot == Slot::Two { e.conj() } else { e.clone() };
        }
    }
    f.compose_linear(&a)
}

/// Number of elements of the form's binary group that fix it.
pub fn stabilizer_count(name: KleinName, slot: Slot) -> (usize, usize) {
    let f = klein_form(name, slot).poly;
    let group = binary_type(name).elements();
    (group.iter().filter(|g| act_binary(g, slot, &f) == f).count(), group.len())
}

/// The average of the form over its binary group as realized by the
/// builtin generators, normalized. Equals the form when it is already
/// invariant.
pub fn realized_form(name: KleinName, slot: Slot) -> Result<MPoly> {
    let f = klein_form(name, slot).poly;
    let sum = binary_type(name).elements().iter().fold(MPoly::zero(Space::Z), |acc, g| acc + act_binary(g, slot, &f));
    if sum.is_zero() {
        return Err(Error::ZeroSum);
    }
    Ok(sum.normalized())
}

/// `K̂(z0, z1) · K̂(z2, z3)` with the realized forms.
pub fn realized_product(name: KleinName) -> Result<MPoly> {
    Ok(realized_form(name, Slot::One)? * realized_form(name, Slot::Two)?)
}

/// `K(z0, z1) · K(z2, z3)`.
pub fn klein_product(name: KleinName) -> MPoly {
    klein_form(name, Slot::One).poly * klein_form(name, Slot::Two).poly
}

/// Substitute `x0 = (z0z2+z1z3)/2`, `x1 = (z0z2-z1z3)/(2i)`,
/// `x2 = (z0z3-z1z2)/2`, `x3 = (z0z3+z1z2)/(2i)`.
///
/// In the tensor frame the frame coordinates are the pairing products
/// `z0z2, z1z3, z0z3, z1z2`, so after the frame change every monomial maps
/// to a single monomial.
pub fn phi(p: &MPoly) -> Result<MPoly> {
    let u = match p.space() {
        Space::X => tensor::to_u(p),
        Space::U => p.clone(),
        Space::Z => return Err(Error::SpaceMismatch("x", "z")),
    };
    Ok(phi_frame(&u))
}

/// `phi` on a frame polynomial: `w0 → z0z2, w1 → z1z3, w2 → z0z3, w3 → z1z2`.
pub fn phi_frame(u: &MPoly) -> MPoly {
    let mut out = MPoly::zero(Space::Z);
    for (m, c) in u.terms() {
        let [a, b, c2, d] = m.0;
        out.add_term(Monomial([a + c2, b + d, a + d, b + c2]), c);
    }
    out
}

/// `λ` with `phi(p) = λ·target`.
pub fn phi_factor(p: &MPoly, target: &MPoly) -> Result<FE> {
    let image = phi(p)?;
    if image.is_zero() {
        return Err(Error::PhiImageZero);
    }
    image.scalar_ratio(target).ok_or(Error::NoSuchScalar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syzygy {
    Tetrahedral,
    Icosahedral,
}

impl Syzygy {
    pub fn forms(self) -> [KleinName; 3] {
        match self {
            Syzygy::Tetrahedral => [KleinName::T, KleinName::W, KleinName::Chi],
            Syzygy::Icosahedral => [KleinName::F, KleinName::H, KleinName::Tau],
        }
    }

    /// Degree of the relation.
    pub fn degree(self) -> u32 {
        match self {
            Syzygy::Tetrahedral => 24,
            Syzygy::Icosahedral => 60,
        }
    }
}

impl FromStr for Syzygy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tetrahedral" => Ok(Syzygy::Tetrahedral),
            "icosahedral" => Ok(Syzygy::Icosahedral),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// `108t⁴ - W³ + χ²` or `𝒯² + H³ - 1728f⁵`; zero when the relation holds.
pub fn verify_syzygy(which: Syzygy, slot: Slot) -> MPoly {
    let k = |n| klein_form(n, slot).poly;
    match which {
        Syzygy::Tetrahedral => {
            k(KleinName::T).pow(4).scale(&FE::from_int(108)) - k(KleinName::W).pow(3) + k(KleinName::Chi).pow(2)
        }
        Syzygy::Icosahedral => {
            k(KleinName::Tau).pow(2) + k(KleinName::H).pow(3) - k(KleinName::F).pow(5).scale(&FE::from_int(1728))
        }
    }
}

/// Lowest degree `≤ max_degree` at which the monomials in the three forms
/// of `which` become linearly dependent.
pub fn first_relation_degree(which: Syzygy, slot: Slot, max_degree: u32) -> Option<u32> {
    let forms = which.forms().map(|n| klein_form(n, slot).poly);
    let degs = which.forms().map(KleinName::degree);
    for d in 1..=max_degree {
        let mut products = Vec::new();
        for a in 0..=d / degs[0] {
            for b in 0..=(d - a * degs[0]) / degs[1] {
                let rest = d - a * degs[0] - b * degs[1];
                if rest % degs[2] == 0 {
                    products.push(forms[0].pow(a) * forms[1].pow(b) * forms[2].pow(rest / degs[2]));
                }
            }
        }
        if products.len() < 2 {
            continue;
        }
        let monomials: Vec<Monomial> = {
            let mut all: Vec<Monomial> = products.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
            all.sort();
            all.dedup();
            all
        };
        let rows: Vec<Vec<FE>> = products.iter().map(|p| monomials.iter().map(|m| p.coeff(m)).collect()).collect();
        if linalg::rank(&rows) < products.len() {
            return Some(d);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_have_expected_shape() {
        for n in KleinName::ALL {
            let f = klein_form(n, Slot::Two).poly;
            assert_eq!(f.degree(), Some(n.degree()));
            assert!(f.is_homogeneous());
            assert!(f.terms().all(|(m, _)| m.0[0] == 0 && m.0[1] == 0));
        }
    }

    #[test]
    fn syzygies_vanish() {
        for slot in [Slot::One, Slot::Two] {
            assert!(verify_syzygy(Syzygy::Tetrahedral, slot).is_zero());
            assert!(verify_syzygy(Syzygy::Icosahedral, slot).is_zero());
        }
    }

    #[test]
    fn phi_of_the_quadric_is_zero() {
        let q = MPoly::quadric(Space::X);
        assert!(phi(&q).unwrap().is_zero());
        assert_eq!(phi_factor(&q, &klein_product(KleinName::T)), Err(Error::PhiImageZero));
    }

    #[test]
    fn phi_of_linear_forms() {
        // x0 + i x1 = z0 z2
        let l = MPoly::x(0) + MPoly::x(1).scale(&FE::i());
        assert_eq!(phi(&l).unwrap(), MPoly::z(0) * MPoly::z(2));
        assert!(phi(&MPoly::z(0)).is_err());
    }

    #[test]
    fn tetrahedral_forms_are_invariant() {
        for n in [KleinName::T, KleinName::W, KleinName::Chi] {
            for slot in [Slot::One, Slot::Two] {
                assert_eq!(stabilizer_count(n, slot), (24, 24));
                assert_eq!(realized_form(n, slot).unwrap(), klein_form(n, slot).poly);
            }
        }
    }

    #[test]
    fn icosahedral_forms_need_realizing() {
        assert_eq!(stabilizer_count(KleinName::F, Slot::One), (4, 120));
        let fhat = realized_form(KleinName::F, Slot::One).unwrap();
        let expected = MPoly::from_text(
            "1 ; 12 0 0 0\n-22/5*r5 ; 10 2 0 0\n-33 ; 8 4 0 0\n44/5*r5 ; 6 6 0 0\n-33 ; 4 8 0 0\n-22/5*r5 ; 2 10 0 0\n1 ; 0 12 0 0\n",
            Space::Z,
        )
        .unwrap();
        assert_eq!(fhat, expected);
    }

    #[test]
    fn no_lower_relations() {
        assert_eq!(first_relation_degree(Syzygy::Tetrahedral, Slot::One, 24), Some(24));
    }
}

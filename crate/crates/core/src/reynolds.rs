//! Interchangeable strategies for the Reynolds sum `Σ_{g∈G} g·p` over the
//! builtin groups. Every engine returns the same polynomial bit for bit.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::{BinaryGroup, SU2Element};
use crate::groups::{self, matrices, GroupName};
use crate::matrix::Matrix4;
use crate::mpoly::{MPoly, Space};
use crate::numfield::FieldElement;
use crate::tensor;

pub trait ReynoldsEngine: Send + Sync {
    fn name(&self) -> &'static str;

    /// The unnormalized sum over `group`. Accepts x-space input; the
    /// tensor engine also accepts frame polynomials and answers in kind.
    fn sum(&self, group: GroupName, p: &MPoly) -> Result<MPoly>;
}

/// One substitution per closure element.
pub struct Direct;

impl ReynoldsEngine for Direct {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn sum(&self, group: GroupName, p: &MPoly) -> Result<MPoly> {
        require_x(p)?;
        Ok(groups::reynolds_sum(groups::cached_group(group).elements(), p))
    }
}

/// Sum over a rotation subgroup, then over coset representatives of the
/// reflections.
pub struct Coset;

fn coset_split(group: GroupName) -> Option<(GroupName, Vec<Matrix4>)> {
    let c = matrices::c();
    let cp = matrices::c_prime();
    match group {
        GroupName::F4 => Some((GroupName::G6, vec![Matrix4::identity(), c.clone(), cp.clone(), &c * &cp])),
        GroupName::H4 => Some((GroupName::G12, vec![Matrix4::identity(), c])),
        _ => None,
    }
}

impl ReynoldsEngine for Coset {
    fn name(&self) -> &'static str {
        "coset"
    }

    fn sum(&self, group: GroupName, p: &MPoly) -> Result<MPoly> {
        require_x(p)?;
        let Some((sub, reps)) = coset_split(group) else { return Direct.sum(group, p) };
        let inner = groups::reynolds_sum(groups::cached_group(sub).elements(), p);
        Ok(reps.iter().fold(MPoly::zero(Space::X), |acc, r| acc + inner.compose_linear(&r.transpose())))
    }
}

/// Factors the rotation part as `σ(L×R)` and sums left and right factors
/// separately in the tensor frame: `|L| + |R|` block substitutions instead
/// of `|L|·|R|/2` dense ones.
pub struct Tensor;

/// `G = ∪_r r·σ(L×R)`, with `σ` two-to-one when both factors contain `-1`.
pub struct Factorization {
    pub left: Vec<SU2Element>,
    pub right: Vec<SU2Element>,
    pub kernel: i64,
    pub cosets: Vec<Matrix4>,
}

impl Factorization {
    pub fn of(group: GroupName) -> Factorization {
        let one = || vec![SU2Element::identity()];
        let (left, right, kernel) = match group {
            GroupName::Ttilde1 => (BinaryGroup::T.elements(), one(), 1),
            GroupName::Otilde1 => (BinaryGroup::O.elements(), one(), 1),
            GroupName::Itilde1 => (BinaryGroup::I.elements(), one(), 1),
            GroupName::G6 | GroupName::F4 => (BinaryGroup::T.elements(), BinaryGroup::T.elements(), 2),
            GroupName::G8 => (BinaryGroup::O.elements(), BinaryGroup::O.elements(), 2),
            GroupName::G12 | GroupName::H4 => (BinaryGroup::I.elements(), BinaryGroup::I.elements(), 2),
        };
        let cosets = coset_split(group).map(|(_, r)| r).unwrap_or_else(|| vec![Matrix4::identity()]);
        Factorization { left, right, kernel, cosets }
    }

    pub fn order(&self) -> usize {
        self.left.len() * self.right.len() / self.kernel as usize * self.cosets.len()
    }

    /// The sum on a frame polynomial. On forms of even degree `g` and `-g`
    /// act alike, so each factor is summed over one element per sign pair.
    pub fn sum_frame(&self, p: &MPoly) -> MPoly {
        let even = p.is_homogeneous() && p.degree().is_some_and(|d| d % 2 == 0);
        let (right, mr) = if even { up_to_sign(&self.right) } else { (self.right.iter().collect(), 1) };
        let (left, ml) = if even { up_to_sign(&self.left) } else { (self.left.iter().collect(), 1) };
        let right = right.into_iter().fold(MPoly::zero(Space::U), |acc, g| acc + tensor::act_right(g, p));
        let both = left.into_iter().fold(MPoly::zero(Space::U), |acc, g| acc + tensor::act_left(g, &right));
        let both = both.scale(&FieldElement::from_ratio(mr * ml, self.kernel));
        self.cosets.iter().fold(MPoly::zero(Space::U), |acc, r| acc + tensor::act_matrix(r, &both))
    }
}

/// One element from each `{g, -g}` pair, and the multiplicity.
fn up_to_sign(gs: &[SU2Element]) -> (Vec<&SU2Element>, i64) {
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for g in gs {
        let neg = SU2Element::new(g.matrix().scale(&FieldElement::from_int(-1))).expect("-g is unitary");
        if !seen.contains(&neg.key()) {
            seen.insert(g.key());
            reps.push(g);
        }
    }
    let mult = (gs.len() / reps.len()) as i64;
    (reps, mult)
}

impl ReynoldsEngine for Tensor {
    fn name(&self) -> &'static str {
        "tensor"
    }

    fn sum(&self, group: GroupName, p: &MPoly) -> Result<MPoly> {
        let f = Factorization::of(group);
        match p.space() {
            Space::U => Ok(f.sum_frame(p)),
            Space::X => Ok(tensor::from_u(&f.sum_frame(&tensor::to_u(p)))),
            Space::Z => Err(Error::SpaceMismatch("x", "z")),
        }
    }
}

fn require_x(p: &MPoly) -> Result<()> {
    match p.space() {
        Space::X => Ok(()),
        other => Err(Error::SpaceMismatch("x", other.name())),
    }
}

pub const ENGINE_NAMES: [&str; 3] = ["direct", "coset", "tensor"];

/// Look up an engine by name.
pub fn engine(name: &str) -> Result<Box<dyn ReynoldsEngine>> {
    match name {
        "direct" => Ok(Box::new(Direct)),
        "coset" => Ok(Box::new(Coset)),
        "tensor" => Ok(Box::new(Tensor)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_orders() {
        for g in GroupName::ALL {
            assert_eq!(Factorization::of(g).order(), g.order(), "{g}");
        }
    }

    #[test]
    fn engines_agree_on_small_groups() {
        let p = MPoly::x(0).pow(3) * MPoly::x(2) + MPoly::x(1) * MPoly::x(3).pow(3).scale(&FieldElement::sqrt2());
        let odd = MPoly::x(0).pow(2) * MPoly::x(2) + MPoly::x(1).pow(3);
        for g in [GroupName::Ttilde1, GroupName::G6, GroupName::F4] {
            assert_eq!(Tensor.sum(g, &odd).unwrap(), Direct.sum(g, &odd).unwrap());
            let expected = Direct.sum(g, &p).unwrap();
            for name in ENGINE_NAMES {
                assert_eq!(engine(name).unwrap().sum(g, &p).unwrap(), expected, "{name} on {g}");
            }
        }
    }

    #[test]
    fn unknown_engine() {
        assert!(engine("parallel").is_err());
    }
}

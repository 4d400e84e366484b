//! Finite subgroups of O(4) given by explicit generators: the builtin
//! generator tables, breadth-first closure, Reynolds sums and Molien series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::mpoly::MPoly;
use crate::numfield::{FieldElement, Rational};

/// Default closure bound, above |[3,3,5]| = 14400.
pub const DEFAULT_BOUND: usize = 20000;

/// An orthogonal 4×4 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SO4Element(Matrix4);

impl SO4Element {
    pub fn new(m: Matrix4) -> Result<Self> {
        if !m.is_orthogonal() {
            return Err(Error::Invalid(format!("matrix is not orthogonal:\n{m}")));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn det(&self) -> FieldElement {
        self.0.det()
    }

    pub fn compose(&self, rhs: &SO4Element) -> SO4Element {
        Self(&self.0 * &rhs.0)
    }

    /// `g·p`, i.e. `p(gᵀx)`.
    pub fn act(&self, p: &MPoly) -> MPoly {
        p.compose_linear(&self.0.transpose())
    }

    pub fn key(&self) -> String {
        self.0.canonical()
    }
}

impl fmt::Debug for SO4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SO4Element({:?})", self.0)
    }
}

/// Named generator sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    G6,
    G8,
    G12,
    F4,
    H4,
    Ttilde1,
    Otilde1,
    Itilde1,
}

impl GroupName {
    pub const ALL: [GroupName; 8] = [
        GroupName::G6,
        GroupName::G8,
        GroupName::G12,
        GroupName::F4,
        GroupName::H4,
        GroupName::Ttilde1,
        GroupName::Otilde1,
        GroupName::Itilde1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::G6 => "G6",
            GroupName::G8 => "G8",
            GroupName::G12 => "G12",
            GroupName::F4 => "F4",
            GroupName::H4 => "H4",
            GroupName::Ttilde1 => "Ttilde1",
            GroupName::Otilde1 => "Otilde1",
            GroupName::Itilde1 => "Itilde1",
        }
    }

    /// Expected order of the generated group.
    pub fn order(self) -> usize {
        match self {
            GroupName::G6 => 288,
            GroupName::G8 => 1152,
            GroupName::G12 => 7200,
            GroupName::F4 => 1152,
            GroupName::H4 => 14400,
            GroupName::Ttilde1 => 24,
            GroupName::Otilde1 => 48,
            GroupName::Itilde1 => 120,
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let name = match lower.as_str() {
            "g6" => GroupName::G6,
            "g8" => GroupName::G8,
            "g12" => GroupName::G12,
            "f4" | "[3,4,3]" => GroupName::F4,
            "h4" | "[3,3,5]" => GroupName::H4,
            "ttilde1" => GroupName::Ttilde1,
            "otilde1" => GroupName::Otilde1,
            "itilde1" => GroupName::Itilde1,
            _ => return Err(Error::UnknownName(s.to_string())),
        };
        Ok(name)
    }
}

/// The matrices `(q2,1), (1,q2), …, C, C'`.
pub mod matrices {
    use super::*;

    fn half() -> FieldElement {
        FieldElement::from_ratio(1, 2)
    }

    fn one() -> FieldElement {
        FieldElement::one()
    }

    pub fn q2_left() -> Matrix4 {
        Matrix4::from_ints([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], &one())
    }

    pub fn q2_right() -> Matrix4 {
        Matrix4::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], &one())
    }

    pub fn p3_left() -> Matrix4 {
        Matrix4::from_ints([[1, -1, 1, -1], [1, 1, -1, -1], [-1, 1, 1, -1], [1, 1, 1, 1]], &half())
    }

    pub fn p3_right() -> Matrix4 {
        Matrix4::from_ints([[1, 1, -1, 1], [-1, 1, -1, -1], [1, 1, 1, -1], [-1, 1, 1, 1]], &half())
    }

    pub fn p4_left() -> Matrix4 {
        let s = FieldElement::sqrt2().inv().expect("nonzero");
        Matrix4::from_ints([[1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]], &s)
    }

    pub fn p4_right() -> Matrix4 {
        let s = FieldElement::sqrt2().inv().expect("nonzero");
        Matrix4::from_ints([[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]], &s)
    }

    // entries of (p5,1) and (1,p5) are 0, ±1, ±τ, ±(τ-1), all halved
    fn tau_matrix(spec: [[(i64, i64); 4]; 4]) -> Matrix4 {
        let tau = FieldElement::tau();
        let h = half();
        Matrix4::from_rows(spec.map(|row| {
            row.map(|(c, t)| &(FieldElement::from_int(c) + &tau * &FieldElement::from_int(t)) * &h)
        }))
    }

    pub fn p5_left() -> Matrix4 {
        // (constant, τ-coefficient)
        tau_matrix([
            [(0, 1), (0, 0), (1, -1), (-1, 0)],
            [(0, 0), (0, 1), (-1, 0), (-1, 1)],
            [(-1, 1), (1, 0), (0, 1), (0, 0)],
            [(1, 0), (1, -1), (0, 0), (0, 1)],
        ])
    }

    pub fn p5_right() -> Matrix4 {
        tau_matrix([
            [(0, 1), (0, 0), (-1, 1), (1, 0)],
            [(0, 0), (0, 1), (-1, 0), (-1, 1)],
            [(1, -1), (1, 0), (0, 1), (0, 0)],
            [(-1, 0), (1, -1), (0, 0), (0, 1)],
        ])
    }

    /// `diag(1, -1, -1, -1)`.
    pub fn c() -> Matrix4 {
        Matrix4::diag([1, -1, -1, -1].map(FieldElement::from_int))
    }

    /// Swaps `x2` and `x3`.
    pub fn c_prime() -> Matrix4 {
        Matrix4::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], &one())
    }
}

/// The generator list for a named group.
pub fn builtin_generators(name: GroupName) -> Vec<SO4Element> {
    use matrices::*;
    let g6 = || vec![q2_left(), q2_right(), p3_left(), p3_right()];
    let mats = match name {
        GroupName::G6 => g6(),
        GroupName::G8 => {
            let mut v = g6();
            v.extend([p4_left(), p4_right()]);
            v
        }
        GroupName::G12 => {
            let mut v = g6();
            v.extend([p5_left(), p5_right()]);
            v
        }
        GroupName::F4 => {
            let mut v = g6();
            v.extend([c(), c_prime()]);
            v
        }
        GroupName::H4 => {
            let mut v = g6();
            v.extend([p5_left(), p5_right(), c()]);
            v
        }
        GroupName::Ttilde1 => vec![q2_left(), p3_left()],
        GroupName::Otilde1 => vec![q2_left(), p3_left(), p4_left()],
        GroupName::Itilde1 => vec![q2_left(), p3_left(), p5_left()],
    };
    mats.into_iter().map(|m| SO4Element::new(m).expect("builtin generators are orthogonal")).collect()
}

/// A finite group stored as an explicit element list.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    name: Option<String>,
    elements: Vec<SO4Element>,
    index: HashMap<String, usize>,
}

impl MatrixGroup {
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SO4Element] {
        &self.elements
    }

    pub fn position(&self, g: &SO4Element) -> Option<usize> {
        self.index.get(&g.key()).copied()
    }

    pub fn contains(&self, g: &SO4Element) -> bool {
        self.position(g).is_some()
    }

    /// Text export: one canonical matrix per block, blocks separated by a
    /// blank line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("# {n} order {}\n", self.order()));
        }
        for g in &self.elements {
            s.push_str(&g.key());
            s.push_str("\n\n");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MatrixGroup> {
        let mut name = None;
        let mut elements = Vec::new();
        let mut block = String::new();
        let flush = |block: &mut String, elements: &mut Vec<SO4Element>| -> Result<()> {
            if !block.trim().is_empty() {
                elements.push(SO4Element::new(Matrix4::parse_canonical(block)?)?);
            }
            block.clear();
            Ok(())
        };
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix('#') {
                name = rest.split_whitespace().next().map(str::to_string);
            } else if line.trim().is_empty() {
                flush(&mut block, &mut elements)?;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        flush(&mut block, &mut elements)?;
        let index = elements.iter().enumerate().map(|(k, g)| (g.key(), k)).collect();
        Ok(MatrixGroup { name, elements, index })
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Element order is deterministic: identity first, then each element's
/// products with the generators in generator order.
pub fn group_closure(gens: &[SO4Element], bound: usize) -> Result<MatrixGroup> {
    let id = SO4Element::identity();
    let mut index = HashMap::new();
    index.insert(id.key(), 0);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        for s in gens {
            let g = elements[head].compose(s);
            let key = g.key();
            if !index.contains_key(&key) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                index.insert(key, elements.len());
                elements.push(g);
            }
        }
        head += 1;
    }
    Ok(MatrixGroup { name: None, elements, index })
}

/// Closure of a builtin generator set, labelled with its name.
pub fn builtin_group(name: GroupName, bound: usize) -> Result<MatrixGroup> {
    Ok(group_closure(&builtin_generators(name), bound)?.with_name(name.as_str()))
}

/// Process-wide closure of a builtin group at the default bound, computed
/// once.
pub fn cached_group(name: GroupName) -> &'static MatrixGroup {
    use std::sync::OnceLock;
    static CACHE: [OnceLock<MatrixGroup>; 8] = [const { OnceLock::new() }; 8];
    let k = GroupName::ALL.iter().position(|n| *n == name).expect("listed");
    CACHE[k].get_or_init(|| builtin_group(name, DEFAULT_BOUND).expect("builtin groups close below the default bound"))
}

/// `Σ_g g·p` over the given elements (the unnormalized sum).
pub fn reynolds_sum(elements: &[SO4Element], p: &MPoly) -> MPoly {
    let mut acc = MPoly::zero(p.space());
    for g in elements {
        acc = acc + g.act(p);
    }
    acc
}

/// Hilbert series coefficients of the invariant ring, degree `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolienSeries {
    pub coefficients: Vec<Rational>,
}

impl MolienSeries {
    pub fn as_integers(&self) -> Option<Vec<u64>> {
        self.coefficients
            .iter()
            .map(|c| if c.is_integer() && !c.is_negative() { c.to_string().parse().ok() } else { None })
            .collect()
    }
}

/// Coefficients `[1, c1, c2, c3, c4]` of `det(I - t·g)`.
pub fn char_series_denominator(g: &Matrix4) -> [FieldElement; 5] {
    // e_k = sum of principal k×k minors; det(I - tg) = Σ (-t)^k e_k
    let mut e = [FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::zero()];
    e[0] = FieldElement::one();
    for mask in 1u32..16 {
        let idx: Vec<usize> = (0..4).filter(|k| mask & (1 << k) != 0).collect();
        let sub: Vec<Vec<FieldElement>> =
            idx.iter().map(|&r| idx.iter().map(|&c| g.rows[r][c].clone()).collect()).collect();
        let m = crate::matrix::det_dense(sub);
        e[idx.len()] += &m;
    }
    std::array::from_fn(|k| if k % 2 == 1 { -&e[k] } else { e[k].clone() })
}

/// Power-series inverse of `1 + a1 t + … + a4 t⁴` up to degree `n`.
fn invert_series(den: &[FieldElement; 5], n: usize) -> Vec<FieldElement> {
    let mut s: Vec<FieldElement> = Vec::with_capacity(n + 1);
    s.push(FieldElement::one());
    for k in 1..=n {
        let mut acc = FieldElement::zero();
        for j in 1..=4.min(k) {
            if !den[j].is_zero() {
                acc -= &(&den[j] * &s[k - j]);
            }
        }
        s.push(acc);
    }
    s
}

/// `(1/|G|) Σ_g 1/det(I - t·g)` up to `t^max_degree`.
///
/// Elements sharing a characteristic polynomial are expanded once.
pub fn molien_series(group: &MatrixGroup, max_degree: usize) -> Result<MolienSeries> {
    let mut classes: BTreeMap<String, ([FieldElement; 5], usize)> = BTreeMap::new();
    for g in group.elements() {
        let den = char_series_denominator(g.matrix());
        let key = den.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | ");
        classes.entry(key).or_insert((den, 0)).1 += 1;
    }
    let mut total = vec![FieldElement::zero(); max_degree + 1];
    for (den, count) in classes.values() {
        let s = invert_series(den, max_degree);
        let c = FieldElement::from_int(*count as i64);
        for (t, v) in total.iter_mut().zip(s.iter()) {
            *t += &(v * &c);
        }
    }
    let order = Rational::from_int(group.order() as i64);
    let coefficients = total
        .into_iter()
        .map(|v| {
            v.as_rational()
                .map(|r| &r / &order)
                .ok_or_else(|| Error::Invalid(format!("non-rational Molien coefficient {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let series = MolienSeries { coefficients };
    if series.as_integers().is_none() {
        return Err(Error::Invalid(format!("Molien coefficients are not non-negative integers: {:?}", series.coefficients)));
    }
    Ok(series)
}

/// Expansion of `Π 1/(1 - t^d)` up to `t^max_degree`: the number of ways to
/// write each degree as a sum of the given parts.
pub fn product_formula_series(degrees: &[usize], max_degree: usize) -> Vec<u64> {
    let mut c = vec![0u64; max_degree + 1];
    c[0] = 1;
    for &d in degrees {
        for n in d..=max_degree {
            c[n] += c[n - d];
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Space;

    #[test]
    fn generators_are_orthogonal_with_expected_determinants() {
        for name in GroupName::ALL {
            for g in builtin_generators(name) {
                let d = g.det();
                assert!(d == FieldElement::one() || d == FieldElement::from_int(-1));
            }
        }
        assert_eq!(SO4Element::new(matrices::c()).unwrap().det(), FieldElement::from_int(-1));
    }

    #[test]
    fn small_closures() {
        assert_eq!(builtin_group(GroupName::Ttilde1, DEFAULT_BOUND).unwrap().order(), 24);
        assert_eq!(builtin_group(GroupName::Otilde1, DEFAULT_BOUND).unwrap().order(), 48);
        assert_eq!(builtin_group(GroupName::Itilde1, DEFAULT_BOUND).unwrap().order(), 120);
        assert_eq!(builtin_group(GroupName::G6, DEFAULT_BOUND).unwrap().order(), 288);
    }

    #[test]
    fn bound_exceeded() {
        let err = group_closure(&builtin_generators(GroupName::G6), 100).unwrap_err();
        assert_eq!(err, Error::BoundExceeded(100));
    }

    #[test]
    fn reynolds_of_quadric() {
        let g = builtin_group(GroupName::Ttilde1, DEFAULT_BOUND).unwrap();
        let q = MPoly::quadric(Space::X);
        assert_eq!(reynolds_sum(g.elements(), &q), q.scale(&FieldElement::from_int(24)));
    }

    #[test]
    fn molien_trivial_group() {
        let g = group_closure(&[], 10).unwrap();
        let m = molien_series(&g, 2).unwrap();
        assert_eq!(m.as_integers().unwrap(), vec![1, 4, 10]);
    }

    #[test]
    fn partition_oracle() {
        assert_eq!(product_formula_series(&[1], 3), vec![1, 1, 1, 1]);
        assert_eq!(product_formula_series(&[2, 6, 8, 12], 12), vec![1, 0, 1, 0, 1, 0, 2, 0, 3, 0, 3, 0, 5]);
    }

    #[test]
    fn group_text_round_trip() {
        let g = builtin_group(GroupName::Ttilde1, DEFAULT_BOUND).unwrap();
        let back = MatrixGroup::from_text(&g.to_text()).unwrap();
        assert_eq!(back.order(), 24);
        assert_eq!(back.name(), Some("Ttilde1"));
        assert!(g.elements().iter().all(|e| back.contains(e)));
    }

    #[test]
    fn unknown_group_name() {
        assert!(matches!("G7".parse::<GroupName>(), Err(Error::UnknownName(_))));
        assert_eq!("[3,4,3]".parse::<GroupName>().unwrap(), GroupName::F4);
    }
}

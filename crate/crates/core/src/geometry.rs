//! Binary polyhedral groups in SU(2), their fixed lines on the quadric
//! `P1×P1 ⊂ P3`, couples of lines and the planes they span, and the orbit
//! products that average to the `[3,4,3]` invariants.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::{self, GroupName, SO4Element, DEFAULT_BOUND};
use crate::linalg;
use crate::matrix::{Matrix2, Matrix4};
use crate::klein::{self, KleinName};
use crate::mpoly::{MPoly, Monomial, Space};
use crate::reynolds::{ReynoldsEngine, Tensor};
use crate::tensor;
use crate::numfield::{roots_of_unity, FieldElement};

type FE = FieldElement;

/// A 2×2 special unitary matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SU2Element(Matrix2);

impl SU2Element {
    pub fn new(m: Matrix2) -> Result<Self> {
        if !m.det().is_one() || !(&m.adjoint() * &m).rows.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, e)| if r == c { e.is_one() } else { e.is_zero() })
        }) {
            return Err(Error::Invalid(format!("not in SU(2): {m:?}")));
        }
        Ok(Self(m))
    }

    /// The unit quaternion `a + b·i + c·j + d·k` as `identify(a, b, c, d)`.
    pub fn from_quaternion(q: [FE; 4]) -> Result<Self> {
        Self::new(identify(&q))
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, rhs: &SU2Element) -> SU2Element {
        Self(&self.0 * &rhs.0)
    }

    pub fn trace(&self) -> FE {
        self.0.trace()
    }

    pub fn is_central(&self) -> bool {
        let m = &self.0.rows;
        m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1]
    }

    /// Multiplicative order (finite for every element built here).
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while p.0 != Matrix2::identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }

    pub fn key(&self) -> String {
        self.0.canonical()
    }

    pub fn apply(&self, v: &[FE; 2]) -> [FE; 2] {
        self.0.apply(v)
    }
}

impl fmt::Debug for SU2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SU2Element({:?})", self.0)
    }
}

/// `[[x0+ix1, x2+ix3], [-x2+ix3, x0-ix1]]`; its determinant is `q(x)`.
pub fn identify(x: &[FE; 4]) -> Matrix2 {
    let i = FE::i();
    Matrix2::new(&x[0] + &(&i * &x[1]), &x[2] + &(&i * &x[3]), -&x[2] + &(&i * &x[3]), &x[0] - &(&i * &x[1]))
}

/// Inverse of [`identify`].
pub fn unidentify(u: &Matrix2) -> [FE; 4] {
    let half = FE::from_ratio(1, 2);
    let half_i = FE::i().inv().expect("nonzero").scale(&crate::Rational::new(1, 2));
    let [[u00, u01], [u10, u11]] = &u.rows;
    [
        &(u00 + u11) * &half,
        &(u00 - u11) * &half_i,
        &(u01 - u10) * &half,
        &(u01 + u10) * &half_i,
    ]
}

/// The point of `P3` whose identified matrix is `z_left · z_rightᵀ`.
pub fn segre(z_left: &[FE; 2], z_right: &[FE; 2]) -> Result<[FE; 4]> {
    if z_left.iter().all(FE::is_zero) || z_right.iter().all(FE::is_zero) {
        return Err(Error::ZeroPair);
    }
    let u = Matrix2::new(
        &z_left[0] * &z_right[0],
        &z_left[0] * &z_right[1],
        &z_left[1] * &z_right[0],
        &z_left[1] * &z_right[1],
    );
    Ok(unidentify(&u))
}

/// The SO(4) matrix of `x ↦ identify⁻¹(g1 · identify(x) · g2⁻¹)`.
pub fn sigma(g1: &SU2Element, g2: &SU2Element) -> SO4Element {
    let g2inv = g2.inverse();
    let cols: [[FE; 4]; 4] = std::array::from_fn(|k| {
        let mut e: [FE; 4] = Default::default();
        e[k] = FE::one();
        let u = &(&g1.0 * &identify(&e)) * &g2inv.0;
        unidentify(&u)
    });
    SO4Element::new(Matrix4::from_columns(cols)).expect("sigma lands in SO(4)")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryGroup {
    T,
    O,
    I,
}

impl BinaryGroup {
    pub fn order(self) -> usize {
        match self {
            BinaryGroup::T => 24,
            BinaryGroup::O => 48,
            BinaryGroup::I => 120,
        }
    }

    /// Quaternion generators: `j`, `(1+i-j+k)/2`, then `(1+i)/√2` or
    /// `(τ + (τ-1)j + k)/2`.
    pub fn generators(self) -> Vec<SU2Element> {
        let h = FE::from_ratio(1, 2);
        let j = [FE::zero(), FE::zero(), FE::one(), FE::zero()];
        let p3 = [1, 1, -1, 1].map(|v| &FE::from_int(v) * &h);
        let mut gens = vec![j, p3];
        match self {
            BinaryGroup::T => {}
            BinaryGroup::O => {
                let s = FE::sqrt2().inv().expect("nonzero");
                gens.push([s.clone(), s, FE::zero(), FE::zero()]);
            }
            BinaryGroup::I => {
                let tau = FE::tau();
                gens.push([&tau * &h, FE::zero(), &(&tau - &FE::one()) * &h, h.clone()]);
            }
        }
        gens.into_iter().map(|q| SU2Element::from_quaternion(q).expect("unit quaternion")).collect()
    }

    pub fn elements(self) -> Vec<SU2Element> {
        binary_closure(&self.generators(), DEFAULT_BOUND).expect("binary groups are finite")
    }
}

impl FromStr for BinaryGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(BinaryGroup::T),
            "O" | "o" => Ok(BinaryGroup::O),
            "I" | "i" => Ok(BinaryGroup::I),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Breadth-first closure in SU(2); identity first.
pub fn binary_closure(gens: &[SU2Element], bound: usize) -> Result<Vec<SU2Element>> {
    let mut seen = HashMap::new();
    let id = SU2Element::identity();
    seen.insert(id.key(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        for s in gens {
            let g = out[head].compose(s);
            if seen.insert(g.key(), ()).is_none() {
                if out.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                out.push(g);
            }
        }
        head += 1;
    }
    Ok(out)
}

pub fn binary_group(name: BinaryGroup) -> Vec<SU2Element> {
    name.elements()
}

/// Scale a nonzero pair so its first nonzero coordinate is 1.
pub fn normalize_pair(v: &[FE; 2]) -> Result<[FE; 2]> {
    let lead = v.iter().find(|e| !e.is_zero()).ok_or(Error::ZeroPair)?;
    let inv = lead.inv()?;
    Ok([&v[0] * &inv, &v[1] * &inv])
}

fn pair_key(v: &[FE; 2]) -> String {
    format!("{} : {}", v[0], v[1])
}

/// Eigenvector of `m` for the eigenvalue `alpha`, normalized.
fn eigenvector(m: &Matrix2, alpha: &FE) -> Result<[FE; 2]> {
    let [[a, b], [c, d]] = &m.rows;
    let v1 = [b.clone(), alpha - a];
    let v = if v1.iter().any(|e| !e.is_zero()) { v1 } else { [alpha - d, c.clone()] };
    let v = normalize_pair(&v).map_err(|_| Error::Degenerate(format!("no eigenvector for {alpha}")))?;
    if m.apply(&v) != [alpha * &v[0], alpha * &v[1]] {
        return Err(Error::Degenerate(format!("{alpha} is not an eigenvalue of {m:?}")));
    }
    Ok(v)
}

/// The two eigenvalues of a non-central element, looked up among the roots
/// of unity of `K` by trace, in canonical rendering order.
pub fn eigenvalues(p: &SU2Element) -> Result<[FE; 2]> {
    if p.is_central() {
        return Err(Error::CentralElement);
    }
    let tr = p.trace();
    let mut found: Vec<FE> = roots_of_unity().iter().filter(|a| (*a + &a.conj()) == tr).cloned().collect();
    if found.len() != 2 {
        return Err(Error::EigenvalueOutsideField(tr.to_string()));
    }
    found.sort_by_key(|a| a.to_string());
    Ok([found[0].clone(), found[1].clone()])
}

/// `(eigenvalue, eigenvector)` for both eigenvalues of `p` acting on columns.
pub fn fixed_points(p: &SU2Element) -> Result<[(FE, [FE; 2]); 2]> {
    let [a0, a1] = eigenvalues(p)?;
    let v0 = eigenvector(&p.0, &a0)?;
    let v1 = eigenvector(&p.0, &a1)?;
    Ok([(a0, v0), (a1, v1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ruling {
    First,
    Second,
}

/// A line of fixed points on the quadric: `{segre(v, w) : w}` for the first
/// ruling, `{segre(z, w) : z}` for the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenLine {
    pub source: SU2Element,
    pub eigenvalue: FE,
    pub eigenvector: [FE; 2],
    pub ruling: Ruling,
}

impl EigenLine {
    /// First ruling: `source · v = α v`.
    pub fn first(source: &SU2Element, alpha: &FE) -> Result<Self> {
        Ok(Self {
            source: source.clone(),
            eigenvalue: alpha.clone(),
            eigenvector: eigenvector(&source.0, alpha)?,
            ruling: Ruling::First,
        })
    }

    /// Second ruling, row action of the inverse: `wᵀ · source⁻¹ = α wᵀ`.
    pub fn second(source: &SU2Element, alpha: &FE) -> Result<Self> {
        let m = source.inverse().0.transpose();
        Ok(Self {
            source: source.clone(),
            eigenvalue: alpha.clone(),
            eigenvector: eigenvector(&m, alpha)?,
            ruling: Ruling::Second,
        })
    }

    /// The point of the line with free parameter `t`.
    pub fn point(&self, t: &[FE; 2]) -> Result<[FE; 4]> {
        match self.ruling {
            Ruling::First => segre(&self.eigenvector, t),
            Ruling::Second => segre(t, &self.eigenvector),
        }
    }

    /// Every point of the line is an eigenvector of the SO(4) image of the
    /// source with the line's eigenvalue.
    pub fn is_pointwise_fixed(&self) -> bool {
        let id = SU2Element::identity();
        let g = match self.ruling {
            Ruling::First => sigma(&self.source, &id),
            Ruling::Second => sigma(&id, &self.source),
        };
        sample_params().iter().all(|t| {
            let x = self.point(t).expect("nonzero parameter");
            g.matrix().apply(&x) == x.clone().map(|e| &e * &self.eigenvalue)
        })
    }
}

fn sample_params() -> [[FE; 2]; 3] {
    [[FE::one(), FE::zero()], [FE::zero(), FE::one()], [FE::one(), FE::from_int(2)]]
}

/// Two fixed lines with equal eigenvalue, one per ruling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Couple {
    pub left: EigenLine,
    pub right: EigenLine,
}

impl Couple {
    pub fn new(left: EigenLine, right: EigenLine) -> Result<Self> {
        if left.ruling != Ruling::First || right.ruling != Ruling::Second || left.eigenvalue != right.eigenvalue {
            return Err(Error::Invalid("a couple pairs a first- and a second-ruling line with equal eigenvalue".into()));
        }
        Ok(Self { left, right })
    }

    /// The couple of `source` for eigenvalue `alpha`.
    pub fn of(source: &SU2Element, alpha: &FE) -> Result<Self> {
        Self::new(EigenLine::first(source, alpha)?, EigenLine::second(source, alpha)?)
    }
}

/// Linear form of the plane spanned by a couple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneForm {
    pub form: MPoly,
}

impl PlaneForm {
    pub fn vanishes_on(&self, line: &EigenLine) -> bool {
        sample_params().iter().all(|t| self.form.eval(&line.point(t).expect("nonzero parameter")).is_zero())
    }
}

/// The plane through both lines of `c`, from the nullspace of four sampled
/// points, normalized to leading coefficient 1.
pub fn couple_plane(c: &Couple) -> Result<PlaneForm> {
    let e0 = [FE::one(), FE::zero()];
    let e1 = [FE::zero(), FE::one()];
    let rows: Vec<Vec<FE>> = [c.left.point(&e0)?, c.left.point(&e1)?, c.right.point(&e0)?, c.right.point(&e1)?]
        .into_iter()
        .map(|p| p.to_vec())
        .collect();
    let ns = linalg::nullspace(&rows);
    if ns.len() != 1 {
        return Err(Error::Degenerate(format!("couple spans a solution space of dimension {}", ns.len())));
    }
    let coeffs: [FE; 4] = std::array::from_fn(|k| ns[0][k].clone());
    let plane = PlaneForm { form: MPoly::linear(Space::X, coeffs).normalized() };
    debug_assert!(plane.vanishes_on(&c.left) && plane.vanishes_on(&c.right));
    Ok(plane)
}

/// Closed form of the same plane: `aᵀ·identify(x)·b` with `a ⊥ v`, `b ⊥ w`.
pub fn couple_plane_closed_form(c: &Couple) -> MPoly {
    let [v0, v1] = &c.left.eigenvector;
    let [w0, w1] = &c.right.eigenvector;
    let a = [v1.clone(), -v0];
    let b = [w1.clone(), -w0];
    // identify is linear, so evaluate it on the basis vectors
    let coeffs: [FE; 4] = std::array::from_fn(|k| {
        let mut e: [FE; 4] = Default::default();
        e[k] = FE::one();
        let m = identify(&e);
        let mb = m.apply(&b);
        &a[0] * &mb[0] + &a[1] * &mb[1]
    });
    MPoly::linear(Space::X, coeffs).normalized()
}

/// An orbit of fixed points of a binary group acting on `P1`.
#[derive(Clone, Debug)]
pub struct LineOrbit {
    pub points: Vec<[FE; 2]>,
    pub stabilizer_order: usize,
}

impl LineOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All fixed points of non-central elements, partitioned into orbits.
/// Sorted by length, ties by first point.
pub fn line_orbits(group: &[SU2Element]) -> Result<Vec<LineOrbit>> {
    let mut points: Vec<[FE; 2]> = Vec::new();
    let mut seen = BTreeSet::new();
    for g in group.iter().filter(|g| !g.is_central()) {
        for (_, v) in fixed_points(g)? {
            if seen.insert(pair_key(&v)) {
                points.push(v);
            }
        }
    }
    let mut assigned = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &points {
        if assigned.contains(&pair_key(p)) {
            continue;
        }
        let mut orbit = Vec::new();
        for g in group {
            let q = normalize_pair(&g.apply(p))?;
            if assigned.insert(pair_key(&q)) {
                orbit.push(q);
            }
        }
        orbits.push(LineOrbit { stabilizer_order: group.len() / orbit.len(), points: orbit });
    }
    orbits.sort_by_key(|o| (o.len(), pair_key(&o.points[0])));
    Ok(orbits)
}

/// Orbit lengths of the special points, counted from maximal cyclic
/// subgroups: each fixes two points, and a point's stabilizer is its
/// maximal cyclic subgroup. Needs no eigenvectors.
pub fn orbit_lengths_by_stabilizers(group: &[SU2Element]) -> Vec<usize> {
    let index: HashMap<String, usize> = group.iter().enumerate().map(|(k, g)| (g.key(), k)).collect();
    let mut cyclic: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in group.iter().filter(|g| !g.is_central()) {
        let mut members = Vec::new();
        let mut p = g.clone();
        loop {
            members.push(index[&p.key()]);
            if p == SU2Element::identity() {
                break;
            }
            p = p.compose(g);
        }
        members.sort_unstable();
        cyclic.insert(members);
    }
    let maximal: Vec<&Vec<usize>> = cyclic
        .iter()
        .filter(|c| !cyclic.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.binary_search(x).is_ok())))
        .collect();
    let mut count_by_order: HashMap<usize, usize> = HashMap::new();
    for c in maximal {
        *count_by_order.entry(c.len()).or_default() += 1;
    }
    let mut lengths = Vec::new();
    for (order, count) in count_by_order {
        let len = group.len() / order;
        lengths.extend(std::iter::repeat_n(len, 2 * count / len));
    }
    lengths.sort_unstable();
    lengths
}

/// Named orbits whose plane products give the degree 6, 8, 12 invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitName {
    T6,
    O8,
    O12,
}

impl OrbitName {
    fn group(self) -> BinaryGroup {
        match self {
            OrbitName::T6 => BinaryGroup::T,
            OrbitName::O8 | OrbitName::O12 => BinaryGroup::O,
        }
    }

    fn len(self) -> usize {
        match self {
            OrbitName::T6 => 6,
            OrbitName::O8 => 8,
            OrbitName::O12 => 12,
        }
    }
}

impl FromStr for OrbitName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T6" => Ok(OrbitName::T6),
            "O8" => Ok(OrbitName::O8),
            "O12" => Ok(OrbitName::O12),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// The couple attached to a fixed point: the stabilizer generator with the
/// smallest canonical rendering, and its eigenvalue at the point.
pub fn couple_at(group: &[SU2Element], point: &[FE; 2]) -> Result<Couple> {
    let stabilizing = group.iter().filter(|g| {
        !g.is_central() && {
            let w = g.apply(point);
            &w[0] * &point[1] == &w[1] * &point[0]
        }
    });
    let top = stabilizing.clone().map(SU2Element::order).max().ok_or(Error::Degenerate("point is not a fixed point".into()))?;
    let source = stabilizing.filter(|g| g.order() == top).min_by_key(|g| g.key()).expect("nonempty");
    let image = source.apply(point);
    let k = if point[0].is_zero() { 1 } else { 0 };
    let alpha = &image[k] * &point[k].inv()?;
    Couple::of(source, &alpha)
}

/// All couples of a named orbit, in orbit order.
pub fn orbit_couples(name: OrbitName) -> Result<Vec<Couple>> {
    let group = name.group().elements();
    let orbit = line_orbits(&group)?
        .into_iter()
        .find(|o| o.len() == name.len())
        .ok_or_else(|| Error::Degenerate(format!("no orbit of length {}", name.len())))?;
    orbit.points.iter().map(|p| couple_at(&group, p)).collect()
}

/// Product of the plane forms over all couples of the orbit, normalized.
pub fn orbit_plane_product(name: OrbitName) -> Result<MPoly> {
    let mut prod = MPoly::one(Space::X);
    for c in orbit_couples(name)? {
        prod = prod * couple_plane(&c)?.form;
    }
    Ok(prod.normalized())
}

/// Degree 6, 8, 12 invariants of `[3,4,3]` from orbit products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitInvariant {
    F6,
    F8,
    F12,
}

impl OrbitInvariant {
    pub fn orbit(self) -> OrbitName {
        match self {
            OrbitInvariant::F6 => OrbitName::T6,
            OrbitInvariant::F8 => OrbitName::O8,
            OrbitInvariant::F12 => OrbitName::O12,
        }
    }
}

/// `Σ_{g ∈ T̃×1} g·(orbit product)`, normalized.
pub fn invariant_from_orbit(name: OrbitInvariant) -> Result<MPoly> {
    let product = orbit_plane_product(name.orbit())?;
    let t1 = groups::builtin_group(GroupName::Ttilde1, DEFAULT_BOUND)?;
    let sum = groups::reynolds_sum(t1.elements(), &product);
    if sum.is_zero() {
        return Err(Error::ZeroSum);
    }
    let sum = sum.normalized();
    if !sum.is_real() {
        return Err(Error::Invalid(format!("{name:?} has non-real coefficients")));
    }
    Ok(sum)
}

/// How the `z0`, `z1` factors of a monomial are matched with `z2`, `z3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// Match `z0` with `z2` as often as possible.
    ZeroTwo,
    /// Match `z0` with `z3` as often as possible.
    ZeroThree,
}

impl Pairing {
    pub const ALL: [Pairing; 2] = [Pairing::ZeroTwo, Pairing::ZeroThree];

    /// Exponents of `(w0, w1, w2, w3) = (z0z2, z1z3, z0z3, z1z2)`.
    fn split(self, [a, b, c, d]: [u16; 4]) -> [u16; 4] {
        match self {
            Pairing::ZeroTwo => {
                let k02 = a.min(c);
                let (k03, k12) = (a - k02, c - k02);
                [k02, b - k12, k03, k12]
            }
            Pairing::ZeroThree => {
                let k03 = a.min(d);
                let (k02, k13) = (a - k03, d - k03);
                [k02, k13, k03, b - k13]
            }
        }
    }
}

fn check_bidegree(p: &MPoly) -> Result<()> {
    if p.space() != Space::Z {
        return Err(Error::SpaceMismatch("z", p.space().name()));
    }
    let mut seen = None;
    for (m, _) in p.terms() {
        let (l, r) = (m.0[0] + m.0[1], m.0[2] + m.0[3]);
        if l != r || seen.is_some_and(|s| s != l) {
            return Err(Error::UnbalancedBidegree(l as u32, r as u32));
        }
        seen = Some(l);
    }
    Ok(())
}

/// A frame polynomial whose image under `phi` is `p`.
pub fn lift_frame(p: &MPoly, pairing: Pairing) -> Result<MPoly> {
    check_bidegree(p)?;
    Ok(MPoly::from_terms(Space::U, p.terms().map(|(m, c)| (Monomial(pairing.split(m.0)), c.clone()))))
}

/// A right inverse of `phi` on bihomogeneous forms of bidegree `(n, n)`.
pub fn lift(p: &MPoly) -> Result<MPoly> {
    Ok(tensor::from_u(&lift_frame(p, Pairing::ZeroTwo)?))
}

/// Invariants built by averaging a lifted Klein product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftInvariant {
    G12deg12,
    G20,
    G30,
    F6L,
    F8L,
    F12L,
}

impl LiftInvariant {
    pub const ALL: [LiftInvariant; 6] = [
        LiftInvariant::G12deg12,
        LiftInvariant::G20,
        LiftInvariant::G30,
        LiftInvariant::F6L,
        LiftInvariant::F8L,
        LiftInvariant::F12L,
    ];

    pub fn klein(self) -> KleinName {
        match self {
            LiftInvariant::G12deg12 => KleinName::F,
            LiftInvariant::G20 => KleinName::H,
            LiftInvariant::G30 => KleinName::Tau,
            LiftInvariant::F6L => KleinName::T,
            LiftInvariant::F8L => KleinName::W,
            LiftInvariant::F12L => KleinName::Chi,
        }
    }

    pub fn group(self) -> GroupName {
        match self {
            LiftInvariant::G12deg12 | LiftInvariant::G20 | LiftInvariant::G30 => GroupName::H4,
            _ => GroupName::F4,
        }
    }
}

impl FromStr for LiftInvariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G12deg12" | "Gamma12" => Ok(LiftInvariant::G12deg12),
            "G20" | "Gamma20" => Ok(LiftInvariant::G20),
            "G30" | "Gamma30" => Ok(LiftInvariant::G30),
            "F6L" => Ok(LiftInvariant::F6L),
            "F8L" => Ok(LiftInvariant::F8L),
            "F12L" => Ok(LiftInvariant::F12L),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Reynolds sum of `lift(K1·K2)` over the matching reflection group,
/// normalized. Tries each pairing until the image under `phi` is nonzero.
pub fn invariant_by_lift(name: LiftInvariant) -> Result<MPoly> {
    let target = klein::klein_product(name.klein());
    let engine = Tensor;
    for pairing in Pairing::ALL {
        let sum = engine.sum(name.group(), &lift_frame(&target, pairing)?)?;
        if sum.is_zero() || klein::phi_frame(&sum).is_zero() {
            continue;
        }
        let out = tensor::from_u(&sum).normalized();
        if !out.is_real() {
            return Err(Error::Invalid(format!("{name:?} has non-real coefficients")));
        }
        return Ok(out);
    }
    Err(Error::PhiImageZero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identify_examples() {
        let p2 = [FE::one(), FE::i(), FE::zero(), FE::zero()];
        assert_eq!(identify(&p2), Matrix2::new(FE::zero(), FE::zero(), FE::zero(), FE::from_int(2)));
        let e0 = [FE::one(), FE::zero()];
        let e1 = [FE::zero(), FE::one()];
        assert_eq!(
            segre(&e0, &e0).unwrap(),
            [FE::from_ratio(1, 2), "-1/2*i".parse().unwrap(), FE::zero(), FE::zero()]
        );
        assert_eq!(
            segre(&e1, &e0).unwrap(),
            [FE::zero(), FE::zero(), FE::from_ratio(-1, 2), "-1/2*i".parse().unwrap()]
        );
        assert_eq!(segre(&[FE::zero(), FE::zero()], &e0), Err(Error::ZeroPair));
    }

    #[test]
    fn sigma_reproduces_generator_matrices() {
        use crate::groups::matrices::*;
        let [j, p3] = <[SU2Element; 2]>::try_from(BinaryGroup::T.generators()).unwrap();
        let one = SU2Element::identity();
        assert_eq!(sigma(&j, &one).matrix(), &q2_left());
        assert_eq!(sigma(&one, &j).matrix(), &q2_right());
        assert_eq!(sigma(&p3, &one).matrix(), &p3_left());
        assert_eq!(sigma(&one, &p3).matrix(), &p3_right());
        let p4 = BinaryGroup::O.generators().pop().unwrap();
        assert_eq!(sigma(&p4, &one).matrix(), &p4_left());
        assert_eq!(sigma(&one, &p4).matrix(), &p4_right());
        let p5 = BinaryGroup::I.generators().pop().unwrap();
        assert_eq!(sigma(&p5, &one).matrix(), &p5_left());
        assert_eq!(sigma(&one, &p5).matrix(), &p5_right());
    }

    #[test]
    fn binary_orders() {
        assert_eq!(BinaryGroup::T.elements().len(), 24);
        assert_eq!(BinaryGroup::O.elements().len(), 48);
        assert_eq!(BinaryGroup::I.elements().len(), 120);
    }

    #[test]
    fn eigen_data() {
        let j = BinaryGroup::T.generators().remove(0);
        let [a, b] = eigenvalues(&j).unwrap();
        assert_eq!(a.clone() + b.clone(), FE::zero());
        assert!(a == FE::i() || b == FE::i());
        for (alpha, v) in fixed_points(&j).unwrap() {
            assert_eq!(j.apply(&v), [&alpha * &v[0], &alpha * &v[1]]);
        }
        assert_eq!(eigenvalues(&SU2Element::identity()), Err(Error::CentralElement));
        let p5 = BinaryGroup::I.generators().pop().unwrap();
        assert!(matches!(eigenvalues(&p5), Err(Error::EigenvalueOutsideField(_))));
    }

    #[test]
    fn orbit_lengths() {
        let lens = |g: BinaryGroup| line_orbits(&g.elements()).unwrap().iter().map(LineOrbit::len).collect::<Vec<_>>();
        assert_eq!(lens(BinaryGroup::T), vec![4, 4, 6]);
        assert_eq!(lens(BinaryGroup::O), vec![6, 8, 12]);
        assert_eq!(orbit_lengths_by_stabilizers(&BinaryGroup::T.elements()), vec![4, 4, 6]);
        assert_eq!(orbit_lengths_by_stabilizers(&BinaryGroup::O.elements()), vec![6, 8, 12]);
        assert_eq!(orbit_lengths_by_stabilizers(&BinaryGroup::I.elements()), vec![12, 20, 30]);
    }

    #[test]
    fn couple_lines_are_fixed_and_plane_vanishes() {
        for c in orbit_couples(OrbitName::T6).unwrap() {
            assert!(c.left.is_pointwise_fixed());
            assert!(c.right.is_pointwise_fixed());
            let plane = couple_plane(&c).unwrap();
            assert!(plane.vanishes_on(&c.left) && plane.vanishes_on(&c.right));
            assert_eq!(plane.form, couple_plane_closed_form(&c));
        }
    }

    #[test]
    fn lift_examples() {
        let z02 = MPoly::z(0) * MPoly::z(2);
        assert_eq!(lift(&z02).unwrap(), MPoly::x(0) + MPoly::x(1).scale(&FE::i()));
        assert!(lift(&MPoly::zero(Space::Z)).unwrap().is_zero());
        assert_eq!(lift(&(MPoly::z(0) * MPoly::z(1))), Err(Error::UnbalancedBidegree(2, 0)));
        assert!(lift(&MPoly::x(0)).is_err());
        // every bidegree (2,2) monomial
        for a in 0..=2u16 {
            for c in 0..=2u16 {
                let m = MPoly::term(Space::Z, Monomial([a, 2 - a, c, 2 - c]), FE::one());
                for pairing in Pairing::ALL {
                    assert_eq!(klein::phi_frame(&lift_frame(&m, pairing).unwrap()), m);
                }
                assert_eq!(klein::phi(&lift(&m).unwrap()).unwrap(), m);
            }
        }
    }

    #[test]
    fn order_four_couple_gives_a_listed_factor() {
        let j = BinaryGroup::T.generators().remove(0);
        let plane = couple_plane(&Couple::of(&j, &FE::i()).unwrap()).unwrap();
        let six = crate::listed::six_planes();
        assert!(six.divrem(&plane.form).unwrap().1.is_zero());
    }

    #[test]
    fn products_match_listed_planes() {
        use crate::listed::{eight_planes, six_planes, twelve_planes};
        for (n, l) in [(OrbitName::T6, six_planes()), (OrbitName::O8, eight_planes()), (OrbitName::O12, twelve_planes())] {
            assert!(orbit_plane_product(n).unwrap().scalar_ratio(&l).is_some(), "{n:?}");
        }
    }
}



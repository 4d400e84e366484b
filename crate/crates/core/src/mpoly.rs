//! Sparse polynomials in four variables over `K`.
//!
//! A polynomial lives either in x-space (`x0..x3`, coordinates of P3) or in
//! z-space (`z0..z3`, the two copies of P1 under the Segre map). Terms are
//! kept in a map keyed by [`Monomial`], whose order is graded lexicographic
//! with `v0 > v1 > v2 > v3`; canonical output lists the leading term first.
//!
//! The group action on polynomials is the left action
//! `(g·p)(x) = p(g⁻¹x)`, see [`MPoly::act`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix2, Matrix4};
use crate::numfield::{Accumulator, FieldElement, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "z")]
    Z,
    /// Entries `(U00, U11, U01, U10)` of the identified 2×2 matrix.
    #[serde(rename = "u")]
    U,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::X => "x",
            Space::Z => "z",
            Space::U => "u",
        }
    }
}

/// Exponent vector of a monomial in four variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(std::array::from_fn(|k| self.0[k] - other.0[k])))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with coefficients in `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    space: Space,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MPoly {
    pub fn zero(space: Space) -> Self {
        Self { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: Space, c: FieldElement) -> Self {
        Self::term(space, Monomial::default(), c)
    }

    pub fn one(space: Space) -> Self {
        Self::constant(space, FieldElement::one())
    }

    pub fn term(space: Space, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { space, terms }
    }

    /// The variable `v_k`.
    pub fn var(space: Space, k: usize) -> Self {
        let mut e = [0u16; 4];
        e[k] = 1;
        Self::term(space, Monomial(e), FieldElement::one())
    }

    pub fn x(k: usize) -> Self {
        Self::var(Space::X, k)
    }

    pub fn z(k: usize) -> Self {
        Self::var(Space::Z, k)
    }

    /// `Σ c_k v_k`.
    pub fn linear(space: Space, coeffs: [FieldElement; 4]) -> Self {
        let mut p = Self::zero(space);
        for (k, c) in coeffs.into_iter().enumerate() {
            let mut e = [0u16; 4];
            e[k] = 1;
            p.add_term(Monomial(e), &c);
        }
        p
    }

    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// The quadric `v0² + v1² + v2² + v3²`.
    pub fn quadric(space: Space) -> Self {
        Self::from_terms(
            space,
            (0..4).map(|k| {
                let mut e = [0u16; 4];
                e[k] = 2;
                (Monomial(e), FieldElement::one())
            }),
        )
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_space(&self, other: &MPoly) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(self.space.name(), other.space.name()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_space(other)?;
        let mut acc: BTreeMap<Monomial, Accumulator> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.entry(ma.mul(mb)).or_default().add_product(ca, cb);
            }
        }
        Ok(Self::from_accumulators(self.space, acc))
    }

    fn from_accumulators(space: Space, acc: BTreeMap<Monomial, Accumulator>) -> Self {
        let terms = acc
            .into_iter()
            .filter_map(|(m, a)| {
                let c = a.finish();
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        Self { space, terms }
    }

    pub fn scale(&self, s: &FieldElement) -> MPoly {
        if s.is_zero() {
            return Self::zero(self.space);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * s)).collect();
        Self { space: self.space, terms }
    }

    pub fn scale_rational(&self, s: &Rational) -> MPoly {
        self.scale(&FieldElement::from_rational(s.clone()))
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = Self::one(self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.conj())).collect();
        Self { space: self.space, terms }
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(FieldElement::is_real)
    }

    /// Divides by the leading coefficient, so the leading term is monic.
    pub fn normalized(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Relabels the space tag without touching the terms.
    pub fn with_space(&self, space: Space) -> MPoly {
        Self { space, terms: self.terms.clone() }
    }

    /// If `self = λ·other` for some scalar `λ`, returns it.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<FieldElement> {
        if self.space != other.space || self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let (m, c) = other.leading_term()?;
        let lambda = &self.coeff(m) * &c.inv().ok()?;
        if lambda.is_zero() {
            return None;
        }
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Homogeneous components by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, MPoly> {
        let mut parts: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_insert_with(|| MPoly::zero(self.space)).terms.insert(*m, c.clone());
        }
        parts
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &[FieldElement; 4]) -> FieldElement {
        let max = self.terms.keys().flat_map(|m| m.0).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .map(|v| {
                let mut p = Vec::with_capacity(max + 1);
                p.push(FieldElement::one());
                for k in 1..=max {
                    p.push(&p[k - 1] * v);
                }
                p
            })
            .collect();
        let mut acc = Accumulator::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                if m.0[k] > 0 {
                    t = &t * &powers[k][m.0[k] as usize];
                }
            }
            acc.add(&t);
        }
        acc.finish()
    }

    /// Formal partial derivative with respect to `v_var`.
    pub fn partial(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[var] -= 1;
            out.add_term(n, &c.scale(&Rational::from_int(e as i64)));
        }
        out
    }

    /// Division with remainder by a single divisor, graded lex.
    ///
    /// Returns `(quotient, remainder)` with `self = quotient·d + remainder`
    /// and no remainder term divisible by the leading monomial of `d`.
    pub fn divrem(&self, d: &MPoly) -> Result<(MPoly, MPoly)> {
        self.check_space(d)?;
        let (lm, lc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rest = self.clone();
        let mut quot = MPoly::zero(self.space);
        let mut rem = MPoly::zero(self.space);
        while let Some((m, c)) = rest.leading_term().map(|(m, c)| (*m, c.clone())) {
            match m.checked_div(&lm) {
                Some(qm) => {
                    let qc = &c * &lc_inv;
                    for (dm, dc) in &d.terms {
                        rest.add_term(dm.mul(&qm), &-(dc * &qc));
                    }
                    quot.add_term(qm, &qc);
                }
                None => {
                    rest.terms.remove(&m);
                    rem.terms.insert(m, c);
                }
            }
        }
        Ok((quot, rem))
    }

    /// The action `(g·p)(x) = p(g⁻¹x)`.
    pub fn act(&self, g: &Matrix4) -> Result<MPoly> {
        Ok(self.compose_linear(&g.inverse()?))
    }

    /// Same as [`MPoly::act`]; kept under the name used by callers that
    /// think of it as a substitution.
    pub fn substitute_linear(&self, g: &Matrix4) -> Result<MPoly> {
        self.act(g)
    }

    /// `p(A·x)`: each variable `v_j` is replaced by `Σ_k A[j][k] v_k`.
    pub fn compose_linear(&self, a: &Matrix4) -> MPoly {
        if a.is_monomial() {
            return self.compose_monomial(a);
        }
        let forms: [Vec<(usize, FieldElement)>; 4] = std::array::from_fn(|j| {
            (0..4).filter(|&k| !a.rows[j][k].is_zero()).map(|k| (k, a.rows[j][k].clone())).collect()
        });
        let mut out = MPoly::zero(self.space);
        let Some(max) = self.degree() else { return out };
        let indices: Vec<DenseIndex> = (0..=max).map(DenseIndex::new).collect();
        // powers of the last form, shared by every innermost call
        let mut last_powers = vec![vec![FieldElement::one()]];
        for k in 0..max {
            let next = mul_linear(&last_powers[k as usize], &forms[3], &indices[k as usize], &indices[k as usize + 1]);
            last_powers.push(next);
        }
        let ctx = HornerCtx { forms: &forms, indices: &indices, last_powers: &last_powers };
        for (d, part) in self.homogeneous_parts() {
            let coeffs = part.terms.iter().map(|(m, c)| (m.0, c)).collect::<Vec<_>>();
            let dense = ctx.image(&coeffs, 0, d);
            for (k, c) in dense.into_iter().enumerate() {
                if !c.is_zero() {
                    out.terms.insert(Monomial(indices[d as usize].exps[k]), c);
                }
            }
        }
        out
    }

    fn compose_monomial(&self, a: &Matrix4) -> MPoly {
        // v_j -> a_j v_{π(j)}
        let image: [Option<(usize, FieldElement)>; 4] = std::array::from_fn(|j| {
            (0..4).find(|&k| !a.rows[j][k].is_zero()).map(|k| (k, a.rows[j][k].clone()))
        });
        let mut out = MPoly::zero(self.space);
        'terms: for (m, c) in &self.terms {
            let mut e = [0u16; 4];
            let mut coeff = c.clone();
            for j in 0..4 {
                if m.0[j] == 0 {
                    continue;
                }
                match &image[j] {
                    None => continue 'terms,
                    Some((k, s)) => {
                        e[*k] += m.0[j];
                        if !s.is_one() {
                            coeff = &coeff * &s.pow(m.0[j] as u32);
                        }
                    }
                }
            }
            out.add_term(Monomial(e), &coeff);
        }
        out
    }

    /// Block substitution on two disjoint variable pairs:
    /// `(v_{p0}, v_{p1}) ← m·(v_{p0}, v_{p1})` and
    /// `(v_{q0}, v_{q1}) ← n·(v_{q0}, v_{q1})`.
    ///
    /// Per homogeneous component the coefficients form a matrix indexed by
    /// the exponents of `v_{p0}` and `v_{q0}`; the substitution is then
    /// `S_m · C · S_nᵀ` with `S` the symmetric powers of the 2×2 blocks.
    pub fn compose_block2(&self, p: (usize, usize), m: &Matrix2, q: (usize, usize), n: &Matrix2) -> MPoly {
        let vars = [p.0, p.1, q.0, q.1];
        debug_assert!({
            let mut s = vars;
            s.sort_unstable();
            s == [0, 1, 2, 3]
        });
        let mut out = MPoly::zero(self.space);
        // bucket terms by (degree in p-pair, degree in q-pair)
        let mut blocks: BTreeMap<(u32, u32), Vec<(u16, u16, &FieldElement)>> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let e = mono.0;
            let dp = (e[p.0] + e[p.1]) as u32;
            let dq = (e[q.0] + e[q.1]) as u32;
            blocks.entry((dp, dq)).or_default().push((e[p.0], e[q.0], c));
        }
        let max_deg = blocks.keys().map(|(a, b)| (*a).max(*b)).max().unwrap_or(0);
        let sm = SymPowers::new(m, max_deg);
        let sn = SymPowers::new(n, max_deg);
        for ((dp, dq), entries) in blocks {
            let (rp, rq) = (dp as usize + 1, dq as usize + 1);
            let mut cmat: Vec<Option<FieldElement>> = vec![None; rp * rq];
            for (a, b, c) in entries {
                cmat[a as usize * rq + b as usize] = Some(c.clone());
            }
            // D = C · S_nᵀ  (rp × rq)
            let s_n = &sn.mats[dq as usize];
            let mut dmat: Vec<FieldElement> = Vec::with_capacity(rp * rq);
            for a in 0..rp {
                for delta in 0..rq {
                    let mut acc = Accumulator::new();
                    for b in 0..rq {
                        if let Some(c) = &cmat[a * rq + b] {
                            let s = &s_n[delta * rq + b];
                            if !s.is_zero() {
                                acc.add_product(c, s);
                            }
                        }
                    }
                    dmat.push(acc.finish());
                }
            }
            // C' = S_m · D
            let s_m = &sm.mats[dp as usize];
            for gamma in 0..rp {
                for delta in 0..rq {
                    let mut acc = Accumulator::new();
                    for a in 0..rp {
                        let s = &s_m[gamma * rp + a];
                        let dv = &dmat[a * rq + delta];
                        if !s.is_zero() && !dv.is_zero() {
                            acc.add_product(s, dv);
                        }
                    }
                    let c = acc.finish();
                    if !c.is_zero() {
                        let mut e = [0u16; 4];
                        e[p.0] = gamma as u16;
                        e[p.1] = (dp as usize - gamma) as u16;
                        e[q.0] = delta as u16;
                        e[q.1] = (dq as usize - delta) as u16;
                        out.terms.insert(Monomial(e), c);
                    }
                }
            }
        }
        out
    }

    /// Canonical text: one `<coeff> ; e0 e1 e2 e3` line per term, leading
    /// term first. The zero polynomial renders as the empty string.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms() {
            s.push_str(&format!("{c} ; {} {} {} {}\n", m.0[0], m.0[1], m.0[2], m.0[3]));
        }
        s
    }

    pub fn from_text(text: &str, space: Space) -> Result<MPoly> {
        let mut p = MPoly::zero(space);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: `{line}`", lineno + 1));
            let (coeff, exps) = line.split_once(';').ok_or_else(bad)?;
            let exps: Vec<u16> = exps.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            if exps.len() != 4 {
                return Err(bad());
            }
            let c: FieldElement = coeff.parse()?;
            p.add_term(Monomial([exps[0], exps[1], exps[2], exps[3]]), &c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            space: self.space,
            terms: self
                .terms()
                .map(|(m, c)| TermJson { exponents: m.0, coeffs: c.coords().iter().map(|r| r.to_string()).collect() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MPoly> {
        let mut p = MPoly::zero(j.space);
        for t in &j.terms {
            if t.coeffs.len() != 16 {
                return Err(Error::Parse(format!("expected 16 coordinates, found {}", t.coeffs.len())));
            }
            let mut coords: [Rational; 16] = Default::default();
            for (k, s) in t.coeffs.iter().enumerate() {
                coords[k] = s.parse()?;
            }
            p.add_term(Monomial(t.exponents), &FieldElement::from_coords(&coords));
        }
        Ok(p)
    }

    /// Human-readable rendering, e.g. `x0^2 + (1/2 + i)*x1*x3`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let v = self.space.name();
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let mono: Vec<String> = (0..4)
                .filter(|&j| m.0[j] > 0)
                .map(|j| if m.0[j] == 1 { format!("{v}{j}") } else { format!("{v}{j}^{}", m.0[j]) })
                .collect();
            let cs = c.to_string();
            let simple = !cs.contains(' ');
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, if simple { cs.clone() } else { format!("({cs})") }),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{body}*{}", mono.join("*"))
            };
            match (k, neg) {
                (0, false) => out.push_str(&term),
                (0, true) => out.push_str(&format!("-{term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
                (_, true) => out.push_str(&format!(" - {term}")),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: [u16; 4],
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub space: Space,
    pub terms: Vec<TermJson>,
}

/// Dense indexing of the monomials of one total degree.
pub(crate) struct DenseIndex {
    pub(crate) degree: u32,
    pub(crate) exps: Vec<[u16; 4]>,
    lookup: Vec<u32>,
}

impl DenseIndex {
    pub(crate) fn new(degree: u32) -> Self {
        let d = degree as usize;
        let side = d + 1;
        let mut exps = Vec::new();
        let mut lookup = vec![u32::MAX; side * side * side];
        for e0 in 0..=d {
            for e1 in 0..=(d - e0) {
                for e2 in 0..=(d - e0 - e1) {
                    let e3 = d - e0 - e1 - e2;
                    lookup[(e0 * side + e1) * side + e2] = exps.len() as u32;
                    exps.push([e0 as u16, e1 as u16, e2 as u16, e3 as u16]);
                }
            }
        }
        Self { degree, exps, lookup }
    }

    pub(crate) fn len(&self) -> usize {
        self.exps.len()
    }

    pub(crate) fn index(&self, e: &[u16; 4]) -> usize {
        let side = self.degree as usize + 1;
        self.lookup[(e[0] as usize * side + e[1] as usize) * side + e[2] as usize] as usize
    }
}

/// Multiplies a dense homogeneous polynomial by a linear form.
fn mul_linear(poly: &[FieldElement], form: &[(usize, FieldElement)], from: &DenseIndex, to: &DenseIndex) -> Vec<FieldElement> {
    let mut acc: Vec<Accumulator> = vec![Accumulator::new(); to.len()];
    for (k, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (var, a) in form {
            let mut e = from.exps[k];
            e[*var] += 1;
            acc[to.index(&e)].add_product(c, a);
        }
    }
    acc.into_iter().map(Accumulator::finish).collect()
}

struct HornerCtx<'a> {
    forms: &'a [Vec<(usize, FieldElement)>; 4],
    indices: &'a [DenseIndex],
    last_powers: &'a [Vec<FieldElement>],
}

impl HornerCtx<'_> {
    /// Image of a homogeneous polynomial in `v_level..v_3` of degree `d`
    /// under `v_j ↦ forms[j]`, dense over all degree-`d` monomials.
    fn image(&self, coeffs: &[([u16; 4], &FieldElement)], level: usize, d: u32) -> Vec<FieldElement> {
        if level == 3 {
            let c = coeffs.iter().fold(FieldElement::zero(), |acc, (_, c)| acc + *c);
            return self.last_powers[d as usize].iter().map(|v| v * &c).collect();
        }
        let mut groups: Vec<Vec<([u16; 4], &FieldElement)>> = vec![Vec::new(); d as usize + 1];
        for (e, c) in coeffs {
            groups[e[level] as usize].push((*e, *c));
        }
        // Σ_e L^e R_e = R_0 + L(R_1 + L(R_2 + ...)), R_e of degree d - e
        let mut acc: Option<(Vec<FieldElement>, u32)> = None;
        for e in (0..=d as usize).rev() {
            if let Some((a, deg)) = acc.take() {
                let next = mul_linear(&a, &self.forms[level], &self.indices[deg as usize], &self.indices[deg as usize + 1]);
                acc = Some((next, deg + 1));
            }
            if groups[e].is_empty() {
                continue;
            }
            let rest_deg = d - e as u32;
            let img = self.image(&groups[e], level + 1, rest_deg);
            match acc.as_mut() {
                Some((a, deg)) => {
                    debug_assert_eq!(*deg, rest_deg);
                    for (x, y) in a.iter_mut().zip(img.iter()) {
                        if !y.is_zero() {
                            *x += y;
                        }
                    }
                }
                None => acc = Some((img, rest_deg)),
            }
        }
        match acc {
            Some((a, _)) => a,
            None => vec![FieldElement::zero(); self.indices[d as usize].len()],
        }
    }
}

/// Symmetric powers of a 2×2 matrix: `mats[d][γ·(d+1)+α]` is the coefficient
/// of `X^γ Y^(d-γ)` in `(m00 X + m01 Y)^α (m10 X + m11 Y)^(d-α)`.
struct SymPowers {
    mats: Vec<Vec<FieldElement>>,
}

impl SymPowers {
    fn new(m: &Matrix2, max_deg: u32) -> Self {
        let max = max_deg as usize;
        // binary forms indexed by power of X
        let lin = |a: &FieldElement, b: &FieldElement| vec![b.clone(), a.clone()];
        let f = lin(&m.rows[0][0], &m.rows[0][1]);
        let g = lin(&m.rows[1][0], &m.rows[1][1]);
        let mul = |p: &[FieldElement], q: &[FieldElement]| {
            let mut out = vec![Accumulator::new(); p.len() + q.len() - 1];
            for (i, a) in p.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in q.iter().enumerate() {
                    if !b.is_zero() {
                        out[i + j].add_product(a, b);
                    }
                }
            }
            out.into_iter().map(Accumulator::finish).collect::<Vec<_>>()
        };
        let mut fpow = vec![vec![FieldElement::one()]];
        let mut gpow = vec![vec![FieldElement::one()]];
        for k in 1..=max {
            fpow.push(mul(&fpow[k - 1], &f));
            gpow.push(mul(&gpow[k - 1], &g));
        }
        let mats = (0..=max)
            .map(|d| {
                let mut mat = vec![FieldElement::zero(); (d + 1) * (d + 1)];
                for alpha in 0..=d {
                    let col = mul(&fpow[alpha], &gpow[d - alpha]);
                    for (gamma, c) in col.into_iter().enumerate() {
                        mat[gamma * (d + 1) + alpha] = c;
                    }
                }
                mat
            })
            .collect();
        Self { mats }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MPoly { space: self.space, terms }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            /// Panics on a space mismatch; use the `try_` form to handle it.
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$try(rhs).expect("polynomial space mismatch")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$try(&rhs).expect("polynomial space mismatch")
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$try(rhs).expect("polynomial space mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.space.name(), self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> MPoly {
        MPoly::x(k)
    }

    fn mono(e: [u16; 4]) -> Monomial {
        Monomial(e)
    }

    #[test]
    fn graded_lex_order() {
        assert!(mono([0, 0, 0, 2]) > mono([1, 0, 0, 0]));
        assert!(mono([1, 0, 0, 1]) > mono([0, 2, 0, 0]));
        assert!(mono([0, 1, 1, 0]) > mono([0, 1, 0, 1]));
    }

    #[test]
    fn square_of_binomial() {
        let p = (x(0) + x(1)).pow(2);
        let expected = MPoly::from_terms(
            Space::X,
            [
                (mono([2, 0, 0, 0]), FieldElement::one()),
                (mono([1, 1, 0, 0]), FieldElement::from_int(2)),
                (mono([0, 2, 0, 0]), FieldElement::one()),
            ],
        );
        assert_eq!(p, expected);
        assert!((MPoly::quadric(Space::X) * MPoly::zero(Space::X)).is_zero());
    }

    #[test]
    fn space_mismatch() {
        assert_eq!(x(0).try_add(&MPoly::z(0)), Err(Error::SpaceMismatch("x", "z")));
        assert!(x(0).try_mul(&MPoly::z(0)).is_err());
    }

    #[test]
    fn partials() {
        let q = MPoly::quadric(Space::X);
        assert_eq!(q.partial(0), x(0).scale(&FieldElement::from_int(2)));
        let p = x(1).pow(3) * x(2);
        assert_eq!(p.partial(1), x(1).pow(2).scale(&FieldElement::from_int(3)) * x(2));
        assert!(p.partial(0).is_zero());
    }

    #[test]
    fn divrem_exact() {
        let q = MPoly::quadric(Space::X);
        let (quot, rem) = (&q * &x(0)).divrem(&q).unwrap();
        assert_eq!(quot, x(0));
        assert!(rem.is_zero());
        assert!(q.divrem(&MPoly::zero(Space::X)).is_err());
    }

    #[test]
    fn diagonal_action() {
        let c = Matrix4::diag([1, -1, -1, -1].map(FieldElement::from_int));
        assert_eq!(x(0).act(&c).unwrap(), x(0));
        assert_eq!(x(1).act(&c).unwrap(), -x(1));
    }

    #[test]
    fn dense_compose_matches_naive() {
        let half = FieldElement::from_ratio(1, 2);
        let m = Matrix4::from_ints([[1, -1, 1, -1], [1, 1, -1, -1], [-1, 1, 1, -1], [1, 1, 1, 1]], &half);
        let p = x(0).pow(3) * x(2) + x(1) * x(3).scale(&FieldElement::i()) + x(2).pow(2);
        let fast = p.compose_linear(&m);
        // naive: substitute each variable by its linear form and expand
        let forms: Vec<MPoly> = (0..4).map(|j| MPoly::linear(Space::X, m.rows[j].clone())).collect();
        let mut naive = MPoly::zero(Space::X);
        for (mo, c) in p.terms() {
            let mut t = MPoly::constant(Space::X, c.clone());
            for j in 0..4 {
                t = t * forms[j].pow(mo.0[j] as u32);
            }
            naive = naive + t;
        }
        assert_eq!(fast, naive);
    }

    #[test]
    fn block2_matches_dense() {
        let m = Matrix2::new(FieldElement::a(), FieldElement::one(), FieldElement::i(), FieldElement::tau());
        let n = Matrix2::new(FieldElement::from_int(2), FieldElement::zero(), FieldElement::c(), FieldElement::one());
        let p = x(0).pow(3) * x(2) + x(1) * x(3).scale(&FieldElement::i()) + x(2).pow(2) * x(1).pow(2);
        let got = p.compose_block2((0, 1), &m, (2, 3), &n);
        let zero = FieldElement::zero;
        let a = Matrix4::from_rows([
            [m.rows[0][0].clone(), m.rows[0][1].clone(), zero(), zero()],
            [m.rows[1][0].clone(), m.rows[1][1].clone(), zero(), zero()],
            [zero(), zero(), n.rows[0][0].clone(), n.rows[0][1].clone()],
            [zero(), zero(), n.rows[1][0].clone(), n.rows[1][1].clone()],
        ]);
        assert_eq!(got, p.compose_linear(&a));
        // pairs given out of order
        let got2 = p.compose_block2((2, 3), &n, (0, 1), &m);
        assert_eq!(got2, got);
    }

    #[test]
    fn text_format() {
        let p = x(0).pow(2).scale(&FieldElement::a()) - x(3).scale(&FieldElement::from_ratio(13, 16));
        let t = p.to_text();
        assert_eq!(t, "1/2 + 1/2*i*r3 ; 2 0 0 0\n-13/16 ; 0 0 0 1\n");
        assert_eq!(MPoly::from_text(&t, Space::X).unwrap(), p);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(MPoly::from_json(&back).unwrap(), p);
        assert!(MPoly::from_text("1 ; 1 2 3", Space::X).is_err());
    }

    #[test]
    fn scalar_ratio() {
        let p = x(0) + x(1).scale(&FieldElement::i());
        let q = p.scale(&FieldElement::from_ratio(-3, 4));
        assert_eq!(q.scalar_ratio(&p), Some(FieldElement::from_ratio(-3, 4)));
        assert_eq!((q + x(2)).scalar_ratio(&p), None);
    }
}

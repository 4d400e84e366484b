//! Exact arithmetic in the multiquadratic field `K = Q(i, √2, √3, √5)`.
//!
//! `K` is a 16-dimensional Q-algebra with basis the square-free products of
//! the four generators `i, √2, √3, √5`. A basis product is encoded as a
//! 4-bit mask (bit 0 = `i`, bit 1 = `√2`, bit 2 = `√3`, bit 3 = `√5`); the
//! product of two basis elements is the basis element of the XOR of their
//! masks, scaled by the squares of the shared generators (`-1, 2, 3, 5`).
//!
//! Elements are stored sparsely as `(mask, coefficient)` pairs sorted by
//! mask with no zero coefficients, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::error::{Error, Result};
pub use crate::rational::Rational;

pub const BIT_I: u8 = 1;
pub const BIT_R2: u8 = 2;
pub const BIT_R3: u8 = 4;
pub const BIT_R5: u8 = 8;

const SYMBOLS: [(u8, &str); 4] = [(BIT_I, "i"), (BIT_R2, "r2"), (BIT_R3, "r3"), (BIT_R5, "r5")];

/// `SHARED[m]` is the product of the squares of the generators in mask `m`.
const SHARED: [i64; 16] = {
    let sq = [-1i64, 2, 3, 5];
    let mut t = [1i64; 16];
    let mut m = 0;
    while m < 16 {
        let mut b = 0;
        while b < 4 {
            if m & (1 << b) != 0 {
                t[m] *= sq[b];
            }
            b += 1;
        }
        m += 1;
    }
    t
};

/// An element of `K`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    terms: SmallVec<[(u8, Rational); 2]>,
}

impl FieldElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::basis(0, r)
    }

    /// `coeff * e_mask`.
    pub fn basis(mask: u8, coeff: Rational) -> Self {
        assert!(mask < 16, "basis mask out of range");
        let mut terms = SmallVec::new();
        if !coeff.is_zero() {
            terms.push((mask, coeff));
        }
        Self { terms }
    }

    /// Builds an element from all 16 coordinates, indexed by mask.
    pub fn from_coords(coords: &[Rational; 16]) -> Self {
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as u8, c.clone()))
            .collect();
        Self { terms }
    }

    pub fn coords(&self) -> [Rational; 16] {
        let mut out: [Rational; 16] = Default::default();
        for (m, c) in &self.terms {
            out[*m as usize] = c.clone();
        }
        out
    }

    pub fn coord(&self, mask: u8) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| *m == mask)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Nonzero `(mask, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u8, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == 0)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coord(0))
    }

    /// True iff no coordinate involves `i`.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(m, _)| m & BIT_I == 0)
    }

    pub fn i() -> Self {
        Self::basis(BIT_I, Rational::one())
    }

    pub fn sqrt2() -> Self {
        Self::basis(BIT_R2, Rational::one())
    }

    pub fn sqrt3() -> Self {
        Self::basis(BIT_R3, Rational::one())
    }

    pub fn sqrt5() -> Self {
        Self::basis(BIT_R5, Rational::one())
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn tau() -> Self {
        Self::from_ratio(1, 2) + Self::basis(BIT_R5, Rational::new(1, 2))
    }

    /// `(1 + i√3)/2`, a primitive sixth root of unity.
    pub fn a() -> Self {
        Self::from_ratio(1, 2) + Self::basis(BIT_I | BIT_R3, Rational::new(1, 2))
    }

    /// `(1 - i√3)/2`, the conjugate of [`FieldElement::a`].
    pub fn b() -> Self {
        Self::from_ratio(1, 2) - Self::basis(BIT_I | BIT_R3, Rational::new(1, 2))
    }

    /// `i√2`.
    pub fn c() -> Self {
        Self::basis(BIT_I | BIT_R2, Rational::one())
    }

    /// Applies the automorphism that negates every generator in `flip`.
    pub fn galois(&self, flip: u8) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                if (m & flip).count_ones() % 2 == 1 {
                    (*m, -c)
                } else {
                    (*m, c.clone())
                }
            })
            .collect();
        Self { terms }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(BIT_I)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * r)).collect();
        Self { terms }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero())
    }

    // inv(e) = σ(e) · inv(e·σ(e)), where σ flips one generator that occurs in
    // e; the product e·σ(e) no longer involves that generator.
    fn inv_nonzero(&self) -> Self {
        let used = self.terms.iter().fold(0u8, |acc, (m, _)| acc | m);
        if used == 0 {
            let r = self.terms[0].1.inv().expect("nonzero");
            return Self::from_rational(r);
        }
        let bit = 1u8 << used.trailing_zeros();
        let sigma = self.galois(bit);
        let norm = self * &sigma;
        &sigma * &norm.inv_nonzero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let mut out: SmallVec<[(u8, Rational); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let take_left = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_right = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_left {
                out.push(a[i].clone());
                i += 1;
            } else if take_right {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ma, ca) = &self.terms[0];
            let (mb, cb) = &rhs.terms[0];
            let c = (ca * cb).mul_ref(&Rational::from_int(SHARED[(ma & mb) as usize]));
            return Self::basis(ma ^ mb, c);
        }
        let mut acc = Accumulator::new();
        acc.add_product(self, rhs);
        acc.finish()
    }
}

/// Dense 16-slot accumulator for sums of products.
#[derive(Clone, Default)]
pub struct Accumulator {
    slots: [Rational; 16],
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &FieldElement, b: &FieldElement) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let f = SHARED[(ma & mb) as usize];
                let p = ca.mul_ref(cb);
                let p = if f == 1 { p } else { p.mul_ref(&Rational::from_int(f)) };
                self.slots[(ma ^ mb) as usize] += &p;
            }
        }
    }

    pub fn add(&mut self, a: &FieldElement) {
        for (m, c) in &a.terms {
            self.slots[*m as usize] += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(Rational::is_zero)
    }

    pub fn finish(self) -> FieldElement {
        FieldElement::from_coords(&self.slots)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! fe_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                $body(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                $body(&self, &rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                $body(&self, rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                $body(self, &rhs)
            }
        }
    };
}

fe_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_impl(b, false));
fe_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.add_impl(b, true));
fe_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_impl(b));

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, true);
    }
}

fn symbol_string(mask: u8) -> String {
    SYMBOLS
        .iter()
        .filter(|(b, _)| mask & b != 0)
        .map(|(_, s)| *s)
        .collect::<Vec<_>>()
        .join("*")
}

fn render_term(mask: u8, c: &Rational) -> String {
    if mask == 0 {
        return c.to_string();
    }
    let sym = symbol_string(mask);
    if c.is_one() {
        sym
    } else if (-c).is_one() {
        format!("-{sym}")
    } else {
        format!("{c}*{sym}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{}", render_term(*m, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", render_term(*m, &-c))?;
            } else {
                write!(f, " + {}", render_term(*m, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

fn parse_term(term: &str, whole: &str) -> Result<FieldElement> {
    let bad = || Error::Parse(format!("invalid field element `{whole}`"));
    let mut value = FieldElement::one();
    for factor in term.split('*') {
        let factor = factor.trim();
        let f = match factor {
            "i" => FieldElement::i(),
            "r2" => FieldElement::sqrt2(),
            "r3" => FieldElement::sqrt3(),
            "r5" => FieldElement::sqrt5(),
            "" => return Err(bad()),
            num => FieldElement::from_rational(num.parse().map_err(|_| bad())?),
        };
        value = &value * &f;
    }
    Ok(value)
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Parses a signed sum of terms, each a `*`-product of rationals and
    /// the symbols `i`, `r2`, `r3`, `r5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid field element `{s}`"));
        let mut pieces = Vec::new();
        let mut neg = false;
        let mut start = 0;
        for (k, ch) in s.char_indices() {
            if ch != '+' && ch != '-' {
                continue;
            }
            let piece = s[start..k].trim();
            if piece.is_empty() {
                // only a single leading sign may stand alone
                if start != 0 {
                    return Err(bad());
                }
            } else {
                pieces.push((neg, piece));
            }
            neg = ch == '-';
            start = k + 1;
        }
        let last = s[start..].trim();
        if last.is_empty() {
            return Err(bad());
        }
        pieces.push((neg, last));
        let mut total = FieldElement::zero();
        for (neg, piece) in pieces {
            let t = parse_term(piece, s)?;
            if neg {
                total -= &t;
            } else {
                total += &t;
            }
        }
        Ok(total)
    }
}

/// All roots of unity contained in `K`: the 24th roots `ζ^k`, `k = 0..24`,
/// with `ζ = ((√6+√2) + i(√6-√2))/4`.
pub fn roots_of_unity() -> &'static [FieldElement] {
    static TABLE: OnceLock<Vec<FieldElement>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let q = Rational::new(1, 4);
        let zeta = FieldElement::basis(BIT_R2 | BIT_R3, q.clone())
            + FieldElement::basis(BIT_R2, q.clone())
            + FieldElement::basis(BIT_I | BIT_R2 | BIT_R3, q.clone())
            - FieldElement::basis(BIT_I | BIT_R2, q);
        let mut out = Vec::with_capacity(24);
        let mut z = FieldElement::one();
        for _ in 0..24 {
            out.push(z.clone());
            z = &z * &zeta;
        }
        out
    })
}

/// Multiplicative order of a root of unity in `K`, if it is one.
pub fn root_of_unity_order(e: &FieldElement) -> Option<u32> {
    let k = roots_of_unity().iter().position(|z| z == e)? as u32;
    Some(24 / num_integer::gcd(k, 24))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    #[test]
    fn golden_ratio_relation() {
        let t = FieldElement::tau();
        assert_eq!(&t * &t, &t + &FieldElement::one());
        let minpoly = &(&t * &t) - &t - FieldElement::one();
        assert!(minpoly.is_zero());
    }

    #[test]
    fn i_sqrt2_squared() {
        assert_eq!(FieldElement::c().pow(2), FieldElement::from_int(-2));
    }

    #[test]
    fn a_plus_b_is_one() {
        assert_eq!(FieldElement::a() + FieldElement::b(), FieldElement::one());
        assert_eq!(FieldElement::a().pow(6), FieldElement::one());
        assert_eq!(root_of_unity_order(&FieldElement::a()), Some(6));
    }

    #[test]
    fn inverses() {
        let one_plus_i = FieldElement::one() + FieldElement::i();
        assert_eq!(one_plus_i.inv().unwrap(), fe("1/2 - 1/2*i"));
        assert_eq!(FieldElement::sqrt2().inv().unwrap(), fe("1/2*r2"));
        let t = FieldElement::tau();
        assert_eq!(t.inv().unwrap(), &t - &FieldElement::one());
        assert_eq!(FieldElement::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(FieldElement::a().conj(), FieldElement::b());
        assert_eq!(FieldElement::tau().conj(), FieldElement::tau());
        assert_eq!(FieldElement::c().conj(), -FieldElement::c());
        assert!(FieldElement::tau().is_real());
        assert!(!FieldElement::a().is_real());
    }

    #[test]
    fn rendering() {
        assert_eq!(FieldElement::from_ratio(-13, 16).to_string(), "-13/16");
        assert_eq!(FieldElement::a().to_string(), "1/2 + 1/2*i*r3");
        assert_eq!(FieldElement::b().to_string(), "1/2 - 1/2*i*r3");
        assert_eq!((-FieldElement::c()).to_string(), "-i*r2");
        assert_eq!(FieldElement::zero().to_string(), "0");
    }

    #[test]
    fn parsing() {
        assert_eq!(fe("1/2 + 1/2*i*r3"), FieldElement::a());
        assert_eq!(fe("-i*r2"), -FieldElement::c());
        assert_eq!(fe("r2*r2"), FieldElement::from_int(2));
        assert_eq!(fe("  3 "), FieldElement::from_int(3));
        assert!("".parse::<FieldElement>().is_err());
        assert!("1 +".parse::<FieldElement>().is_err());
        assert!("r7".parse::<FieldElement>().is_err());
    }

    #[test]
    fn basis_products_round_trip() {
        for m1 in 0u8..16 {
            for m2 in 0u8..16 {
                let p = FieldElement::basis(m1, Rational::one()) * FieldElement::basis(m2, Rational::one());
                let nz: Vec<_> = p.terms().collect();
                assert_eq!(nz.len(), 1);
                assert_eq!(nz[0].0, m1 ^ m2);
                assert_eq!(fe(&p.to_string()), p);
            }
        }
    }

    #[test]
    fn roots_of_unity_table() {
        let t = roots_of_unity();
        assert_eq!(t.len(), 24);
        for z in t {
            assert!((z * &z.conj()).is_one());
            assert_eq!(z.pow(24), FieldElement::one());
        }
        assert_eq!(root_of_unity_order(&FieldElement::i()), Some(4));
        assert_eq!(root_of_unity_order(&FieldElement::from_int(-1)), Some(2));
        assert_eq!(root_of_unity_order(&FieldElement::tau()), None);
    }
}

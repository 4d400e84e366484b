//! Small dense matrices over `K`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::numfield::{Accumulator, FieldElement};

/// A 4×4 matrix over `K`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix4 {
    pub rows: [[FieldElement; 4]; 4],
}

impl Matrix4 {
    pub fn identity() -> Self {
        Self::diag([1, 1, 1, 1].map(FieldElement::from_int))
    }

    pub fn diag(d: [FieldElement; 4]) -> Self {
        let mut m = Self::zero();
        for (k, v) in d.into_iter().enumerate() {
            m.rows[k][k] = v;
        }
        m
    }

    pub fn zero() -> Self {
        Self { rows: Default::default() }
    }

    pub fn from_rows(rows: [[FieldElement; 4]; 4]) -> Self {
        Self { rows }
    }

    /// Integer matrix scaled by `scale`.
    pub fn from_ints(rows: [[i64; 4]; 4], scale: &FieldElement) -> Self {
        Self { rows: rows.map(|r| r.map(|v| FieldElement::from_int(v) * scale)) }
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.rows[r][c]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                t.rows[c][r] = self.rows[r][c].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_orthogonal(&self) -> bool {
        (&self.transpose() * self).is_identity()
    }

    pub fn apply(&self, v: &[FieldElement; 4]) -> [FieldElement; 4] {
        std::array::from_fn(|r| {
            let mut acc = Accumulator::new();
            for c in 0..4 {
                acc.add_product(&self.rows[r][c], &v[c]);
            }
            acc.finish()
        })
    }

    pub fn column(&self, c: usize) -> [FieldElement; 4] {
        std::array::from_fn(|r| self.rows[r][c].clone())
    }

    pub fn from_columns(cols: [[FieldElement; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                m.rows[r][c] = v;
            }
        }
        m
    }

    /// True when every row has at most one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        self.rows.iter().all(|r| r.iter().filter(|e| !e.is_zero()).count() <= 1)
    }

    pub fn det(&self) -> FieldElement {
        let m: Vec<Vec<FieldElement>> = self.rows.iter().map(|r| r.to_vec()).collect();
        det_dense(m)
    }

    /// Exact inverse by Gauss-Jordan elimination; orthogonal matrices take
    /// the transpose.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_orthogonal() {
            return Ok(self.transpose());
        }
        let mut a: Vec<Vec<FieldElement>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<FieldElement>> = Self::identity().rows.iter().map(|r| r.to_vec()).collect();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for k in 0..4 {
                a[col][k] = &a[col][k] * &p;
                inv[col][k] = &inv[col][k] * &p;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..4 {
                    let t = &f * &a[col][k];
                    a[r][k] -= &t;
                    let t = &f * &inv[col][k];
                    inv[r][k] -= &t;
                }
            }
        }
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.rows[r][c] = inv[r][c].clone();
            }
        }
        Ok(out)
    }

    /// Canonical rendering: rows separated by newlines, entries by ` , `.
    /// Used verbatim as the deduplication key for group closures.
    pub fn canonical(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" , "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_canonical(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != 4 {
            return Err(Error::Parse(format!("expected 4 matrix rows, found {}", lines.len())));
        }
        let mut m = Self::zero();
        for (r, line) in lines.iter().enumerate() {
            let entries: Vec<&str> = line.split(',').collect();
            if entries.len() != 4 {
                return Err(Error::Parse(format!("expected 4 entries in row `{line}`")));
            }
            for (c, e) in entries.iter().enumerate() {
                m.rows[r][c] = e.parse()?;
            }
        }
        Ok(m)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det_dense(m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    match n {
        0 => FieldElement::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = FieldElement::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<FieldElement>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = &m[0][c] * &det_dense(minor);
                if c % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
    }
}

impl Mul<&Matrix4> for &Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: &Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = Accumulator::new();
                for k in 0..4 {
                    acc.add_product(&self.rows[r][k], &rhs.rows[k][c]);
                }
                out.rows[r][c] = acc.finish();
            }
        }
        out
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix4[{}]", self.canonical().replace('\n', " ; "))
    }
}

/// A 2×2 matrix over `K`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub rows: [[FieldElement; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Self { rows: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(FieldElement::one(), FieldElement::zero(), FieldElement::zero(), FieldElement::one())
    }

    pub fn det(&self) -> FieldElement {
        &self.rows[0][0] * &self.rows[1][1] - &self.rows[0][1] * &self.rows[1][0]
    }

    pub fn trace(&self) -> FieldElement {
        &self.rows[0][0] + &self.rows[1][1]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.rows.clone();
        Self::new(a, c, b, d)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let t = self.transpose();
        Self { rows: t.rows.map(|r| r.map(|e| e.conj())) }
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det().inv()?;
        let [[a, b], [c, e]] = self.rows.clone();
        Ok(Self::new(&e * &d, -(&b * &d), -(&c * &d), &a * &d))
    }

    pub fn apply(&self, v: &[FieldElement; 2]) -> [FieldElement; 2] {
        std::array::from_fn(|r| &self.rows[r][0] * &v[0] + &self.rows[r][1] * &v[1])
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self { rows: self.rows.clone().map(|r| r.map(|e| e * s)) }
    }

    pub fn canonical(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" , "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl Mul<&Matrix2> for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        let e = |r: usize, c: usize| &self.rows[r][0] * &rhs.rows[0][c] + &self.rows[r][1] * &rhs.rows[1][c];
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix2[{}]", self.canonical().replace('\n', " ; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_non_orthogonal() {
        let m = Matrix4::from_ints([[2, 1, 0, 0], [0, 1, 0, 0], [0, 0, 3, 1], [1, 0, 0, 1]], &FieldElement::one());
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.det(), FieldElement::from_int(6));
    }

    #[test]
    fn singular_is_rejected() {
        let m = Matrix4::from_ints([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], &FieldElement::one());
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn canonical_round_trip() {
        let m = Matrix4::diag([FieldElement::tau(), FieldElement::i(), FieldElement::from_ratio(-1, 2), FieldElement::c()]);
        assert_eq!(Matrix4::parse_canonical(&m.canonical()).unwrap(), m);
    }
}

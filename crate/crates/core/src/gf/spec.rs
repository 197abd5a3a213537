//! The field tower GF(p) ⊂ GF(q = p^n) ⊂ GF(q^r) and the word-level
//! operations on GF(q)^r: the coordinate map between GF(q^r) and GF(q)^r,
//! the reduction matrix Q, and the two word products compared by this crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{spec_err, Error, Result};
use crate::gf::field::{join_digits, split_digits};
use crate::gf::primitive::default_primitive;
use crate::gf::{FiniteField, Matrix, Poly};

/// An element of GF(q) by index. Its coefficient vector over GF(p) is
/// [`FieldSpec::fe_coeffs`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

/// An element of GF(q)^r: `r` GF(q) element indices, entry `i` being the
/// coefficient of `x^i` in the GF(q^r) residue it represents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WordVector(pub Vec<u32>);

impl WordVector {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }
}

impl fmt::Display for WordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `r x (2r-1)`: an identity block followed by the residues of
/// `x^r, ..., x^(2r-2)` modulo the outer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix(pub Matrix);

impl QMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<SpecInner>,
}

struct SpecInner {
    p: u32,
    inner_poly: Poly,
    outer_poly: Poly,
    base: FiniteField,
    word: FiniteField,
    q_matrix: QMatrix,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.inner_poly == other.inner.inner_poly
                && self.inner.outer_poly == other.inner.outer_poly)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("n", &self.n())
            .field("inner_poly", &self.inner.inner_poly.to_string())
            .field("r", &self.r())
            .field("outer_poly", &self.inner.outer_poly.to_string())
            .finish()
    }
}

impl FieldSpec {
    /// Builds the tower from two primitive polynomials: `inner_poly` over
    /// GF(p) of degree n, `outer_poly` over GF(q) of degree r. Both are
    /// verified primitive.
    pub fn new(p: u32, inner_poly: Poly, outer_poly: Poly) -> Result<Self> {
        let prime = FiniteField::prime(p)?;
        let base = prime.extension(&inner_poly)?;
        let word = base.extension(&outer_poly)?;
        let q_matrix = build_q_matrix(&base, &outer_poly);
        Ok(FieldSpec {
            inner: Arc::new(SpecInner { p, inner_poly, outer_poly, base, word, q_matrix }),
        })
    }

    /// Fills in missing defining polynomials from the shipped table (or
    /// search). The outer polynomial may only be omitted when `r == 1`.
    pub fn from_parts(p: u32, n: usize, inner_poly: Option<Poly>, r: usize, outer_poly: Option<Poly>) -> Result<Self> {
        if n == 0 || r == 0 {
            return spec_err("extension degrees n and r must be at least 1");
        }
        let prime = FiniteField::prime(p)?;
        let inner_poly = match inner_poly {
            Some(poly) => poly,
            None => default_primitive(&prime, n)?,
        };
        if inner_poly.degree() != Some(n) {
            return spec_err(format!("inner_poly {inner_poly} does not have degree n = {n}"));
        }
        let outer_poly = match outer_poly {
            Some(poly) => poly,
            None if r == 1 => {
                let base = prime.extension(&inner_poly)?;
                default_primitive(&base, 1)?
            }
            None => return spec_err(format!("outer_poly is required when r = {r} > 1")),
        };
        if outer_poly.degree() != Some(r) {
            return spec_err(format!("outer_poly {outer_poly} does not have degree r = {r}"));
        }
        FieldSpec::new(p, inner_poly, outer_poly)
    }

    /// Both polynomials from the defaults.
    pub fn with_defaults(p: u32, n: usize, r: usize) -> Result<Self> {
        let prime = FiniteField::prime(p)?;
        let inner = default_primitive(&prime, n)?;
        let base = prime.extension(&inner)?;
        let outer = default_primitive(&base, r)?;
        FieldSpec::new(p, inner, outer)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn n(&self) -> usize {
        self.inner.inner_poly.degree().unwrap_or(0)
    }

    pub fn r(&self) -> usize {
        self.inner.outer_poly.degree().unwrap_or(0)
    }

    /// q = p^n
    pub fn q(&self) -> u32 {
        self.inner.base.order()
    }

    /// q^r
    pub fn word_order(&self) -> u32 {
        self.inner.word.order()
    }

    pub fn inner_poly(&self) -> &Poly {
        &self.inner.inner_poly
    }

    pub fn outer_poly(&self) -> &Poly {
        &self.inner.outer_poly
    }

    /// GF(q)
    pub fn base(&self) -> &FiniteField {
        &self.inner.base
    }

    /// GF(q^r), with element index equal to the base-q reading of the
    /// coordinate vector.
    pub fn word_field(&self) -> &FiniteField {
        &self.inner.word
    }

    pub fn q_matrix(&self) -> &QMatrix {
        &self.inner.q_matrix
    }

    fn check_fe(&self, a: FieldElement) -> Result<()> {
        if self.inner.base.contains(a.0) {
            Ok(())
        } else {
            spec_err(format!("{} is not an element of GF({})", a.0, self.q()))
        }
    }

    pub fn check_word(&self, v: &WordVector) -> Result<()> {
        if v.0.len() != self.r() {
            return spec_err(format!("word has {} entries, field spec has r = {}", v.0.len(), self.r()));
        }
        v.0.iter().try_for_each(|&e| self.check_fe(FieldElement(e)))
    }

    pub fn fe_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_fe(a)?;
        self.check_fe(b)?;
        Ok(FieldElement(self.inner.base.add(a.0, b.0)))
    }

    pub fn fe_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_fe(a)?;
        self.check_fe(b)?;
        Ok(FieldElement(self.inner.base.mul(a.0, b.0)))
    }

    /// Coefficients of `a` over GF(p), ascending, length n.
    pub fn fe_coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.inner.base.prime_coeffs(a.0)
    }

    pub fn fe_from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        Ok(FieldElement(self.inner.base.from_prime_coeffs(coeffs)?))
    }

    /// Stacks the coefficients of a polynomial of degree < r over GF(q).
    pub fn map_m(&self, f: &Poly) -> Result<WordVector> {
        f.check_in(&self.inner.base)?;
        let r = self.r();
        if f.degree().is_some_and(|d| d >= r) {
            return spec_err(format!("{f} has degree >= r = {r}"));
        }
        Ok(WordVector((0..r).map(|i| f.coeff(i)).collect()))
    }

    pub fn map_m_inv(&self, v: &WordVector) -> Result<Poly> {
        self.check_word(v)?;
        Ok(Poly::new(v.0.clone()))
    }

    /// Index of `v` in [`Self::word_field`].
    pub fn word_index(&self, v: &[u32]) -> u32 {
        debug_assert_eq!(v.len(), self.r());
        let q = self.q() as u64;
        v.iter().rev().fold(0u64, |acc, &e| acc * q + e as u64) as u32
    }

    pub fn word_from_index(&self, idx: u32) -> WordVector {
        WordVector(split_digits(idx, self.q(), self.r()))
    }

    pub fn word_from_entries(&self, entries: &[u32]) -> Result<WordVector> {
        join_digits(entries, self.q(), self.r())?;
        Ok(WordVector(entries.to_vec()))
    }

    pub fn word_add(&self, v1: &WordVector, v2: &WordVector) -> Result<WordVector> {
        self.check_word(v1)?;
        self.check_word(v2)?;
        let f = &self.inner.base;
        Ok(WordVector(v1.0.iter().zip(&v2.0).map(|(&a, &b)| f.add(a, b)).collect()))
    }

    /// Field product on GF(q)^r: convolve the coefficient vectors, then
    /// reduce with Q.
    pub fn word_mul(&self, v1: &WordVector, v2: &WordVector) -> Result<WordVector> {
        self.check_word(v1)?;
        self.check_word(v2)?;
        let mut out = vec![0; self.r()];
        self.word_mul_into(&v1.0, &v2.0, &mut out);
        Ok(WordVector(out))
    }

    /// Coordinate-by-coordinate product; has zero divisors for r > 1.
    pub fn word_mul_elementwise(&self, v1: &WordVector, v2: &WordVector) -> Result<WordVector> {
        self.check_word(v1)?;
        self.check_word(v2)?;
        let mut out = vec![0; self.r()];
        self.word_mul_elementwise_into(&v1.0, &v2.0, &mut out);
        Ok(WordVector(out))
    }

    /// Unchecked [`Self::word_mul`] on raw slices of length r.
    #[inline]
    pub fn word_mul_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let f = &self.inner.base;
        let r = a.len();
        let mut conv = [0u32; 64];
        let conv = &mut conv[..2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                conv[i + j] = f.add(conv[i + j], f.mul(x, y));
            }
        }
        self.inner.q_matrix.0.mul_vec_into(f, conv, out);
    }

    #[inline]
    pub fn word_mul_elementwise_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let f = &self.inner.base;
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            *o = f.mul(x, y);
        }
    }
}

/// Q for a given base field and outer polynomial of degree r.
pub fn build_q_matrix(base: &FiniteField, outer_poly: &Poly) -> QMatrix {
    let r = outer_poly.degree().expect("outer polynomial has a degree");
    let mut q = Matrix::zeros(r, 2 * r - 1);
    for i in 0..r {
        q.set(i, i, 1);
    }
    for j in 0..r.saturating_sub(1) {
        let residue = base.poly_rem(&Poly::monomial(1, r + j), outer_poly);
        for i in 0..r {
            q.set(i, r + j, residue.coeff(i));
        }
    }
    QMatrix(q)
}

/// Wire form: `{p, n, inner_poly, r, outer_poly}` with polynomials in the
/// human text form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpecJson {
    pub p: u32,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_poly: Option<String>,
    #[serde(default = "one")]
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_poly: Option<String>,
}

fn one() -> usize {
    1
}

impl TryFrom<FieldSpecJson> for FieldSpec {
    type Error = Error;

    fn try_from(j: FieldSpecJson) -> Result<Self> {
        let inner = j.inner_poly.as_deref().map(str::parse).transpose()?;
        let outer = j.outer_poly.as_deref().map(str::parse).transpose()?;
        FieldSpec::from_parts(j.p, j.n, inner, j.r, outer)
    }
}

impl From<FieldSpec> for FieldSpecJson {
    fn from(s: FieldSpec) -> Self {
        FieldSpecJson {
            p: s.p(),
            n: s.n(),
            inner_poly: Some(s.inner_poly().to_string()),
            r: s.r(),
            outer_poly: Some(s.outer_poly().to_string()),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecJson::from(self.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = FieldSpecJson::deserialize(deserializer)?;
        FieldSpec::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8_spec() -> FieldSpec {
        FieldSpec::new(2, "x+1".parse().unwrap(), "x^3+x+1".parse().unwrap()).unwrap()
    }

    /// Independent route: multiply the polynomials and reduce modulo the
    /// outer polynomial by long division.
    fn mul_by_reduction(spec: &FieldSpec, a: &WordVector, b: &WordVector) -> WordVector {
        let base = spec.base();
        let prod = base.poly_mul(&spec.map_m_inv(a).unwrap(), &spec.map_m_inv(b).unwrap());
        spec.map_m(&base.poly_rem(&prod, spec.outer_poly())).unwrap()
    }

    #[test]
    fn q_matrix_gf8_matches_worked_example() {
        let spec = gf8_spec();
        let expected = Matrix::from_rows(&[
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1],
        ])
        .unwrap();
        assert_eq!(spec.q_matrix().matrix(), &expected);
        let v = spec.word_mul(&WordVector(vec![1, 1, 0]), &WordVector(vec![1, 0, 1])).unwrap();
        assert_eq!(v, WordVector(vec![0, 0, 1]));
    }

    #[test]
    fn q_matrix_small_cases() {
        let r1 = FieldSpec::with_defaults(2, 1, 1).unwrap();
        assert_eq!(r1.q_matrix().matrix(), &Matrix::identity(1));
        let gf4 = FieldSpec::new(2, "x+1".parse().unwrap(), "x^2+x+1".parse().unwrap()).unwrap();
        assert_eq!(
            gf4.q_matrix().matrix(),
            &Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
        );
    }

    #[test]
    fn map_m_stacks_coefficients() {
        let spec = gf8_spec();
        assert_eq!(spec.map_m(&Poly::one()).unwrap(), WordVector(vec![1, 0, 0]));
        assert_eq!(spec.map_m(&"x^2+x".parse().unwrap()).unwrap(), WordVector(vec![0, 1, 1]));
        assert!(spec.map_m(&"x^3".parse().unwrap()).is_err());
        assert!(spec.map_m_inv(&WordVector(vec![1, 0])).is_err());
    }

    #[test]
    fn gf4_scalar_product() {
        let spec = FieldSpec::new(2, "x^2+x+1".parse().unwrap(), "x+2".parse().unwrap());
        // x+2 over GF(4): 2 = class of x generates GF(4)*, and -2 = 2.
        let spec = spec.unwrap();
        assert_eq!(spec.fe_mul(FieldElement(2), FieldElement(2)).unwrap(), FieldElement(3));
        assert_eq!(spec.fe_coeffs(FieldElement(3)), vec![1, 1]);
        assert!(spec.fe_mul(FieldElement(4), FieldElement(1)).is_err());
    }

    #[test]
    fn q_route_equals_reduction_route_exhaustively() {
        let specs = vec![
            gf8_spec(),
            FieldSpec::new(3, "x+1".parse().unwrap(), "x^2+x+2".parse().unwrap()).unwrap(),
            FieldSpec::with_defaults(2, 1, 4).unwrap(),
            FieldSpec::with_defaults(2, 2, 2).unwrap(),
            FieldSpec::with_defaults(5, 1, 2).unwrap(),
        ];
        for spec in specs {
            let n = spec.word_order();
            for a in 0..n {
                let va = spec.word_from_index(a);
                for b in 0..n {
                    let vb = spec.word_from_index(b);
                    let prod = spec.word_mul(&va, &vb).unwrap();
                    assert_eq!(prod, mul_by_reduction(&spec, &va, &vb), "{spec:?} {va} {vb}");
                    // and the log-table route of the tower field
                    assert_eq!(spec.word_index(&prod.0), spec.word_field().mul(a, b));
                    assert_eq!(prod.is_zero(), va.is_zero() || vb.is_zero());
                }
            }
        }
    }

    #[test]
    fn elementwise_products() {
        let gf2r4 = FieldSpec::with_defaults(2, 1, 4).unwrap();
        let z = gf2r4
            .word_mul_elementwise(&WordVector(vec![1, 0, 0, 1]), &WordVector(vec![0, 1, 1, 0]))
            .unwrap();
        assert!(z.is_zero());
        let gf3r2 = FieldSpec::with_defaults(3, 1, 2).unwrap();
        let v = gf3r2
            .word_mul_elementwise(&WordVector(vec![1, 2]), &WordVector(vec![2, 2]))
            .unwrap();
        assert_eq!(v, WordVector(vec![2, 1]));
        let ones = WordVector(vec![1, 1]);
        for i in 0..9 {
            let w = gf3r2.word_from_index(i);
            assert_eq!(gf3r2.word_mul_elementwise(&w, &ones).unwrap(), w);
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let spec = gf8_spec();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"p":2,"n":1,"inner_poly":"x+1","r":3,"outer_poly":"x^3+x+1"}"#);
        let back: FieldSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"r":3}"#).is_err());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"r":2,"outer_poly":"x^2+1"}"#).is_err());
        let scalar: FieldSpec = serde_json::from_str(r#"{"p":3}"#).unwrap();
        assert_eq!((scalar.q(), scalar.r()), (3, 1));
    }
}

//! Dense univariate polynomials whose coefficients are element indices of a
//! [`FiniteField`]. Arithmetic lives on the field so that one polynomial type
//! serves GF(p), GF(q) and GF(q^r) coefficients alike.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// Coefficients ascending by power, no trailing zeros. The zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `c * x^k`
    pub fn monomial(c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Checks every coefficient is an element of `field`.
    pub fn check_in(&self, field: &FiniteField) -> Result<()> {
        match self.coeffs.iter().find(|&&c| c >= field.order()) {
            Some(c) => Err(Error::Spec(format!(
                "coefficient {c} of {self} is not an element of GF({})",
                field.order()
            ))),
            None => Ok(()),
        }
    }

    /// Ascending comma-separated form, e.g. `1,0,1,1` for `x^3+x^2+1`.
    pub fn to_csv(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
}

fn parse_term(term: &str) -> Result<(usize, u32)> {
    let Some(xpos) = term.find('x') else {
        return Ok((0, parse_u32(term, "coefficient")?));
    };
    let head = term[..xpos].trim_end_matches('*');
    let coeff = if head.is_empty() { 1 } else { parse_u32(head, "coefficient")? };
    let tail = &term[xpos + 1..];
    let power = if tail.is_empty() {
        1
    } else if let Some(exp) = tail.strip_prefix('^') {
        parse_u32(exp, "exponent")? as usize
    } else {
        return Err(Error::Parse(format!("bad term '{term}'")));
    };
    Ok((power, coeff))
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts `x^3+x^2+1` (with optional `*` and integer coefficients) or
    /// the ascending list `1,0,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if !s.contains('x') {
            let coeffs = s
                .split(',')
                .map(|c| parse_u32(c, "coefficient"))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::new(coeffs));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for term in s.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{s}'")));
            }
            let (power, c) = parse_term(term)?;
            if seen.contains(&power) {
                return Err(Error::Parse(format!("repeated power x^{power} in '{s}'")));
            }
            seen.push(power);
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] = c;
        }
        Ok(Poly::new(coeffs))
    }
}

impl FiniteField {
    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_scale(&self, a: &Poly, c: u32) -> Poly {
        Poly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by the zero polynomial");
        let inv_lead = self.inv(b.leading());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![0u32; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let t = self.mul(c, inv_lead);
            quot[k - db] = t;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                rem[idx] = self.sub(rem[idx], self.mul(t, bc));
            }
        }
        rem.truncate(db);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly_divrem(a, b).1
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, modulus: &Poly) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), modulus)
    }

    pub fn poly_powmod(&self, base: &Poly, mut exp: u64, modulus: &Poly) -> Poly {
        let mut acc = self.poly_rem(&Poly::one(), modulus);
        let mut b = self.poly_rem(base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_mulmod(&acc, &b, modulus);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.poly_mulmod(&b, &b, modulus);
            }
        }
        acc
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        self.poly_scale(a, self.inv(a.leading()))
    }

    pub fn poly_eval(&self, a: &Poly, x: u32) -> u32 {
        a.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

//! Table-driven finite fields built as a tower over GF(p).
//!
//! An element is a `u32` index whose base-`p` digits are its coefficients
//! over GF(p). For an extension of a field of order `Q`, the base-`Q` digits
//! of the index are its coefficients over that base field, lowest power
//! first. Addition is digit-wise; multiplication goes through discrete-log
//! tables generated by the class of `x`, which exists exactly when the
//! defining polynomial is primitive.

use std::fmt;
use std::sync::Arc;

use crate::error::{spec_err, Error, Result};
use crate::gf::factor::{is_prime, prime_factors, DEFAULT_TRIAL_BOUND};
use crate::gf::Poly;

/// Largest field order for which log/exp tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    /// Degree over GF(p).
    degree: u32,
    order: u32,
    /// Defining polynomials from GF(p) upwards; empty for a prime field.
    moduli: Vec<(u32, Poly)>,
    /// `exp[i] = g^i`, stored twice over so a sum of two logs indexes directly.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.order == other.inner.order
                && self.inner.moduli == other.inner.moduli
                && self.generator() == other.generator())
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.inner.order)?;
        for (base, m) in &self.inner.moduli {
            write!(f, ", {m} over GF({base})")?;
        }
        f.write_str(")")
    }
}

impl FiniteField {
    /// GF(p). The multiplicative generator is the smallest primitive root.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return spec_err(format!("{p} is not prime"));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::TooLarge {
                what: format!("prime field order {p}"),
                bound: format!("{MAX_FIELD_ORDER}"),
            });
        }
        let g = smallest_primitive_root(p)?;
        let n = (p - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; p as usize];
        let mut cur = 1u64;
        for i in 0..n {
            exp.push(cur as u32);
            log[cur as usize] = i as u32;
            cur = cur * g as u64 % p as u64;
        }
        exp.extend_from_within(..);
        Ok(FiniteField {
            inner: Arc::new(Tables { p, degree: 1, order: p, moduli: Vec::new(), exp, log }),
        })
    }

    /// The residue class field `self[x] / (modulus)`.
    ///
    /// `modulus` must be monic and primitive over `self`; primitivity is
    /// established by walking the powers of `x` through the whole
    /// multiplicative group while building the tables.
    pub fn extension(&self, modulus: &Poly) -> Result<Self> {
        modulus.check_in(self)?;
        let d = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return spec_err(format!("modulus {modulus} must have degree at least 1")),
        };
        if !modulus.is_monic() {
            return spec_err(format!("modulus {modulus} is not monic"));
        }
        let base = self.order() as u64;
        let order = base
            .checked_pow(d as u32)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::TooLarge {
                what: format!("extension field GF({base}^{d})"),
                bound: format!("order {MAX_FIELD_ORDER}"),
            })?;
        let not_primitive = || Error::NotPrimitive { poly: modulus.to_string(), order: base };
        let n = (order - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; order as usize];
        let mut visited = vec![false; order as usize];
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        let encode = |c: &[u32]| c.iter().rev().fold(0u64, |acc, &x| acc * base + x as u64) as u32;
        for i in 0..n {
            let e = encode(&cur);
            if e == 0 || visited[e as usize] {
                return Err(not_primitive());
            }
            visited[e as usize] = true;
            exp.push(e);
            log[e as usize] = i as u32;
            // cur <- cur * x mod modulus
            let top = cur[d - 1];
            for j in (1..d).rev() {
                cur[j] = self.sub(cur[j - 1], self.mul(top, modulus.coeff(j)));
            }
            cur[0] = self.neg(self.mul(top, modulus.coeff(0)));
        }
        if encode(&cur) != 1 {
            return Err(not_primitive());
        }
        exp.extend_from_within(..);
        let mut moduli = self.inner.moduli.clone();
        moduli.push((self.order(), modulus.clone()));
        Ok(FiniteField {
            inner: Arc::new(Tables {
                p: self.inner.p,
                degree: self.inner.degree * d as u32,
                order: order as u32,
                moduli,
                exp,
                log,
            }),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// The element whose powers enumerate the multiplicative group.
    pub fn generator(&self) -> u32 {
        if self.inner.order == 2 {
            1
        } else {
            self.inner.exp[1]
        }
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a ^ b;
        }
        if self.inner.degree == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        if self.inner.degree == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let t = &self.inner;
        let n = t.order - 1;
        t.exp[((n - t.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.inner;
        let n = (t.order - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Base-`p` digits of `a` (coefficients over GF(p)), length `degree()`.
    pub fn prime_coeffs(&self, a: u32) -> Vec<u32> {
        split_digits(a, self.inner.p, self.inner.degree as usize)
    }

    pub fn from_prime_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        join_digits(coeffs, self.inner.p, self.inner.degree as usize)
    }
}

/// `value` as `len` digits in `base`, least significant first.
pub fn split_digits(mut value: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(value % base);
        value /= base;
    }
    out
}

pub fn join_digits(digits: &[u32], base: u32, len: usize) -> Result<u32> {
    if digits.len() != len {
        return spec_err(format!("expected {len} coefficients, got {}", digits.len()));
    }
    if let Some(d) = digits.iter().find(|&&d| d >= base) {
        return spec_err(format!("coefficient {d} out of range for base {base}"));
    }
    Ok(digits.iter().rev().fold(0u64, |acc, &d| acc * base as u64 + d as u64) as u32)
}

fn smallest_primitive_root(p: u32) -> Result<u32> {
    if p == 2 {
        return Ok(1);
    }
    let n = (p - 1) as u64;
    let factors = prime_factors(n, DEFAULT_TRIAL_BOUND)?;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc
    };
    (2..p)
        .find(|&g| factors.iter().all(|&l| pow(g as u64, n / l) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FiniteField {
        FiniteField::prime(2).unwrap().extension(&"x^2+x+1".parse().unwrap()).unwrap()
    }

    #[test]
    fn gf2_tables() {
        let f = FiniteField::prime(2).unwrap();
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.inv(1), 1);
    }

    #[test]
    fn gf4_x_times_x() {
        // index 2 is x, index 3 is x+1
        let f = gf4();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.prime_coeffs(3), vec![1, 1]);
    }

    #[test]
    fn rejects_composite_and_nonprimitive() {
        assert!(FiniteField::prime(9).is_err());
        let gf2 = FiniteField::prime(2).unwrap();
        // irreducible but x has order 5, not 15
        assert!(matches!(
            gf2.extension(&"x^4+x^3+x^2+x+1".parse().unwrap()),
            Err(Error::NotPrimitive { .. })
        ));
        assert!(gf2.extension(&"x^2+1".parse().unwrap()).is_err());
        assert!(gf2.extension(&"x^2".parse().unwrap()).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let gf3 = FiniteField::prime(3).unwrap();
        let fields = vec![
            FiniteField::prime(5).unwrap(),
            FiniteField::prime(7).unwrap(),
            gf4(),
            gf3.extension(&"x^2+x+2".parse().unwrap()).unwrap(),
            FiniteField::prime(2).unwrap().extension(&"x^3+x+1".parse().unwrap()).unwrap(),
        ];
        for f in fields {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tower_gf4_over_gf4_is_gf16() {
        let f = gf4();
        // x^2+x+2 over GF(4): 2 is the class of x in GF(4).
        let g = f.extension(&Poly::new(vec![2, 1, 1])).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.degree(), 4);
        for a in 0..16 {
            assert_eq!(g.pow(a, 16), a);
        }
    }

    #[test]
    fn degree_one_extension_is_identity_layer() {
        let gf5 = FiniteField::prime(5).unwrap();
        let g = gf5.generator();
        let lifted = gf5.extension(&Poly::new(vec![gf5.neg(g), 1])).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(lifted.mul(a, b), gf5.mul(a, b));
                assert_eq!(lifted.add(a, b), gf5.add(a, b));
            }
        }
    }
}

//! Primitivity certification by the order of `x`, a deterministic search,
//! and a built-in table of primitive polynomials.

use crate::error::{spec_err, Error, Result};
use crate::gf::factor::{prime_factors, DEFAULT_TRIAL_BOUND};
use crate::gf::{FiniteField, Poly};

/// `true` iff `f` is primitive over `field`: the class of `x` has
/// multiplicative order `Q^d - 1` in `field[x]/(f)`, which also forces `f`
/// to be irreducible (every nonzero residue is then a power of `x`).
///
/// `Q^d - 1` is factored by trial division; a composite cofactor that
/// survives the bound is reported as [`Error::TooLarge`].
pub fn is_primitive(f: &Poly, field: &FiniteField) -> Result<bool> {
    is_primitive_with_bound(f, field, DEFAULT_TRIAL_BOUND)
}

pub fn is_primitive_with_bound(f: &Poly, field: &FiniteField, trial_bound: u64) -> Result<bool> {
    f.check_in(field)?;
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return spec_err(format!("{f} has degree < 1")),
    };
    if !f.is_monic() {
        return spec_err(format!("{f} is not monic"));
    }
    if f.coeff(0) == 0 {
        return Ok(false);
    }
    let q = field.order() as u64;
    let group = q
        .checked_pow(d as u32)
        .and_then(|n| n.checked_sub(1))
        .filter(|&n| n < u64::MAX / 2)
        .ok_or_else(|| Error::TooLarge {
            what: format!("group order {q}^{d} - 1"),
            bound: "64-bit".into(),
        })?;
    if d == 1 {
        // x - a: the class of x is a, which must generate GF(q)*.
        let a = field.neg(f.coeff(0));
        return element_order_is(field, a, group);
    }
    let x = Poly::x();
    if field.poly_powmod(&x, group, f) != Poly::one() {
        return Ok(false);
    }
    for l in prime_factors(group, trial_bound)? {
        if field.poly_powmod(&x, group / l, f) == Poly::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn element_order_is(field: &FiniteField, a: u32, n: u64) -> Result<bool> {
    if a == 0 {
        return Ok(false);
    }
    if field.pow(a, n) != 1 {
        return Ok(false);
    }
    for l in prime_factors(n, DEFAULT_TRIAL_BOUND)? {
        if field.pow(a, n / l) == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First primitive monic polynomial of the given degree, enumerating the
/// lower coefficients as a base-`Q` counter with the constant term least
/// significant. Over GF(2) this yields x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1.
pub fn find_primitive(field: &FiniteField, degree: usize) -> Result<Poly> {
    if degree == 0 {
        return spec_err("degree must be at least 1");
    }
    let q = field.order() as u64;
    let total = q.checked_pow(degree as u32).ok_or_else(|| Error::TooLarge {
        what: format!("search space {q}^{degree}"),
        bound: "64-bit".into(),
    })?;
    for t in 1..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut v = t;
        for _ in 0..degree {
            coeffs.push((v % q) as u32);
            v /= q;
        }
        coeffs.push(1);
        let f = Poly::new(coeffs);
        if is_primitive(&f, field)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no primitive polynomial of degree {degree} over GF({q})")))
}

/// Ascending coefficient lists of primitive polynomials over GF(p), keyed by
/// (p, degree). Each entry is the first hit of [`find_primitive`].
const TABLE: &[(u32, &[u32])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 1, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 1, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (5, &[2, 1]),
    (5, &[2, 1, 1]),
    (5, &[2, 3, 0, 1]),
    (5, &[2, 2, 1, 0, 1]),
    (5, &[2, 4, 0, 0, 0, 1]),
    (5, &[2, 1, 0, 0, 0, 0, 1]),
];

/// The shipped primitive polynomial for (p, degree), if any.
pub fn table_lookup(p: u32, degree: usize) -> Option<Poly> {
    TABLE
        .iter()
        .find(|(tp, c)| *tp == p && c.len() == degree + 1)
        .map(|(_, c)| Poly::new(c.to_vec()))
}

/// Table entry when `field` is a prime field with one shipped; otherwise
/// the search result.
pub fn default_primitive(field: &FiniteField, degree: usize) -> Result<Poly> {
    if field.degree() == 1 {
        if let Some(p) = table_lookup(field.order(), degree) {
            return Ok(p);
        }
    }
    find_primitive(field, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn named_examples() {
        let f = gf(2);
        assert!(is_primitive(&"x^5+x^2+1".parse().unwrap(), &f).unwrap());
        assert!(!is_primitive(&"x^2+1".parse().unwrap(), &f).unwrap());
        assert!(!is_primitive(&"x^4+x^3+x^2+x+1".parse().unwrap(), &f).unwrap());
        assert!(is_primitive(&"x^2+x+2".parse().unwrap(), &gf(3)).unwrap());
        assert!(!is_primitive(&"x^2+1".parse().unwrap(), &gf(3)).unwrap());
    }

    #[test]
    fn degree_one_needs_a_generator() {
        let f = gf(5);
        // x - 2 and x - 3 are primitive (2, 3 generate GF(5)*), x - 4 is not.
        assert!(is_primitive(&Poly::new(vec![3, 1]), &f).unwrap());
        assert!(is_primitive(&Poly::new(vec![2, 1]), &f).unwrap());
        assert!(!is_primitive(&Poly::new(vec![1, 1]), &f).unwrap());
        assert!(!is_primitive(&Poly::x(), &f).unwrap());
        assert!(is_primitive(&Poly::new(vec![1, 1]), &gf(2)).unwrap());
    }

    #[test]
    fn order_check_agrees_with_table_walk() {
        // The table walk in FiniteField::extension is an independent
        // primitivity test: it succeeds iff x cycles through every unit.
        for p in [2u32, 3] {
            let f = gf(p);
            for d in 1..=4usize {
                let q = p.pow(d as u32);
                for t in 0..q {
                    let mut c: Vec<u32> = (0..d).map(|i| t / p.pow(i as u32) % p).collect();
                    c.push(1);
                    let poly = Poly::new(c);
                    let by_order = is_primitive(&poly, &f).unwrap();
                    let by_walk = f.extension(&poly).is_ok();
                    assert_eq!(by_order, by_walk, "{poly} over GF({p})");
                }
            }
        }
    }

    #[test]
    fn search_reproduces_conventional_choices() {
        let f = gf(2);
        assert_eq!(find_primitive(&f, 3).unwrap(), "x^3+x+1".parse().unwrap());
        assert_eq!(find_primitive(&f, 5).unwrap(), "x^5+x^2+1".parse().unwrap());
        assert_eq!(find_primitive(&gf(3), 2).unwrap(), "x^2+x+2".parse().unwrap());
    }

    #[test]
    fn table_entries_are_primitive_and_match_search() {
        for &(p, c) in TABLE {
            let f = gf(p);
            let poly = Poly::new(c.to_vec());
            assert!(is_primitive(&poly, &f).unwrap(), "{poly} over GF({p})");
            assert_eq!(find_primitive(&f, c.len() - 1).unwrap(), poly);
        }
    }

    #[test]
    fn primitive_over_extension_field() {
        let gf4 = gf(2).extension(&"x^2+x+1".parse().unwrap()).unwrap();
        let g = find_primitive(&gf4, 2).unwrap();
        assert!(is_primitive(&g, &gf4).unwrap());
        assert!(gf4.extension(&g).is_ok());
    }

    #[test]
    fn refuses_when_factoring_is_out_of_reach() {
        // 2^59 - 1 = 179951 * 3203431780337. Find an irreducible polynomial of
        // prime degree 59 so the order check reaches the factorization step.
        let f = gf(2);
        let x = Poly::x();
        let irreducible = (1u64..)
            .map(|t| {
                let mut c: Vec<u32> = (0..59).map(|i| ((t << 1 | 1) >> i & 1) as u32).collect();
                c.push(1);
                Poly::new(c)
            })
            .find(|t| {
                let frob = f.poly_powmod(&x, 1 << 59, t);
                frob == x && f.poly_gcd(&f.poly_sub(&f.poly_mul(&x, &x), &x), t) == Poly::one()
            })
            .expect("an irreducible polynomial of degree 59");
        assert!(matches!(
            is_primitive_with_bound(&irreducible, &f, 1000),
            Err(Error::TooLarge { .. })
        ));
        assert!(is_primitive(&irreducible, &f).is_ok());
    }
}

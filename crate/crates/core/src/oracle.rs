//! Closed-form occurrence counts for NLFG outputs and brute-force
//! enumerators that serve as ground truth at small scale.
//!
//! All counts are exact big integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{spec_err, Error, Result};
use crate::gf::{FieldSpec, FiniteField, WordVector};
use crate::nlfg::{ProductMode, TapAssembly};

/// Default cap on the number of assembly inputs enumerated by
/// [`brute_assembly_census`].
pub const DEFAULT_CENSUS_BOUND: u64 = 1 << 24;

/// Parameters shared by the counting formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountParams {
    /// Field order q.
    pub q: u64,
    /// Word width (1 for a scalar register).
    pub r: u32,
    /// Number of delay blocks.
    #[serde(rename = "L")]
    pub l: u32,
    /// Number of multipliers.
    pub m: u32,
    /// Nonzero coordinates of the target vector.
    #[serde(default)]
    pub kappa: u32,
}

impl CountParams {
    pub fn new(q: u64, r: u32, l: u32, m: u32) -> Result<Self> {
        CountParams { q, r, l, m, kappa: 0 }.validated()
    }

    pub fn with_kappa(self, kappa: u32) -> Result<Self> {
        CountParams { kappa, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if self.q < 2 {
            return spec_err(format!("q = {} must be at least 2", self.q));
        }
        if self.r < 1 {
            return spec_err("r must be at least 1");
        }
        if self.m < 1 {
            return spec_err("m must be at least 1");
        }
        if self.m > self.l / 2 {
            return spec_err(format!("m = {} exceeds floor(L/2) = {}", self.m, self.l / 2));
        }
        if self.kappa > self.r {
            return spec_err(format!("kappa = {} exceeds r = {}", self.kappa, self.r));
        }
        Ok(self)
    }

    /// Inputs to one multiplier giving zero: 2q - 1.
    pub fn psi_z(&self) -> BigUint {
        BigUint::from(2 * self.q - 1)
    }

    /// Inputs to one multiplier giving a fixed nonzero value: q - 1.
    pub fn psi_nz(&self) -> BigUint {
        BigUint::from(self.q - 1)
    }

    /// q^r, the order of the word field.
    pub fn word_order(&self) -> BigUint {
        pow(self.q, self.r)
    }
}

fn pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

fn big_pow(base: &BigUint, exp: u32) -> BigUint {
    num_traits::pow(base.clone(), exp as usize)
}

fn binomial(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// |S_m(K)| for K ≠ 0: ordered m-tuples of nonzero elements summing to K,
/// `((q-1)^m - (-1)^m) / q`. Zero for m = 0.
pub fn partition_count(m: u32, q: u64) -> Result<BigUint> {
    if m == 0 {
        return Ok(BigUint::zero());
    }
    let num = BigInt::from(q - 1).pow(m) - if m.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let (quot, rem) = num.div_rem(&BigInt::from(q));
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::Internal(format!("(q-1)^m - (-1)^m not divisible by q for q = {q}, m = {m}")));
    }
    Ok(quot.to_biguint().expect("nonnegative"))
}

/// The same count by the recursion `|S_m| = (q-1)^(m-1) - |S_(m-1)|`,
/// `|S_0| = 0`.
pub fn partition_count_recursive(m: u32, q: u64) -> BigUint {
    let mut s = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..m {
        s = &power - &s;
        power *= BigUint::from(q - 1);
    }
    s
}

/// ψ_m(K): assembly inputs (out of q^(2m)) producing K.
/// `q^(m-1)(q^m - 1)` for K ≠ 0, `q^(m-1)(q^m + q - 1)` for K = 0.
pub fn psi_m(m: u32, q: u64, zero_target: bool) -> Result<BigUint> {
    if m == 0 {
        return spec_err("psi_m needs m >= 1");
    }
    let qm = pow(q, m);
    let lead = pow(q, m - 1);
    Ok(if zero_target { lead * (qm + BigUint::from(q) - 1u32) } else { lead * (qm - 1u32) })
}

/// ψ_m(K ≠ 0) as the sum over how many multipliers output zero:
/// `Σ_{i<m} C(m,i) ψ_z^i ψ_nz^(m-i) |S_(m-i)(K)|`.
pub fn psi_m_by_partition_sum(m: u32, q: u64) -> Result<BigUint> {
    if m == 0 {
        return spec_err("psi_m needs m >= 1");
    }
    let psi_z = BigUint::from(2 * q - 1);
    let psi_nz = BigUint::from(q - 1);
    let mut total = BigUint::zero();
    for i in 0..m {
        total += binomial(m, i) * big_pow(&psi_z, i) * big_pow(&psi_nz, m - i) * partition_count(m - i, q)?;
    }
    Ok(total)
}

/// N_m^L(K) for a scalar NLFG: `q^(L-m-1)(q^m - 1)` for K ≠ 0 and
/// `q^(L-m-1)(q^m + q - 1) - 1` for K = 0.
pub fn n_scalar(params: &CountParams, zero_target: bool) -> Result<BigUint> {
    let p = params.validated()?;
    if p.r != 1 {
        return spec_err(format!("n_scalar needs r = 1, got r = {}", p.r));
    }
    Ok(scalar_count(&BigUint::from(p.q), p.l, p.m, zero_target))
}

fn scalar_count(q: &BigUint, l: u32, m: u32, zero_target: bool) -> BigUint {
    let lead = big_pow(q, l - m - 1);
    let qm = big_pow(q, m);
    if zero_target {
        lead * (qm + q - 1u32) - 1u32
    } else {
        lead * (qm - 1u32)
    }
}

/// Occurrences per period of a word in the field-product NLFG: the scalar
/// formula over GF(q^r).
pub fn n_proposed(params: &CountParams, zero_target: bool) -> Result<BigUint> {
    let p = params.validated()?;
    Ok(scalar_count(&p.word_order(), p.l, p.m, zero_target))
}

/// Ψ_m(v): element-wise assembly inputs producing a vector with κ nonzero
/// coordinates, `(q^(m-1))^r (q^m - 1)^κ (q^m + q - 1)^(r-κ)`.
pub fn psi_elementwise(m: u32, q: u64, r: u32, kappa: u32) -> Result<BigUint> {
    if m == 0 {
        return spec_err("psi_elementwise needs m >= 1");
    }
    if kappa > r {
        return spec_err(format!("kappa = {kappa} exceeds r = {r}"));
    }
    let qm = pow(q, m);
    let nz = &qm - 1u32;
    let z = &qm + BigUint::from(q) - 1u32;
    Ok(big_pow(&pow(q, m - 1), r) * big_pow(&nz, kappa) * big_pow(&z, r - kappa))
}

/// Occurrences per period of a vector with κ nonzero coordinates in the
/// element-wise NLFG. With `zero_target` the zero vector is counted and
/// κ is ignored; otherwise κ ≥ 1 is required.
pub fn n_elementwise(params: &CountParams, zero_target: bool) -> Result<BigUint> {
    let p = params.validated()?;
    let lead = pow(p.q, p.r * (p.l - p.m - 1));
    let qm = pow(p.q, p.m);
    let z = &qm + BigUint::from(p.q) - 1u32;
    if zero_target {
        return Ok(lead * big_pow(&z, p.r) - 1u32);
    }
    if p.kappa == 0 {
        return spec_err("a nonzero target needs kappa >= 1");
    }
    let nz = &qm - 1u32;
    Ok(lead * big_pow(&nz, p.kappa) * big_pow(&z, p.r - p.kappa))
}

/// Count of the element-wise class with κ nonzeros (κ = 0 is the zero vector).
pub fn n_elementwise_class(params: &CountParams, kappa: u32) -> Result<BigUint> {
    let p = params.with_kappa(kappa)?;
    n_elementwise(&p, kappa == 0)
}

/// Number of vectors in GF(q)^r with exactly κ nonzero coordinates.
pub fn class_size(q: u64, r: u32, kappa: u32) -> BigUint {
    binomial(r, kappa) * pow(q - 1, kappa)
}

fn deviation(count: &BigUint, period: &BigUint, symbols: &BigUint) -> BigRational {
    let freq = BigRational::new(BigInt::from(count.clone()), BigInt::from(period.clone()));
    let ideal = BigRational::new(BigInt::one(), BigInt::from(symbols.clone()));
    (freq - ideal).abs()
}

/// `max_K |N(K)/(Q^L - 1) - 1/Q|` for the field-product scheme, Q = q^r
/// (the scalar NLFG when r = 1).
pub fn balance_deviation(params: &CountParams) -> Result<BigRational> {
    let p = params.validated()?;
    let big_q = p.word_order();
    let period = big_pow(&big_q, p.l) - 1u32;
    let z = deviation(&n_proposed(&p, true)?, &period, &big_q);
    let nz = deviation(&n_proposed(&p, false)?, &period, &big_q);
    Ok(z.max(nz))
}

/// The same deviation for the element-wise scheme, over all κ classes.
pub fn balance_deviation_elementwise(params: &CountParams) -> Result<BigRational> {
    let p = params.validated()?;
    let big_q = p.word_order();
    let period = big_pow(&big_q, p.l) - 1u32;
    let mut worst = BigRational::zero();
    for kappa in 0..=p.r {
        let d = deviation(&n_elementwise_class(&p, kappa)?, &period, &big_q);
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// Tally of assembly outputs over every one of the q^(2rm) inputs, keyed
/// by output word.
pub fn brute_assembly_census(
    spec: &FieldSpec,
    m: usize,
    mode: ProductMode,
    bound: u64,
) -> Result<BTreeMap<WordVector, u64>> {
    let w = spec.word_order() as u64;
    let inputs = w
        .checked_pow(2 * m as u32)
        .filter(|&n| n <= bound)
        .ok_or_else(|| Error::TooLarge {
            what: format!("census of (q^r)^(2m) = {w}^{} assembly inputs", 2 * m),
            bound: format!("{bound}"),
        })?;
    let r = spec.r();
    let assembly = TapAssembly::with_default_pairs(m, mode, 2 * m)?;
    let words: Vec<Vec<u32>> = (0..w as u32).map(|i| spec.word_from_index(i).0).collect();
    let mut digits = vec![0usize; 2 * m];
    let mut state = vec![0u32; 2 * m * r];
    let mut out = vec![0u32; r];
    let mut counts = vec![0u64; w as usize];
    for _ in 0..inputs {
        assembly.output_into(spec, &state, r, &mut out);
        counts[spec.word_index(&out) as usize] += 1;
        // next input: mixed-radix increment over the 2m word slots
        for (k, d) in digits.iter_mut().enumerate() {
            *d += 1;
            if *d == w as usize {
                *d = 0;
            }
            state[k * r..(k + 1) * r].copy_from_slice(&words[*d]);
            if *d != 0 {
                break;
            }
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (spec.word_from_index(i as u32), c))
        .collect())
}

/// Per-period counts implied by an assembly census: among the `(q^r)^L`
/// register states each assembly input occurs `(q^r)^(L-2m)` times, and
/// the zero state (output zero) is not part of the period.
pub fn scale_census(
    census: &BTreeMap<WordVector, u64>,
    spec: &FieldSpec,
    l: usize,
    m: usize,
) -> Result<BTreeMap<WordVector, BigUint>> {
    if 2 * m > l {
        return spec_err(format!("m = {m} exceeds floor(L/2) = {}", l / 2));
    }
    let free = big_pow(&BigUint::from(spec.word_order()), (l - 2 * m) as u32);
    let mut out: BTreeMap<WordVector, BigUint> = census.iter().map(|(v, &c)| (v.clone(), &free * c)).collect();
    let zero = WordVector(vec![0; spec.r()]);
    match out.get_mut(&zero) {
        Some(c) if !c.is_zero() => *c -= 1u32,
        _ => return Err(Error::Internal("census has no zero output".into())),
    }
    Ok(out)
}

/// |S_m(K)| by enumerating every m-tuple of nonzero elements of `field`.
pub fn brute_partition_count(field: &FiniteField, m: u32, target: u32) -> u64 {
    let q = field.order();
    let mut tuple = vec![1u32; m as usize];
    let mut count = 0u64;
    if m == 0 {
        return 0;
    }
    loop {
        if tuple.iter().fold(0, |acc, &y| field.add(acc, y)) == target {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == tuple.len() {
                return count;
            }
            tuple[k] += 1;
            if tuple[k] < q {
                break;
            }
            tuple[k] = 1;
            k += 1;
        }
    }
}

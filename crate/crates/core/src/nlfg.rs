//! Nonlinear feedforward generators: a register whose delay-block outputs
//! feed m disjoint two-input multipliers, the products summed into one
//! output symbol (or word) per clock.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{spec_err, Error, Result};
use crate::gf::{FieldSpec, WordVector};
use crate::registers::{Register, RegisterJson};

/// How two delay-block words are multiplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductMode {
    /// Multiplication in GF(q^r) (convolution then Q reduction).
    FieldProduct,
    /// Coordinate-by-coordinate multiplication in GF(q).
    ElementWise,
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductMode::FieldProduct => "field-product",
            ProductMode::ElementWise => "element-wise",
        })
    }
}

impl FromStr for ProductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "field-product" | "field" | "proposed" => Ok(ProductMode::FieldProduct),
            "element-wise" | "elementwise" => Ok(ProductMode::ElementWise),
            _ => Err(Error::Parse(format!("unknown product mode '{s}'"))),
        }
    }
}

/// m multipliers over disjoint pairs of delay-block indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapAssembly {
    pairs: Vec<(usize, usize)>,
    mode: ProductMode,
}

impl TapAssembly {
    /// Each delay block may feed at most one multiplier, and
    /// `1 <= m <= floor(L / 2)`.
    pub fn new(pairs: Vec<(usize, usize)>, mode: ProductMode, register_len: usize) -> Result<Self> {
        let m = pairs.len();
        if m == 0 {
            return spec_err("an assembly needs at least one multiplier (m >= 1)");
        }
        if m > register_len / 2 {
            return spec_err(format!("m = {m} exceeds floor(L/2) = {}", register_len / 2));
        }
        let mut used = vec![false; register_len];
        for &(i, j) in &pairs {
            for k in [i, j] {
                if k >= register_len {
                    return spec_err(format!("tap index {k} out of range for L = {register_len}"));
                }
                if used[k] {
                    return spec_err(format!("delay block {k} feeds more than one multiplier input"));
                }
                used[k] = true;
            }
        }
        Ok(TapAssembly { pairs, mode })
    }

    /// Pairs `(0,1), (2,3), ..., (2m-2, 2m-1)`.
    pub fn with_default_pairs(m: usize, mode: ProductMode, register_len: usize) -> Result<Self> {
        TapAssembly::new((0..m).map(|k| (2 * k, 2 * k + 1)).collect(), mode, register_len)
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    /// Unchecked evaluation on a stacked state of `width`-symbol blocks.
    #[inline]
    pub fn output_into(&self, spec: &FieldSpec, state: &[u32], width: usize, out: &mut [u32]) {
        let f = spec.base();
        out.fill(0);
        let mut prod = [0u32; 32];
        let prod = &mut prod[..width];
        for &(i, j) in &self.pairs {
            let a = &state[i * width..(i + 1) * width];
            let b = &state[j * width..(j + 1) * width];
            match self.mode {
                ProductMode::FieldProduct => spec.word_mul_into(a, b, prod),
                ProductMode::ElementWise => spec.word_mul_elementwise_into(a, b, prod),
            }
            for (o, &p) in out.iter_mut().zip(prod.iter()) {
                *o = f.add(*o, p);
            }
        }
    }

    /// Sum over the pairs of the product of the two delay-block words.
    pub fn output(&self, spec: &FieldSpec, state: &[WordVector]) -> Result<WordVector> {
        let r = spec.r();
        for w in state {
            spec.check_word(w)?;
        }
        if let Some(&(i, j)) = self.pairs.iter().find(|&&(i, j)| i.max(j) >= state.len()) {
            return spec_err(format!("pair ({i}, {j}) out of range for a state of {} blocks", state.len()));
        }
        let flat: Vec<u32> = state.iter().flat_map(|w| w.entries().iter().copied()).collect();
        let mut out = vec![0; r];
        self.output_into(spec, &flat, r, &mut out);
        Ok(WordVector(out))
    }
}

/// A register plus its multiplier assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NlfgGenerator {
    register: Register,
    assembly: TapAssembly,
}

impl NlfgGenerator {
    pub fn new(register: Register, assembly: TapAssembly) -> Result<Self> {
        // Re-validate against this register's length.
        let assembly = TapAssembly::new(assembly.pairs, assembly.mode, register.len())?;
        Ok(NlfgGenerator { register, assembly })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn assembly(&self) -> &TapAssembly {
        &self.assembly
    }

    pub fn spec(&self) -> &FieldSpec {
        self.register.spec()
    }

    /// Output for the current state without advancing.
    pub fn current_output(&self) -> WordVector {
        let w = self.register.width();
        let mut out = vec![0; w];
        self.assembly.output_into(self.spec(), self.register.state(), w, &mut out);
        WordVector(out)
    }

    /// Output for the current state, then one register step.
    pub fn step(&mut self) -> WordVector {
        let out = self.current_output();
        self.register.advance();
        out
    }

    pub fn stepped(&self) -> (WordVector, NlfgGenerator) {
        let mut next = self.clone();
        let out = next.step();
        (out, next)
    }

    /// One output per state of the full register period, in state order.
    pub fn full_period_output(&self) -> Result<FullPeriodOutput> {
        let remaining = self.register.check_full_period()?;
        Ok(FullPeriodOutput { generator: self.clone(), remaining })
    }

    /// Streams the output index (in [`FieldSpec::word_field`] numbering)
    /// for `count` consecutive states starting from the current one.
    pub(crate) fn for_each_output_index(&self, count: u64, mut sink: impl FnMut(u32)) {
        let spec = self.spec().clone();
        let w = self.register.width();
        let mut reg = self.register.clone();
        let mut out = [0u32; 32];
        let out = &mut out[..w];
        let q = spec.q() as u64;
        for _ in 0..count {
            self.assembly.output_into(&spec, reg.state(), w, out);
            let idx = out.iter().rev().fold(0u64, |acc, &e| acc * q + e as u64) as u32;
            sink(idx);
            reg.advance();
        }
    }

    pub(crate) fn with_register(&self, register: Register) -> NlfgGenerator {
        NlfgGenerator { register, assembly: self.assembly.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct FullPeriodOutput {
    generator: NlfgGenerator,
    remaining: u64,
}

impl Iterator for FullPeriodOutput {
    type Item = WordVector;

    fn next(&mut self) -> Option<WordVector> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.generator.step())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Generator config file: `{register, pairs, mode}`. `pairs` may be
/// replaced by `m` to use the default pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorJson {
    pub register: RegisterJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default = "default_mode")]
    pub mode: ProductMode,
}

fn default_mode() -> ProductMode {
    ProductMode::FieldProduct
}

impl GeneratorJson {
    pub fn build(&self) -> Result<NlfgGenerator> {
        let register = self.register.build()?;
        let l = register.len();
        let assembly = match (&self.pairs, self.m) {
            (Some(pairs), m) => {
                if m.is_some_and(|m| m != pairs.len()) {
                    return spec_err("m disagrees with the number of pairs");
                }
                TapAssembly::new(pairs.iter().map(|p| (p[0], p[1])).collect(), self.mode, l)?
            }
            (None, Some(m)) => TapAssembly::with_default_pairs(m, self.mode, l)?,
            (None, None) => return spec_err("give either pairs or m"),
        };
        NlfgGenerator::new(register, assembly)
    }

    pub fn from_generator(generator: &NlfgGenerator) -> Self {
        GeneratorJson {
            register: RegisterJson::from_register(&generator.register),
            pairs: Some(generator.assembly.pairs.iter().map(|&(i, j)| [i, j]).collect()),
            m: None,
            mode: generator.assembly.mode,
        }
    }
}

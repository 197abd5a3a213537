//! Scalar LFSRs over GF(q), word-based σ-LFSRs over GF(q)^r, and full-period
//! iteration over their nonzero states.

mod lfsr;
mod sigma;

use serde::{Deserialize, Serialize};

pub use lfsr::LfsrConfig;
pub use sigma::{construct_sigma, regular_representation, SigmaLfsrConfig, TransitionMatrix, MAX_CHAR_POLY_DIM};

use crate::error::{spec_err, Error, Result};
use crate::gf::{default_primitive, is_primitive, FieldElement, FieldSpec, FieldSpecJson, Matrix, Poly, WordVector};

/// Either register kind, viewed through its stacked state of rL GF(q)
/// symbols (r = 1 for the scalar kind).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Register {
    Scalar(LfsrConfig),
    Sigma(SigmaLfsrConfig),
}

impl Register {
    /// Primitive register of length `l` from the default polynomials: a
    /// scalar LFSR when r = 1, otherwise [`construct_sigma`].
    pub fn default_primitive(spec: &FieldSpec, l: usize) -> Result<Self> {
        if l == 0 {
            return spec_err("register length L must be at least 1");
        }
        if spec.r() == 1 {
            let poly = default_primitive(spec.base(), l)?;
            Ok(Register::Scalar(LfsrConfig::from_char_poly(spec.clone(), &poly)?))
        } else {
            let g = default_primitive(spec.word_field(), l)?;
            Ok(Register::Sigma(construct_sigma(spec, &g)?))
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        match self {
            Register::Scalar(c) => c.spec(),
            Register::Sigma(c) => c.spec(),
        }
    }

    /// Number of delay blocks L.
    pub fn len(&self) -> usize {
        match self {
            Register::Scalar(c) => c.len(),
            Register::Sigma(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Symbols per delay block: 1 for a scalar LFSR, r for a σ-LFSR.
    pub fn width(&self) -> usize {
        match self {
            Register::Scalar(_) => 1,
            Register::Sigma(c) => c.spec().r(),
        }
    }

    pub fn state(&self) -> &[u32] {
        match self {
            Register::Scalar(c) => c.state(),
            Register::Sigma(c) => c.state(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.state().iter().all(|&s| s == 0)
    }

    pub fn with_state(self, state: &[u32]) -> Result<Self> {
        Ok(match self {
            Register::Scalar(c) => Register::Scalar(c.with_state(state)?),
            Register::Sigma(c) => Register::Sigma(c.with_state(state)?),
        })
    }

    #[inline]
    pub fn advance(&mut self) {
        match self {
            Register::Scalar(c) => c.advance(),
            Register::Sigma(c) => c.advance(),
        }
    }

    /// Emits block 0 and advances.
    pub fn step(&mut self) -> WordVector {
        match self {
            Register::Scalar(c) => WordVector(vec![c.step().0]),
            Register::Sigma(c) => c.step(),
        }
    }

    pub(crate) fn set_state_unchecked(&mut self, state: &[u32]) {
        match self {
            Register::Scalar(c) => c.set_state_unchecked(state),
            Register::Sigma(c) => c.set_state_unchecked(state),
        }
    }

    pub fn transition_matrix(&self) -> TransitionMatrix {
        match self {
            Register::Scalar(c) => SigmaLfsrConfig::from(c).transition_matrix(),
            Register::Sigma(c) => c.transition_matrix(),
        }
    }

    pub fn char_poly(&self) -> Result<Poly> {
        match self {
            Register::Scalar(c) => Ok(c.char_poly()),
            Register::Sigma(c) => c.char_poly(),
        }
    }

    /// Number of nonzero states, `q^(rL) - 1`, if it fits in 64 bits.
    pub fn period_len(&self) -> Result<u64> {
        let q = self.spec().q() as u64;
        let n = (self.width() * self.len()) as u32;
        q.checked_pow(n).map(|t| t - 1).ok_or_else(|| Error::TooLarge {
            what: format!("state space {q}^{n}"),
            bound: "64-bit".into(),
        })
    }

    /// Fails unless the characteristic polynomial is primitive, which is
    /// what makes one period visit every nonzero state exactly once.
    pub fn audit_primitive(&self) -> Result<()> {
        let cp = self.char_poly()?;
        if is_primitive(&cp, self.spec().base())? {
            Ok(())
        } else {
            Err(Error::NotPrimitive { poly: cp.to_string(), order: self.spec().q() as u64 })
        }
    }

    /// Checks the preconditions of a full-period run (nonzero seed,
    /// primitive characteristic polynomial) and returns the period length.
    pub fn check_full_period(&self) -> Result<u64> {
        if self.is_zero() {
            return spec_err("the zero state is a fixed point; seed with a nonzero state");
        }
        self.audit_primitive()?;
        self.period_len()
    }

    /// The q^(rL) - 1 states of one period, starting at the current state.
    pub fn full_period_states(&self) -> Result<FullPeriodStates> {
        let remaining = self.check_full_period()?;
        Ok(FullPeriodStates { register: self.clone(), remaining })
    }

    /// Splits one period into `parts` contiguous runs, each starting at
    /// `A^(k·chunk) · seed`. Returns `(start register, run length)` pairs.
    pub fn period_chunks(&self, parts: usize) -> Result<Vec<(Register, u64)>> {
        let total = self.period_len()?;
        let parts = (parts.max(1) as u64).min(total) as usize;
        let chunk = total.div_ceil(parts as u64);
        let a = self.transition_matrix().0;
        let field = self.spec().base().clone();
        let jump = a.pow(&field, chunk);
        let mut out = Vec::with_capacity(parts);
        let mut reg = self.clone();
        let mut start = 0u64;
        while start < total {
            let len = chunk.min(total - start);
            out.push((reg.clone(), len));
            let next = jump.mul_vec(&field, reg.state());
            reg.set_state_unchecked(&next);
            start += len;
        }
        Ok(out)
    }
}

/// Iterator over the states of one full period. Construct through
/// [`Register::full_period_states`].
#[derive(Clone, Debug)]
pub struct FullPeriodStates {
    register: Register,
    remaining: u64,
}

impl Iterator for FullPeriodStates {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let s = self.register.state().to_vec();
        self.register.advance();
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Register config file: `{spec, L, taps | gains | feedback_poly, seed}`.
///
/// `gains` are row-major r x r matrices. `feedback_poly` is a primitive
/// characteristic polynomial over GF(q) (r = 1) or over GF(q^r)
/// (σ-LFSR built from it). With none of the three, the default primitive
/// register is used. `seed` is the stacked state, default `(1, 0, ..., 0)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RegisterJson {
    pub spec: FieldSpecJson,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taps: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gains: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feedback_poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<Vec<u32>>,
}

impl RegisterJson {
    pub fn build(&self) -> Result<Register> {
        let spec = FieldSpec::try_from(self.spec.clone())?;
        let r = spec.r();
        let given = [self.taps.is_some(), self.gains.is_some(), self.feedback_poly.is_some()];
        if given.iter().filter(|&&g| g).count() > 1 {
            return spec_err("give at most one of taps, gains, feedback_poly");
        }
        let mut reg = if let Some(taps) = &self.taps {
            if taps.len() != self.l {
                return spec_err(format!("{} taps for L = {}", taps.len(), self.l));
            }
            let mut seed = vec![FieldElement(0); self.l];
            if let Some(s) = seed.first_mut() {
                *s = FieldElement(1);
            }
            Register::Scalar(LfsrConfig::new(spec, taps.iter().map(|&t| FieldElement(t)).collect(), seed)?)
        } else if let Some(gains) = &self.gains {
            if gains.len() != self.l {
                return spec_err(format!("{} gain matrices for L = {}", gains.len(), self.l));
            }
            let gains = gains
                .iter()
                .map(|g| Matrix::from_row_major(r, r, g.clone()))
                .collect::<Result<Vec<_>>>()?;
            let mut state = vec![WordVector(vec![0; r]); self.l];
            if let Some(w) = state.first_mut() {
                w.0[0] = 1;
            }
            Register::Sigma(SigmaLfsrConfig::new(spec, gains, state)?)
        } else if let Some(text) = &self.feedback_poly {
            let poly: Poly = text.parse()?;
            if poly.degree() != Some(self.l) {
                return spec_err(format!("feedback_poly {poly} does not have degree L = {}", self.l));
            }
            if r == 1 {
                Register::Scalar(LfsrConfig::from_char_poly(spec, &poly)?)
            } else {
                Register::Sigma(construct_sigma(&spec, &poly)?)
            }
        } else {
            Register::default_primitive(&spec, self.l)?
        };
        if let Some(seed) = &self.seed {
            reg = reg.with_state(seed)?;
        }
        Ok(reg)
    }

    /// Explicit form of a register: taps or gains plus the current state.
    pub fn from_register(reg: &Register) -> Self {
        let spec = FieldSpecJson::from(reg.spec().clone());
        let (taps, gains) = match reg {
            Register::Scalar(c) => (Some(c.taps().to_vec()), None),
            Register::Sigma(c) => (None, Some(c.gains().iter().map(|g| g.row_major().to_vec()).collect())),
        };
        RegisterJson { spec, l: reg.len(), taps, gains, feedback_poly: None, seed: Some(reg.state().to_vec()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn scalar(p: u32, l: usize) -> Register {
        Register::default_primitive(&FieldSpec::with_defaults(p, 1, 1).unwrap(), l).unwrap()
    }

    fn check_full_period(reg: &Register, expected: u64) {
        let states: Vec<Vec<u32>> = reg.full_period_states().unwrap().collect();
        assert_eq!(states.len() as u64, expected);
        let distinct: HashSet<_> = states.iter().collect();
        assert_eq!(distinct.len() as u64, expected);
        assert!(states.iter().all(|s| s.iter().any(|&e| e != 0)));
        // and the cycle closes
        let mut r = reg.clone();
        for _ in 0..expected {
            r.advance();
        }
        assert_eq!(r.state(), reg.state());
    }

    #[test]
    fn full_periods_scalar() {
        check_full_period(&scalar(2, 5), 31);
        check_full_period(&scalar(3, 2), 8);
    }

    #[test]
    fn full_period_sigma_q2_r3_l5() {
        let spec = FieldSpec::with_defaults(2, 1, 3).unwrap();
        let reg = Register::default_primitive(&spec, 5).unwrap();
        assert!(matches!(reg, Register::Sigma(_)));
        check_full_period(&reg, 32767);
    }

    #[test]
    fn zero_seed_and_non_primitive_rejected() {
        let reg = scalar(2, 5);
        let zero = reg.clone().with_state(&[0; 5]).unwrap();
        assert!(zero.full_period_states().is_err());
        let spec = FieldSpec::with_defaults(2, 1, 1).unwrap();
        let bad = Register::Scalar(LfsrConfig::from_char_poly(spec, &"x^4+x^3+x^2+x+1".parse().unwrap()).unwrap());
        assert!(matches!(bad.full_period_states(), Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn stepping_matches_transition_matrix() {
        let spec = FieldSpec::with_defaults(3, 1, 2).unwrap();
        let mut reg = Register::default_primitive(&spec, 3).unwrap();
        let a = reg.transition_matrix().0;
        reg = reg.with_state(&[2, 1, 0, 1, 1, 2]).unwrap();
        for _ in 0..100 {
            let expected = a.mul_vec(spec.base(), reg.state());
            reg.advance();
            assert_eq!(reg.state(), expected.as_slice());
        }
    }

    #[test]
    fn chunks_tile_the_period() {
        let spec = FieldSpec::with_defaults(2, 1, 2).unwrap();
        let reg = Register::default_primitive(&spec, 3).unwrap();
        let all: Vec<Vec<u32>> = reg.full_period_states().unwrap().collect();
        for parts in [1, 2, 3, 7, 63, 100] {
            let mut tiled = Vec::new();
            for (start, len) in reg.period_chunks(parts).unwrap() {
                let mut r = start;
                for _ in 0..len {
                    tiled.push(r.state().to_vec());
                    r.advance();
                }
            }
            assert_eq!(tiled, all, "parts = {parts}");
        }
    }

    #[test]
    fn json_config_round_trip() {
        let text = r#"{"spec":{"p":2,"r":3,"outer_poly":"x^3+x+1"},"L":5}"#;
        let cfg: RegisterJson = serde_json::from_str(text).unwrap();
        let reg = cfg.build().unwrap();
        let explicit = RegisterJson::from_register(&reg);
        let again = serde_json::from_str::<RegisterJson>(&serde_json::to_string(&explicit).unwrap())
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(again, reg);
        let scalar: RegisterJson =
            serde_json::from_str(r#"{"spec":{"p":2},"L":5,"taps":[1,0,1,0,0],"seed":[0,0,0,0,1]}"#).unwrap();
        let reg = scalar.build().unwrap();
        assert_eq!(reg.char_poly().unwrap(), "x^5+x^2+1".parse().unwrap());
        assert_eq!(reg.state(), &[0, 0, 0, 0, 1]);
        let both: RegisterJson =
            serde_json::from_str(r#"{"spec":{"p":2},"L":1,"taps":[1],"feedback_poly":"x+1"}"#).unwrap();
        assert!(both.build().is_err());
    }
}

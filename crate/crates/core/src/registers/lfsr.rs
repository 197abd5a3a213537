use crate::error::{spec_err, Result};
use crate::gf::{FieldElement, FieldSpec, Poly};

/// Scalar LFSR over GF(q): `s[j+L] = a0 s[j] + ... + a(L-1) s[j+L-1]`.
///
/// `state[0]` is the oldest symbol and the one emitted next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrConfig {
    spec: FieldSpec,
    taps: Vec<u32>,
    state: Vec<u32>,
}

impl LfsrConfig {
    pub fn new(spec: FieldSpec, taps: Vec<FieldElement>, state: Vec<FieldElement>) -> Result<Self> {
        if spec.r() != 1 {
            return spec_err(format!("a scalar LFSR needs r = 1, got r = {}", spec.r()));
        }
        if taps.is_empty() {
            return spec_err("an LFSR needs at least one delay block");
        }
        if taps.len() != state.len() {
            return spec_err(format!("{} taps but {} state symbols", taps.len(), state.len()));
        }
        let q = spec.q();
        if let Some(e) = taps.iter().chain(&state).find(|e| e.0 >= q) {
            return spec_err(format!("{} is not an element of GF({q})", e.0));
        }
        if taps[0].0 == 0 {
            return spec_err("tap a0 must be nonzero");
        }
        Ok(LfsrConfig {
            spec,
            taps: taps.into_iter().map(|e| e.0).collect(),
            state: state.into_iter().map(|e| e.0).collect(),
        })
    }

    /// Taps read off a monic characteristic polynomial
    /// `x^L - a(L-1) x^(L-1) - ... - a0`, seeded with `(1, 0, ..., 0)`.
    pub fn from_char_poly(spec: FieldSpec, poly: &Poly) -> Result<Self> {
        poly.check_in(spec.base())?;
        let l = match poly.degree() {
            Some(l) if l >= 1 && poly.is_monic() => l,
            _ => return spec_err(format!("{poly} is not monic of degree >= 1")),
        };
        let base = spec.base();
        let taps = (0..l).map(|i| FieldElement(base.neg(poly.coeff(i)))).collect();
        let mut seed = vec![FieldElement(0); l];
        seed[0] = FieldElement(1);
        LfsrConfig::new(spec, taps, seed)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn taps(&self) -> &[u32] {
        &self.taps
    }

    pub fn state(&self) -> &[u32] {
        &self.state
    }

    pub fn with_state(mut self, state: &[u32]) -> Result<Self> {
        if state.len() != self.len() || state.iter().any(|&e| e >= self.spec.q()) {
            return spec_err("seed does not match the register");
        }
        self.state.copy_from_slice(state);
        Ok(self)
    }

    /// `x^L - sum a_i x^i`
    pub fn char_poly(&self) -> Poly {
        let base = self.spec.base();
        let mut c: Vec<u32> = self.taps.iter().map(|&a| base.neg(a)).collect();
        c.push(1);
        Poly::new(c)
    }

    /// Emits the oldest symbol and shifts in the feedback.
    pub fn step(&mut self) -> FieldElement {
        let out = self.state[0];
        self.advance();
        FieldElement(out)
    }

    pub fn stepped(&self) -> (FieldElement, LfsrConfig) {
        let mut next = self.clone();
        let out = next.step();
        (out, next)
    }

    #[inline]
    pub(crate) fn advance(&mut self) {
        let f = self.spec.base();
        let fb = self
            .taps
            .iter()
            .zip(&self.state)
            .fold(0, |acc, (&a, &s)| f.add(acc, f.mul(a, s)));
        self.state.copy_within(1.., 0);
        let last = self.state.len() - 1;
        self.state[last] = fb;
    }

    pub(crate) fn set_state_unchecked(&mut self, state: &[u32]) {
        self.state.copy_from_slice(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(p: u32, poly: &str) -> LfsrConfig {
        let spec = FieldSpec::with_defaults(p, 1, 1).unwrap();
        LfsrConfig::from_char_poly(spec, &poly.parse().unwrap()).unwrap()
    }

    fn period(mut reg: LfsrConfig) -> usize {
        let seed = reg.state().to_vec();
        for k in 1..100_000 {
            reg.step();
            if reg.state() == seed.as_slice() {
                return k;
            }
        }
        panic!("no cycle");
    }

    #[test]
    fn gf2_degree5_period_31() {
        let reg = scalar(2, "x^5+x^2+1");
        assert_eq!(reg.taps(), &[1, 0, 1, 0, 0]);
        assert_eq!(period(reg), 31);
    }

    #[test]
    fn gf3_degree2_period_8() {
        assert_eq!(period(scalar(3, "x^2+x+2")), 8);
    }

    #[test]
    fn zero_state_stays_zero() {
        let mut reg = scalar(2, "x^5+x^2+1").with_state(&[0; 5]).unwrap();
        for _ in 0..50 {
            assert_eq!(reg.step(), FieldElement(0));
        }
    }

    #[test]
    fn output_obeys_recurrence() {
        let mut reg = scalar(3, "x^3+2x+1");
        let seq: Vec<u32> = (0..40).map(|_| reg.step().0).collect();
        let a = reg.taps().to_vec();
        for j in 0..seq.len() - 3 {
            let s = (a[0] * seq[j] + a[1] * seq[j + 1] + a[2] * seq[j + 2]) % 3;
            assert_eq!(seq[j + 3], s);
        }
    }

    #[test]
    fn char_poly_round_trips() {
        let reg = scalar(5, "x^3+3x+2");
        assert_eq!(reg.char_poly(), "x^3+3x+2".parse().unwrap());
    }

    #[test]
    fn validation() {
        let spec = FieldSpec::with_defaults(2, 1, 1).unwrap();
        let e = |v: u32| FieldElement(v);
        assert!(LfsrConfig::new(spec.clone(), vec![e(0), e(1)], vec![e(1), e(0)]).is_err());
        assert!(LfsrConfig::new(spec.clone(), vec![e(1)], vec![e(1), e(0)]).is_err());
        assert!(LfsrConfig::new(spec.clone(), vec![e(2)], vec![e(1)]).is_err());
        assert!(LfsrConfig::new(spec, vec![], vec![]).is_err());
        let wide = FieldSpec::with_defaults(2, 1, 2).unwrap();
        assert!(LfsrConfig::new(wide, vec![e(1)], vec![e(1)]).is_err());
    }
}

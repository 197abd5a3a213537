use crate::error::{spec_err, Error, Result};
use crate::gf::{is_primitive, FieldSpec, Matrix, Poly, WordVector};
use crate::registers::LfsrConfig;

/// Word-based LFSR over GF(q)^r with r x r feedback gains:
/// `s[j+L] = B0 s[j] + B1 s[j+1] + ... + B(L-1) s[j+L-1]`.
///
/// The state is stored stacked, block 0 first; block 0 is the next output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLfsrConfig {
    spec: FieldSpec,
    gains: Vec<Matrix>,
    /// `[B0 B1 ... B(L-1)]`, r x rL.
    feedback: Matrix,
    state: Vec<u32>,
}

/// Block companion matrix of a σ-LFSR: identity blocks on the block
/// superdiagonal and the gains in the last block row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix(pub Matrix);

impl TransitionMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

impl SigmaLfsrConfig {
    pub fn new(spec: FieldSpec, gains: Vec<Matrix>, state: Vec<WordVector>) -> Result<Self> {
        let r = spec.r();
        if gains.is_empty() {
            return spec_err("a σ-LFSR needs at least one delay block");
        }
        if gains.len() != state.len() {
            return spec_err(format!("{} gain matrices but {} state words", gains.len(), state.len()));
        }
        for (i, b) in gains.iter().enumerate() {
            if b.rows() != r || b.cols() != r {
                return spec_err(format!("gain B{i} is {}x{}, expected {r}x{r}", b.rows(), b.cols()));
            }
            b.check_in(spec.base())?;
        }
        if !gains[0].is_invertible(spec.base()) {
            return spec_err("gain B0 must be invertible");
        }
        let mut flat = Vec::with_capacity(r * state.len());
        for w in &state {
            spec.check_word(w)?;
            flat.extend_from_slice(w.entries());
        }
        let l = gains.len();
        let mut feedback = Matrix::zeros(r, r * l);
        for (i, b) in gains.iter().enumerate() {
            for row in 0..r {
                for col in 0..r {
                    feedback.set(row, i * r + col, b.get(row, col));
                }
            }
        }
        Ok(SigmaLfsrConfig { spec, gains, feedback, state: flat })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Number of delay blocks L.
    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }

    pub fn gains(&self) -> &[Matrix] {
        &self.gains
    }

    /// Stacked state, length rL.
    pub fn state(&self) -> &[u32] {
        &self.state
    }

    pub fn block(&self, i: usize) -> WordVector {
        let r = self.spec.r();
        WordVector(self.state[i * r..(i + 1) * r].to_vec())
    }

    pub fn with_state(mut self, state: &[u32]) -> Result<Self> {
        if state.len() != self.state.len() || state.iter().any(|&e| e >= self.spec.q()) {
            return spec_err("seed does not match the register");
        }
        self.state.copy_from_slice(state);
        Ok(self)
    }

    pub fn step(&mut self) -> WordVector {
        let out = self.block(0);
        self.advance();
        out
    }

    pub fn stepped(&self) -> (WordVector, SigmaLfsrConfig) {
        let mut next = self.clone();
        let out = next.step();
        (out, next)
    }

    #[inline]
    pub(crate) fn advance(&mut self) {
        let r = self.spec.r();
        let mut fresh = [0u32; 32];
        let fresh = &mut fresh[..r];
        self.feedback.mul_vec_into(self.spec.base(), &self.state, fresh);
        self.state.copy_within(r.., 0);
        let n = self.state.len();
        self.state[n - r..].copy_from_slice(fresh);
    }

    pub(crate) fn set_state_unchecked(&mut self, state: &[u32]) {
        self.state.copy_from_slice(state);
    }

    pub fn transition_matrix(&self) -> TransitionMatrix {
        let r = self.spec.r();
        let n = r * self.len();
        let mut a = Matrix::zeros(n, n);
        for i in 0..n - r {
            a.set(i, i + r, 1);
        }
        for row in 0..r {
            for col in 0..n {
                a.set(n - r + row, col, self.feedback.get(row, col));
            }
        }
        TransitionMatrix(a)
    }

    /// Characteristic polynomial of the transition matrix, over GF(q).
    pub fn char_poly(&self) -> Result<Poly> {
        let n = self.state.len();
        if n > MAX_CHAR_POLY_DIM {
            return Err(Error::TooLarge {
                what: format!("transition matrix of size {n}"),
                bound: format!("{MAX_CHAR_POLY_DIM}"),
            });
        }
        Ok(self.transition_matrix().0.char_poly(self.spec.base()))
    }
}

/// Largest rL for which characteristic polynomials are computed.
pub const MAX_CHAR_POLY_DIM: usize = 64;

impl From<&LfsrConfig> for SigmaLfsrConfig {
    /// 1 x 1 gains carrying the scalar taps.
    fn from(lfsr: &LfsrConfig) -> Self {
        let gains = lfsr
            .taps()
            .iter()
            .map(|&a| Matrix::from_row_major(1, 1, vec![a]).expect("1x1"))
            .collect();
        let state = lfsr.state().iter().map(|&s| WordVector(vec![s])).collect();
        SigmaLfsrConfig::new(lfsr.spec().clone(), gains, state).expect("a valid LFSR is a valid σ-LFSR")
    }
}

/// Matrix of `v -> M(a · M⁻¹(v))` on GF(q)^r, column j being the
/// coordinates of `a · x^j`.
pub fn regular_representation(spec: &FieldSpec, a: u32) -> Matrix {
    let r = spec.r();
    let word = spec.word_field();
    let q = spec.q();
    let mut m = Matrix::zeros(r, r);
    let mut xj = 1u32;
    for j in 0..r {
        let col = spec.word_from_index(word.mul(a, xj));
        for (i, &c) in col.entries().iter().enumerate() {
            m.set(i, j, c);
        }
        xj = xj.wrapping_mul(q);
    }
    m
}

/// A σ-LFSR whose feedback, read over GF(q^r), is the recurrence with
/// characteristic polynomial `g`.
///
/// `g` is a monic polynomial of degree L over GF(q^r) (coefficients are
/// [`FieldSpec::word_field`] indices) and must be primitive. Each
/// feedback coefficient `-g_i` becomes its regular representation, so the
/// transition acts as multiplication by a root of `g` and the resulting
/// characteristic polynomial over GF(q) is primitive of degree rL.
pub fn construct_sigma(spec: &FieldSpec, g: &Poly) -> Result<SigmaLfsrConfig> {
    let word = spec.word_field();
    let l = match g.degree() {
        Some(l) if l >= 1 => l,
        _ => return spec_err(format!("{g} has degree < 1")),
    };
    if !is_primitive(g, word)? {
        return Err(Error::NotPrimitive { poly: g.to_string(), order: word.order() as u64 });
    }
    let gains = (0..l)
        .map(|i| regular_representation(spec, word.neg(g.coeff(i))))
        .collect();
    let r = spec.r();
    let mut state = vec![WordVector(vec![0; r]); l];
    state[0].0[0] = 1;
    SigmaLfsrConfig::new(spec.clone(), gains, state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{find_primitive, FieldElement};

    fn gf8() -> FieldSpec {
        FieldSpec::new(2, "x+1".parse().unwrap(), "x^3+x+1".parse().unwrap()).unwrap()
    }

    #[test]
    fn regular_representation_is_multiplication() {
        let spec = gf8();
        for a in 0..8 {
            let m = regular_representation(&spec, a);
            for b in 0..8 {
                let v = spec.word_from_index(b);
                let got = m.mul_vec(spec.base(), v.entries());
                assert_eq!(spec.word_index(&got), spec.word_field().mul(a, b));
            }
        }
    }

    #[test]
    fn scalar_embedding_tracks_lfsr() {
        let spec = FieldSpec::with_defaults(3, 1, 1).unwrap();
        let mut lfsr = LfsrConfig::from_char_poly(spec, &"x^3+2x+1".parse().unwrap()).unwrap();
        let mut sigma = SigmaLfsrConfig::from(&lfsr);
        for _ in 0..60 {
            assert_eq!(sigma.step(), WordVector(vec![lfsr.step().0]));
        }
        assert_eq!(sigma.char_poly().unwrap(), lfsr.char_poly());
    }

    #[test]
    fn companion_layout_scalar() {
        let spec = FieldSpec::with_defaults(5, 1, 1).unwrap();
        let lfsr = LfsrConfig::new(spec, vec![FieldElement(3), FieldElement(4)], vec![FieldElement(1), FieldElement(0)]).unwrap();
        let a = SigmaLfsrConfig::from(&lfsr).transition_matrix();
        assert_eq!(a.0, Matrix::from_rows(&[vec![0, 1], vec![3, 4]]).unwrap());
        let one = LfsrConfig::new(FieldSpec::with_defaults(2, 1, 1).unwrap(), vec![FieldElement(1)], vec![FieldElement(1)]).unwrap();
        let sigma = SigmaLfsrConfig::from(&one);
        assert_eq!(sigma.transition_matrix().0, Matrix::identity(1));
        assert_eq!(sigma.char_poly().unwrap(), Poly::new(vec![1, 1]));
    }

    #[test]
    fn block_layout_r2_l2() {
        let spec = FieldSpec::with_defaults(3, 1, 2).unwrap();
        let b0 = Matrix::from_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        let b1 = Matrix::from_rows(&[vec![2, 0], vec![1, 1]]).unwrap();
        let cfg = SigmaLfsrConfig::new(
            spec,
            vec![b0.clone(), b1.clone()],
            vec![WordVector(vec![1, 0]), WordVector(vec![0, 0])],
        )
        .unwrap();
        let a = cfg.transition_matrix().0;
        assert_eq!((a.rows(), a.cols()), (4, 4));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a.get(i, j), 0);
                assert_eq!(a.get(i, 2 + j), u32::from(i == j));
                assert_eq!(a.get(2 + i, j), b0.get(i, j));
                assert_eq!(a.get(2 + i, 2 + j), b1.get(i, j));
            }
        }
    }

    #[test]
    fn singular_b0_rejected() {
        let spec = FieldSpec::with_defaults(2, 1, 2).unwrap();
        let b0 = Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(SigmaLfsrConfig::new(spec, vec![b0], vec![WordVector(vec![1, 0])]).is_err());
    }

    #[test]
    fn construct_sigma_gf4_l2_has_primitive_char_poly() {
        let spec = FieldSpec::with_defaults(2, 1, 2).unwrap();
        let g = find_primitive(spec.word_field(), 2).unwrap();
        let cfg = construct_sigma(&spec, &g).unwrap();
        let cp = cfg.char_poly().unwrap();
        assert_eq!(cp.degree(), Some(4));
        assert!(is_primitive(&cp, spec.base()).unwrap());
    }

    #[test]
    fn construct_sigma_rejects_non_primitive() {
        let spec = gf8();
        // x^2 + 1 = (x + 1)^2 over any field of characteristic 2
        let g = Poly::new(vec![1, 0, 1]);
        assert!(matches!(construct_sigma(&spec, &g), Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn construct_sigma_r1_reproduces_scalar_lfsr() {
        let spec = FieldSpec::with_defaults(3, 1, 1).unwrap();
        let g: Poly = "x^2+x+2".parse().unwrap();
        let mut sigma = construct_sigma(&spec, &g).unwrap();
        let mut lfsr = LfsrConfig::from_char_poly(spec, &g).unwrap();
        for (b, &a) in sigma.gains().iter().zip(lfsr.taps()) {
            assert_eq!(b.row_major(), &[a]);
        }
        for _ in 0..20 {
            assert_eq!(sigma.step().entries(), &[lfsr.step().0]);
        }
    }
}

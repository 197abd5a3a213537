use serde::{Serialize, Serializer};

use super::report::{Report, Table};
use crate::error::{spec_err, Error, Result};
use crate::gf::{FiniteField, Poly};

fn display<S: Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Shortest LFSR generating a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcReport {
    pub linear_complexity: usize,
    /// `x^LC · C(1/x)`, monic; the characteristic polynomial of the LFSR.
    #[serde(serialize_with = "display")]
    pub minimal_poly: Poly,
    /// `C(x) = 1 + c1 x + ... + c_LC x^LC`.
    #[serde(serialize_with = "display")]
    pub connection_poly: Poly,
    pub length: usize,
    /// The connection polynomial did not change over the second half of
    /// the sequence. Otherwise `linear_complexity` is only a lower bound.
    pub certified: bool,
}

/// Berlekamp–Massey over `field`. The resulting LFSR is re-run over the
/// input and must reproduce it.
pub fn berlekamp_massey(seq: &[u32], field: &FiniteField) -> Result<LcReport> {
    if seq.is_empty() {
        return spec_err("Berlekamp-Massey needs a nonempty sequence");
    }
    if let Some(&e) = seq.iter().find(|&&e| !field.contains(e)) {
        return spec_err(format!("{e} is not an element of GF({})", field.order()));
    }
    let n = seq.len();
    let mut c = vec![0u32; n + 1];
    let mut b = vec![0u32; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut lc = 0usize;
    let mut shift = 1usize;
    let mut last_b = 1u32;
    let mut last_change = None;
    for i in 0..n {
        let d = (1..=lc).fold(seq[i], |acc, j| field.add(acc, field.mul(c[j], seq[i - j])));
        if d == 0 {
            shift += 1;
            continue;
        }
        last_change = Some(i);
        let coef = field.div(d, last_b);
        let prev = c.clone();
        for j in 0..=n - shift {
            c[j + shift] = field.sub(c[j + shift], field.mul(coef, b[j]));
        }
        if 2 * lc <= i {
            lc = i + 1 - lc;
            b = prev;
            last_b = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(lc + 1);
    // C(0) = 1, so the reciprocal is monic of degree LC.
    let minimal: Vec<u32> = c.iter().rev().copied().collect();
    let report = LcReport {
        linear_complexity: lc,
        minimal_poly: Poly::new(minimal),
        connection_poly: Poly::new(c.clone()),
        length: n,
        certified: last_change.is_none_or(|i| i < n / 2),
    };
    for i in lc..n {
        let s = (1..=lc).fold(0, |acc, j| field.sub(acc, field.mul(c[j], seq[i - j])));
        if s != seq[i] {
            return Err(Error::Internal(format!("Berlekamp-Massey LFSR diverges at symbol {i}")));
        }
    }
    Ok(report)
}

impl Report for LcReport {
    fn to_text(&self) -> String {
        let mut t = Table::new(&["field", "value"]);
        t.push(vec!["linear_complexity".into(), self.linear_complexity.to_string()]);
        t.push(vec!["minimal_poly".into(), self.minimal_poly.to_string()]);
        t.push(vec!["connection_poly".into(), self.connection_poly.to_string()]);
        t.push(vec!["length".into(), self.length.to_string()]);
        t.push(vec!["certified".into(), self.certified.to_string()]);
        t.aligned()
    }

    fn to_csv(&self) -> String {
        let mut t = Table::new(&["linear_complexity", "minimal_poly", "connection_poly", "length", "certified"]);
        t.push(vec![
            self.linear_complexity.to_string(),
            self.minimal_poly.to_string(),
            self.connection_poly.to_string(),
            self.length.to_string(),
            self.certified.to_string(),
        ]);
        t.csv()
    }
}

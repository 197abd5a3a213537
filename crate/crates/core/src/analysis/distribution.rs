use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{spec_err, Error, Result};
use crate::gf::{FieldSpec, WordVector};
use crate::nlfg::{NlfgGenerator, ProductMode};

/// Largest state space `q^(rL)` a full-period run accepts by default.
pub const DEFAULT_MAX_STATES: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureOptions {
    pub max_states: u64,
    /// Worker threads; the period is split into this many contiguous runs.
    pub threads: usize,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions { max_states: DEFAULT_MAX_STATES, threads: 1 }
    }
}

/// Output counts of one full period, indexed by value, plus the run's
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    spec: FieldSpec,
    l: usize,
    m: usize,
    mode: ProductMode,
    period: u64,
    counts: Vec<u64>,
}

impl DistributionTable {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    /// Total symbols counted.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn count(&self, v: &WordVector) -> u64 {
        self.counts[self.spec.word_index(v.entries()) as usize]
    }

    /// `(value, count)` for every value of GF(q)^r, zero counts included.
    pub fn iter(&self) -> impl Iterator<Item = (WordVector, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (self.spec.word_from_index(i as u32), c))
    }

    /// `max_v |count(v)/period - q^(-r)|`, exactly.
    pub fn max_deviation(&self) -> BigRational {
        let period = BigInt::from(self.period);
        let ideal = BigRational::new(1.into(), BigInt::from(self.counts.len()));
        let (lo, hi) = (self.counts.iter().min(), self.counts.iter().max());
        [lo, hi]
            .into_iter()
            .flatten()
            .map(|&c| (BigRational::new(BigInt::from(c), period.clone()) - &ideal).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Counts every output of one full period of `gen`.
///
/// The register must be primitive and nonzero-seeded, and `q^(rL)` must
/// not exceed `opts.max_states`. With more than one thread the period is
/// cut at `A^(k·chunk)·seed` and the partial tables are summed in order.
pub fn measure_distribution(gen: &NlfgGenerator, opts: &MeasureOptions) -> Result<DistributionTable> {
    let reg = gen.register();
    let spec = gen.spec().clone();
    let period = match reg.period_len() {
        Ok(p) if p < opts.max_states => p,
        _ => {
            return Err(Error::TooLarge {
                what: format!(
                    "state space {}^{} of the register",
                    spec.q(),
                    reg.width() * reg.len()
                ),
                bound: format!("max states {}", opts.max_states),
            })
        }
    };
    reg.check_full_period()?;
    let size = spec.word_order() as usize;
    let counts = if opts.threads <= 1 {
        let mut counts = vec![0u64; size];
        gen.for_each_output_index(period, |i| counts[i as usize] += 1);
        counts
    } else {
        let chunks = reg.period_chunks(opts.threads)?;
        let partials: Vec<Vec<u64>> = std::thread::scope(|s| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|(start, len)| {
                    let g = gen.with_register(start);
                    s.spawn(move || {
                        let mut counts = vec![0u64; size];
                        g.for_each_output_index(len, |i| counts[i as usize] += 1);
                        counts
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut counts = vec![0u64; size];
        for part in partials {
            for (c, p) in counts.iter_mut().zip(part) {
                *c += p;
            }
        }
        counts
    };
    debug_assert_eq!(counts.iter().sum::<u64>(), period);
    Ok(DistributionTable {
        spec,
        l: reg.len(),
        m: gen.assembly().m(),
        mode: gen.assembly().mode(),
        period,
        counts,
    })
}

#[derive(Serialize, Deserialize)]
struct ValueCount {
    value: WordVector,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    field: FieldSpec,
    #[serde(rename = "L")]
    l: usize,
    m: usize,
    mode: ProductMode,
    period: u64,
    counts: Vec<ValueCount>,
}

impl Serialize for DistributionTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionJson {
            field: self.spec.clone(),
            l: self.l,
            m: self.m,
            mode: self.mode,
            period: self.period,
            counts: self.iter().map(|(value, count)| ValueCount { value, count }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistributionTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DistributionJson::deserialize(d)?;
        DistributionTable::from_json(j).map_err(serde::de::Error::custom)
    }
}

impl DistributionTable {
    fn from_json(j: DistributionJson) -> Result<Self> {
        let spec = j.field;
        let mut counts = vec![0u64; spec.word_order() as usize];
        for vc in &j.counts {
            spec.check_word(&vc.value)?;
            counts[spec.word_index(vc.value.entries()) as usize] += vc.count;
        }
        if counts.iter().sum::<u64>() != j.period {
            return spec_err("counts do not sum to the period");
        }
        Ok(DistributionTable { spec, l: j.l, m: j.m, mode: j.mode, period: j.period, counts })
    }
}

/// `q^(rL) - 1` as a big integer.
pub(crate) fn full_period(q: u64, r: u32, l: u32) -> BigUint {
    num_traits::pow(BigUint::from(q), (r * l) as usize) - 1u32
}

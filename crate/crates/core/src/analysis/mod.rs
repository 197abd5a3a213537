//! Full-period output measurement, reconciliation against the closed
//! forms in [`crate::oracle`], linear complexity, and the field-product
//! versus element-wise comparison.

mod compare;
mod distribution;
mod lc;
mod reconcile;
mod report;

pub use compare::{compare_schemes, Comparison, KappaRow, SchemeSummary};
pub use distribution::{measure_distribution, DistributionTable, MeasureOptions, DEFAULT_MAX_STATES};
pub use lc::{berlekamp_massey, LcReport};
pub use reconcile::{reconcile, ClassReport, Reconciliation};
pub use report::{Format, Report};

use crate::error::{Error, Result};
use crate::nlfg::NlfgGenerator;
use crate::registers::Register;

/// Coordinate `j` of the output word of `register` over `len` steps.
pub fn component_sequence(register: &Register, j: usize, len: usize) -> Vec<u32> {
    let mut reg = register.clone();
    (0..len)
        .map(|_| {
            let s = reg.state()[j];
            reg.advance();
            s
        })
        .collect()
}

/// Least period of the output sequence over one register period. It
/// divides the register period; nothing more is claimed about it.
pub fn output_period(gen: &NlfgGenerator, opts: &MeasureOptions) -> Result<u64> {
    let period = gen.register().period_len()?;
    if period >= opts.max_states {
        return Err(Error::TooLarge {
            what: format!("output sequence of length {period}"),
            bound: format!("max states {}", opts.max_states),
        });
    }
    gen.register().check_full_period()?;
    let mut seq = Vec::with_capacity(period as usize);
    gen.for_each_output_index(period, |i| seq.push(i));
    let n = seq.len();
    Ok((1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| seq[i] == seq[i - d]))
        .unwrap_or(n) as u64)
}

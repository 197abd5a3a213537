use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::distribution::{measure_distribution, DistributionTable, MeasureOptions};
use super::reconcile::reconcile;
use super::report::{Report, Table};
use crate::error::{spec_err, Error, Result};
use crate::gf::factor::prime_power;
use crate::gf::FieldSpec;
use crate::nlfg::{NlfgGenerator, ProductMode, TapAssembly};
use crate::oracle::{class_size, n_elementwise_class, n_proposed, CountParams};
use crate::registers::Register;

fn display<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Counts for vectors of one weight κ under both products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaRow {
    pub kappa: u32,
    pub vectors: String,
    pub proposed_oracle: String,
    pub proposed_measured: String,
    pub elementwise_oracle: String,
    pub elementwise_measured: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeSummary {
    pub mode: ProductMode,
    /// `max_v |count(v)/(q^(rL)-1) - q^(-r)|` from the measured table.
    #[serde(serialize_with = "display")]
    pub max_deviation: BigRational,
    pub max_deviation_f64: f64,
    /// Largest minus smallest measured count over nonzero values.
    pub nonzero_spread: u64,
    pub reconciled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub params: CountParams,
    pub rows: Vec<KappaRow>,
    pub proposed: SchemeSummary,
    pub elementwise: SchemeSummary,
    /// Every nonzero value occurs equally often under the field product.
    pub proposed_nonzero_equal: bool,
    /// Element-wise counts strictly decrease with κ.
    pub elementwise_decreasing: bool,
    /// Element-wise spread minus proposed spread.
    pub spread_difference: i128,
}

fn min_max(table: &DistributionTable, kappa: usize) -> Option<(u64, u64)> {
    table
        .iter()
        .filter(|(v, _)| v.weight() == kappa)
        .map(|(_, c)| c)
        .fold(None, |acc, c| Some(acc.map_or((c, c), |(lo, hi): (u64, u64)| (lo.min(c), hi.max(c)))))
}

fn span((lo, hi): (u64, u64)) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

fn summary(table: &DistributionTable, params: &CountParams, mode: ProductMode) -> Result<SchemeSummary> {
    let rec = reconcile(table, params, mode)?;
    let nz = (1..=params.r as usize).filter_map(|k| min_max(table, k));
    let (lo, hi) = nz.fold((u64::MAX, 0), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
    let dev = table.max_deviation();
    Ok(SchemeSummary {
        mode,
        max_deviation_f64: dev.to_f64().unwrap_or(f64::NAN),
        max_deviation: dev,
        nonzero_spread: hi.saturating_sub(lo),
        reconciled: rec.pass,
    })
}

/// Runs the field-product and element-wise NLFGs on the same primitive
/// register (default polynomials for q, r and L, default pairs) and sets
/// their full-period counts side by side with the closed forms.
pub fn compare_schemes(params: &CountParams, opts: &MeasureOptions) -> Result<Comparison> {
    let params = params.validated()?;
    let (p, n) = match prime_power(params.q) {
        Some((p, n)) if p <= u32::MAX as u64 => (p as u32, n as usize),
        _ => return spec_err(format!("q = {} is not a prime power", params.q)),
    };
    let spec = FieldSpec::with_defaults(p, n, params.r as usize)?;
    let l = params.l as usize;
    let m = params.m as usize;
    let register = Register::default_primitive(&spec, l)?;
    let run = |mode| -> Result<DistributionTable> {
        let gen = NlfgGenerator::new(register.clone(), TapAssembly::with_default_pairs(m, mode, l)?)?;
        measure_distribution(&gen, opts)
    };
    let prop = run(ProductMode::FieldProduct)?;
    let elem = run(ProductMode::ElementWise)?;
    let mut rows = Vec::new();
    for kappa in 0..=params.r {
        let k = kappa as usize;
        let missing = || Error::Internal(format!("no vector of weight {kappa}"));
        rows.push(KappaRow {
            kappa,
            vectors: class_size(params.q, params.r, kappa).to_string(),
            proposed_oracle: n_proposed(&params, kappa == 0)?.to_string(),
            proposed_measured: span(min_max(&prop, k).ok_or_else(missing)?),
            elementwise_oracle: n_elementwise_class(&params, kappa)?.to_string(),
            elementwise_measured: span(min_max(&elem, k).ok_or_else(missing)?),
        });
    }
    let proposed = summary(&prop, &params, ProductMode::FieldProduct)?;
    let elementwise = summary(&elem, &params, ProductMode::ElementWise)?;
    let elementwise_decreasing = (1..=params.r as usize).all(|k| {
        matches!((min_max(&elem, k), min_max(&elem, k - 1)), (Some((_, hi)), Some((lo, _))) if hi < lo)
    });
    Ok(Comparison {
        params,
        rows,
        proposed_nonzero_equal: proposed.nonzero_spread == 0,
        elementwise_decreasing,
        spread_difference: elementwise.nonzero_spread as i128 - proposed.nonzero_spread as i128,
        proposed,
        elementwise,
    })
}

impl Comparison {
    pub fn pass(&self) -> bool {
        self.proposed.reconciled && self.elementwise.reconciled
    }
}

impl Report for Comparison {
    fn to_text(&self) -> String {
        let p = &self.params;
        let mut t = Table::new(&["kappa", "vectors", "proposed", "(oracle)", "element-wise", "(oracle)"]);
        for r in &self.rows {
            t.push(vec![
                r.kappa.to_string(),
                r.vectors.clone(),
                r.proposed_measured.clone(),
                r.proposed_oracle.clone(),
                r.elementwise_measured.clone(),
                r.elementwise_oracle.clone(),
            ]);
        }
        let mut s = format!("q={} r={} L={} m={}\n{}", p.q, p.r, p.l, p.m, t.aligned());
        for sch in [&self.proposed, &self.elementwise] {
            s += &format!(
                "{}: max deviation {:.6e}, nonzero spread {}, reconciled {}\n",
                sch.mode, sch.max_deviation_f64, sch.nonzero_spread, sch.reconciled
            );
        }
        s
    }

    fn to_csv(&self) -> String {
        let mut t = Table::new(&[
            "kappa",
            "vectors",
            "proposed_measured",
            "proposed_oracle",
            "elementwise_measured",
            "elementwise_oracle",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.kappa.to_string(),
                r.vectors.clone(),
                r.proposed_measured.clone(),
                r.proposed_oracle.clone(),
                r.elementwise_measured.clone(),
                r.elementwise_oracle.clone(),
            ]);
        }
        t.csv()
    }
}

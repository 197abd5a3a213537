use num_bigint::BigUint;
use serde::Serialize;

use super::distribution::{full_period, DistributionTable};
use super::report::{Report, Table};
use crate::error::{spec_err, Error, Result};
use crate::gf::WordVector;
use crate::nlfg::ProductMode;
use crate::oracle::{n_elementwise_class, n_proposed, CountParams};

/// Measured against predicted counts for one class of output values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    /// `zero`/`nonzero` for the field product, `kappa=k` for the
    /// element-wise product.
    pub class: String,
    pub values: u64,
    pub measured_min: u64,
    pub measured_max: u64,
    pub oracle: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub params: CountParams,
    pub mode: ProductMode,
    pub period: u64,
    pub classes: Vec<ClassReport>,
    pub pass: bool,
    #[serde(skip)]
    rows: Vec<(WordVector, u64, u64)>,
}

fn to_u64(n: BigUint) -> Result<u64> {
    u64::try_from(&n).map_err(|_| Error::Internal(format!("oracle count {n} exceeds 64 bits")))
}

/// Class index of `v`: its weight for the element-wise product, zero or
/// nonzero for the field product.
fn class_of(mode: ProductMode, v: &WordVector) -> usize {
    match mode {
        ProductMode::FieldProduct => usize::from(!v.is_zero()),
        ProductMode::ElementWise => v.weight(),
    }
}

/// Compares a full-period table with the closed forms at `params`.
///
/// q, r, L and the product mode must agree with the table; m is taken
/// from `params`, so a wrong m shows up as mismatching classes.
pub fn reconcile(table: &DistributionTable, params: &CountParams, mode: ProductMode) -> Result<Reconciliation> {
    let params = params.validated()?;
    let spec = table.spec();
    if params.q != spec.q() as u64 || params.r as usize != spec.r() || params.l as usize != table.l() {
        return spec_err(format!(
            "params (q={}, r={}, L={}) do not match the table (q={}, r={}, L={})",
            params.q,
            params.r,
            params.l,
            spec.q(),
            spec.r(),
            table.l()
        ));
    }
    if mode != table.mode() {
        return spec_err(format!("mode {mode} does not match the table's {}", table.mode()));
    }
    if BigUint::from(table.period()) != full_period(params.q, params.r, params.l) {
        return spec_err("table is not from a full-period run");
    }
    let oracle: Vec<u64> = match mode {
        ProductMode::FieldProduct => vec![to_u64(n_proposed(&params, true)?)?, to_u64(n_proposed(&params, false)?)?],
        ProductMode::ElementWise => (0..=params.r)
            .map(|k| n_elementwise_class(&params, k).and_then(to_u64))
            .collect::<Result<_>>()?,
    };
    let names: Vec<String> = match mode {
        ProductMode::FieldProduct => vec!["zero".into(), "nonzero".into()],
        ProductMode::ElementWise => (0..=params.r).map(|k| format!("kappa={k}")).collect(),
    };
    let mut classes: Vec<ClassReport> = names
        .into_iter()
        .zip(&oracle)
        .map(|(class, &o)| ClassReport {
            class,
            values: 0,
            measured_min: u64::MAX,
            measured_max: 0,
            oracle: o,
            matches: true,
        })
        .collect();
    let mut rows = Vec::new();
    for (v, c) in table.iter() {
        let k = class_of(mode, &v);
        let cls = &mut classes[k];
        cls.values += 1;
        cls.measured_min = cls.measured_min.min(c);
        cls.measured_max = cls.measured_max.max(c);
        cls.matches &= c == cls.oracle;
        rows.push((v, c, cls.oracle));
    }
    let pass = classes.iter().all(|c| c.matches);
    Ok(Reconciliation { params, mode, period: table.period(), classes, pass, rows })
}

impl Reconciliation {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

fn measured(min: u64, max: u64) -> String {
    if min == max {
        min.to_string()
    } else {
        format!("{min}..{max}")
    }
}

impl Report for Reconciliation {
    fn to_text(&self) -> String {
        let p = &self.params;
        let mut t = Table::new(&["class", "values", "measured", "oracle", "match"]);
        for c in &self.classes {
            t.push(vec![
                c.class.clone(),
                c.values.to_string(),
                measured(c.measured_min, c.measured_max),
                c.oracle.to_string(),
                c.matches.to_string(),
            ]);
        }
        format!(
            "q={} r={} L={} m={} mode={} period={}\n{}verdict: {}\n",
            p.q,
            p.r,
            p.l,
            p.m,
            self.mode,
            self.period,
            t.aligned(),
            self.verdict()
        )
    }

    /// One row per value: `value,kappa,measured,oracle,match`.
    fn to_csv(&self) -> String {
        let mut t = Table::new(&["value", "kappa", "measured", "oracle", "match"]);
        for (v, c, o) in &self.rows {
            t.push(vec![v.to_string(), v.weight().to_string(), c.to_string(), o.to_string(), (c == o).to_string()]);
        }
        t.csv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::measure_distribution;
    use crate::gf::FieldSpec;
    use crate::nlfg::{NlfgGenerator, TapAssembly};
    use crate::registers::Register;

    fn table(p: u32, r: usize, l: usize, m: usize, mode: ProductMode) -> DistributionTable {
        let spec = FieldSpec::with_defaults(p, 1, r).unwrap();
        let reg = Register::default_primitive(&spec, l).unwrap();
        let g = NlfgGenerator::new(reg, TapAssembly::with_default_pairs(m, mode, l).unwrap()).unwrap();
        measure_distribution(&g, &Default::default()).unwrap()
    }

    #[test]
    fn scalar_gf3_passes() {
        let t = table(3, 1, 4, 2, ProductMode::FieldProduct);
        let rec = reconcile(&t, &CountParams::new(3, 1, 4, 2).unwrap(), ProductMode::FieldProduct).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.classes[0].oracle, 32);
        assert_eq!(rec.classes[1].oracle, 24);
        assert_eq!(rec.classes[1].values, 2);
    }

    #[test]
    fn wrong_m_is_flagged() {
        let t = table(2, 1, 5, 2, ProductMode::FieldProduct);
        let rec = reconcile(&t, &CountParams::new(2, 1, 5, 1).unwrap(), ProductMode::FieldProduct).unwrap();
        assert!(!rec.pass);
        assert!(rec.to_text().ends_with("verdict: FAIL\n"));
    }

    #[test]
    fn provenance_mismatch_is_an_error() {
        let t = table(2, 1, 5, 2, ProductMode::FieldProduct);
        assert!(reconcile(&t, &CountParams::new(2, 1, 6, 2).unwrap(), ProductMode::FieldProduct).is_err());
        assert!(reconcile(&t, &CountParams::new(3, 1, 5, 2).unwrap(), ProductMode::FieldProduct).is_err());
        assert!(reconcile(&t, &CountParams::new(2, 1, 5, 2).unwrap(), ProductMode::ElementWise).is_err());
    }

    #[test]
    fn csv_rows() {
        let t = table(2, 2, 4, 1, ProductMode::ElementWise);
        let rec = reconcile(&t, &CountParams::new(2, 2, 4, 1).unwrap(), ProductMode::ElementWise).unwrap();
        assert!(rec.pass);
        let csv = rec.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "value,kappa,measured,oracle,match");
        assert_eq!(lines.len(), 5);
        assert!(lines.contains(&"\"1,1\",2,16,16,true"));
    }
}

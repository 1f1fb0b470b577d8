//! Result tables and their JSON and CSV renderings.

use crate::CliError;
use kac_core::engine::Computation;
use kac_core::exactalg::QPolynomial;
use serde::{Deserialize, Serialize};

/// Ascending coefficients as `"num/den"` strings; the zero polynomial is `[]`.
pub fn poly_strings(p: &QPolynomial) -> Vec<String> {
    p.coefficients().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub alpha: Vec<u32>,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    #[serde(rename = "M")]
    pub m: Vec<String>,
    /// Canonical text forms, for reading by eye.
    pub a_text: String,
    pub i_text: String,
    pub m_text: String,
    pub degree_ok: bool,
    pub nonneg_ok: bool,
    pub weyl_kac_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub arrows: Vec<Vec<u32>>,
    pub provider: String,
    pub bound: Vec<u32>,
    pub rows: Vec<Row>,
    pub routes_agree: bool,
    pub weyl_kac_ok: bool,
    pub failures: Vec<String>,
}

impl ResultTable {
    /// Rows in graded lexicographic order on `α`.
    pub fn from_computation(c: &Computation, provider: &str) -> Self {
        let rows = c
            .results()
            .into_iter()
            .map(|r| Row {
                alpha: r.alpha.components().to_vec(),
                a: poly_strings(&r.a),
                i: poly_strings(&r.i),
                m: poly_strings(&r.m),
                a_text: r.a.to_string(),
                i_text: r.i.to_string(),
                m_text: r.m.to_string(),
                degree_ok: r.degree_ok,
                nonneg_ok: r.nonneg_ok,
                weyl_kac_ok: c.weyl_kac.get(&r.alpha).copied().unwrap_or(false),
            })
            .collect();
        ResultTable {
            arrows: c.quiver.arrows().to_vec(),
            provider: provider.to_string(),
            bound: c.bound.upper().components().to_vec(),
            rows,
            routes_agree: c.routes_agree(),
            weyl_kac_ok: c.weyl_kac_ok(),
            failures: c.failed_checks(),
        }
    }

    /// Polynomiality is enforced while building; the remaining hard checks
    /// are route equality and the product identity.
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let n = self.bound.len();
        let mut header: Vec<String> = (1..=n).map(|i| format!("alpha_{i}")).collect();
        header.extend(["A", "I", "M", "degree_ok", "nonneg_ok", "weyl_kac_ok"].map(String::from));
        w.write_record(&header).map_err(csv_err)?;
        for r in &self.rows {
            let mut rec: Vec<String> = r.alpha.iter().map(u32::to_string).collect();
            rec.extend([r.a_text.clone(), r.i_text.clone(), r.m_text.clone()]);
            rec.extend([r.degree_ok, r.nonneg_ok, r.weyl_kac_ok].map(|b| b.to_string()));
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_serialization() {
        assert_eq!(poly_strings(&QPolynomial::from_ints(&[-1, 0, 2])), vec!["-1/1", "0/1", "2/1"]);
        assert!(poly_strings(&QPolynomial::zero()).is_empty());
    }
}

//! Per-code invariant reports and exhaustive sweeps that put the closed
//! forms next to the oracles.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{codes_up_to, GeneratingCode};
use crate::graph::{build, Family, Graph};
use crate::lambda::{lambda_chain, lambda_threshold, ChainPartition};
use crate::metric::beta;
use crate::oracle::{exact_lambda, exact_metric_dimension, exact_tau, exact_tau_r, OracleBudget, OracleError};
use crate::tau::{tau_code, tau_r_code};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Beta,
    Tau,
    TauR,
    Lambda,
}

impl Invariant {
    pub const ALL: [Invariant; 4] = [Invariant::Beta, Invariant::Tau, Invariant::TauR, Invariant::Lambda];

    pub fn as_str(self) -> &'static str {
        match self {
            Invariant::Beta => "beta",
            Invariant::Tau => "tau",
            Invariant::TauR => "tau_r",
            Invariant::Lambda => "lambda",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.as_str() == s)
            .ok_or_else(|| format!("unknown invariant `{s}`"))
    }
}

/// How oracles take part in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    #[default]
    Off,
    /// Run oracles, silently skipping graphs over budget.
    Try,
    /// Run oracles and fail on graphs over budget.
    Require,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Formula,
    Oracle,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantValue {
    pub value: Option<u64>,
    pub source: Option<Source>,
    /// A closed form covers this input.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub invariant: Invariant,
    pub formula_value: u64,
    pub oracle_value: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Minimum resolving set found by the oracle.
    pub basis: Option<Vec<usize>>,
    /// Colors in construction-vertex order.
    pub labeling: Option<Vec<u64>>,
    /// Threshold supergraph behind the τ_r value.
    pub rewritten_code: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub code: String,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub beta: InvariantValue,
    pub tau: InvariantValue,
    pub tau_r: InvariantValue,
    pub lambda: InvariantValue,
    pub discrepancies: Vec<Discrepancy>,
    pub witness: Option<Witness>,
}

impl InvariantReport {
    pub fn value(&self, invariant: Invariant) -> &InvariantValue {
        match invariant {
            Invariant::Beta => &self.beta,
            Invariant::Tau => &self.tau,
            Invariant::TauR => &self.tau_r,
            Invariant::Lambda => &self.lambda,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub oracle: OracleMode,
    pub budget: OracleBudget,
    /// Invariants the oracles are run for.
    pub invariants: Vec<Invariant>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            oracle: OracleMode::Off,
            budget: OracleBudget::default(),
            invariants: Invariant::ALL.to_vec(),
        }
    }
}

fn merge(
    invariant: Invariant,
    formula: Option<u64>,
    applicable: bool,
    oracle: Option<u64>,
    discrepancies: &mut Vec<Discrepancy>,
) -> InvariantValue {
    let (value, source) = match (formula, oracle) {
        (Some(f), Some(o)) => {
            if f != o {
                discrepancies.push(Discrepancy {
                    invariant,
                    formula_value: f,
                    oracle_value: o,
                });
            }
            (Some(f), Some(Source::Both))
        }
        (Some(f), None) => (Some(f), Some(Source::Formula)),
        (None, Some(o)) => (Some(o), Some(Source::Oracle)),
        (None, None) => (None, None),
    };
    InvariantValue { value, source, applicable }
}

fn run_oracle<T>(mode: OracleMode, result: Result<T, OracleError>) -> Result<Option<T>, OracleError> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(OracleError::BudgetExceeded { .. }) if mode == OracleMode::Try => Ok(None),
        Err(e) => Err(e),
    }
}

/// All closed forms for `code` realized in `family`, with oracle values
/// alongside when `options` asks for them.
pub fn invariant_report(
    code: &GeneratingCode,
    family: Family,
    options: &ReportOptions,
) -> Result<InvariantReport, OracleError> {
    let g = build(code, family);
    let wants = |i: Invariant| options.oracle != OracleMode::Off && options.invariants.contains(&i);
    let budget = &options.budget;
    let mut witness = Witness::default();
    let mut discrepancies = Vec::new();

    let beta_formula = beta(code, family).value;
    let beta_oracle = if wants(Invariant::Beta) {
        run_oracle(options.oracle, exact_metric_dimension(&g, budget))?
    } else {
        None
    };
    let beta_oracle = beta_oracle.map(|b| {
        witness.basis = Some(b.basis);
        b.beta
    });

    let (tau_formula, tau_r_formula) = match family {
        Family::Threshold => {
            let r = tau_r_code(code);
            witness.rewritten_code = Some(r.rewritten_code.to_string());
            (tau_code(code).value, Some(r.value))
        }
        Family::Chain => (None, None),
    };
    let tau_oracle = if wants(Invariant::Tau) {
        run_oracle(options.oracle, exact_tau(&g, budget))?
    } else {
        None
    };
    let tau_r_oracle = if wants(Invariant::TauR) {
        run_oracle(options.oracle, exact_tau_r(&g, budget))?
    } else {
        None
    };

    let lambda_formula = match family {
        Family::Threshold => lambda_threshold(code).span,
        Family::Chain => {
            let r = lambda_chain(&ChainPartition::from_code(code));
            witness.labeling = Some(r.labeling.colors);
            r.span
        }
    };
    let lambda_oracle = if wants(Invariant::Lambda) {
        run_oracle(options.oracle, exact_lambda(&g, budget))?
    } else {
        None
    };
    let lambda_oracle = lambda_oracle.map(|l| {
        witness.labeling.get_or_insert(l.labeling.colors);
        l.lambda
    });

    let beta = merge(Invariant::Beta, Some(beta_formula), true, beta_oracle, &mut discrepancies);
    let tau = merge(Invariant::Tau, tau_formula, tau_formula.is_some(), tau_oracle, &mut discrepancies);
    let tau_r = merge(
        Invariant::TauR,
        tau_r_formula,
        tau_r_formula.is_some(),
        tau_r_oracle,
        &mut discrepancies,
    );
    let lambda = merge(Invariant::Lambda, Some(lambda_formula), true, lambda_oracle, &mut discrepancies);

    let has_witness = witness != Witness::default();
    Ok(InvariantReport {
        code: code.to_string(),
        family,
        n: g.n(),
        m: g.edge_count(),
        beta,
        tau,
        tau_r,
        lambda,
        discrepancies,
        witness: has_witness.then_some(witness),
    })
}

/// Oracle values for a graph given by edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: usize,
    pub beta: Option<u64>,
    pub basis: Option<Vec<usize>>,
    pub tau: Option<u64>,
    pub tau_r: Option<u64>,
    pub lambda: Option<u64>,
    pub labeling: Option<Vec<u64>>,
}

/// Runs the selected oracles on an arbitrary graph. `mode` decides whether
/// a budget overrun is skipped (`Try`) or returned (`Require`, `Off`).
pub fn oracle_report(g: &Graph, options: &ReportOptions) -> Result<OracleReport, OracleError> {
    let budget = &options.budget;
    let mode = options.oracle;
    let wants = |i: Invariant| options.invariants.contains(&i);
    let metric = if wants(Invariant::Beta) {
        run_oracle(mode, exact_metric_dimension(g, budget))?
    } else {
        None
    };
    let tau = if wants(Invariant::Tau) { run_oracle(mode, exact_tau(g, budget))? } else { None };
    let tau_r = if wants(Invariant::TauR) {
        match exact_tau_r(g, budget) {
            Err(OracleError::NoThresholdSupergraph) => None,
            other => run_oracle(mode, other)?,
        }
    } else {
        None
    };
    let lambda = if wants(Invariant::Lambda) {
        run_oracle(mode, exact_lambda(g, budget))?
    } else {
        None
    };
    Ok(OracleReport {
        n: g.n(),
        m: g.edge_count(),
        beta: metric.as_ref().map(|b| b.beta),
        basis: metric.map(|b| b.basis),
        tau,
        tau_r,
        lambda: lambda.as_ref().map(|l| l.lambda),
        labeling: lambda.map(|l| l.labeling.colors),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDiscrepancy {
    pub code: String,
    /// All strings have `s, t > 1`, or all have `s = 1`, where the
    /// threshold metric dimension is settled exactly.
    pub exact_family: bool,
    #[serde(flatten)]
    pub discrepancy: Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub max_n: usize,
    pub family: Family,
    pub invariants: Vec<Invariant>,
    pub codes_tested: usize,
    /// Codes with no discrepancy.
    pub agreements: usize,
    pub exact_family_discrepancies: usize,
    pub discrepancies: Vec<SweepDiscrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub reports: Vec<InvariantReport>,
    pub summary: SweepSummary,
}

/// Codes where the threshold metric dimension has a proved closed form.
pub fn exact_family(code: &GeneratingCode) -> bool {
    let blocks = code.blocks();
    blocks.iter().all(|b| b.zeros > 1 && b.ones > 1) || blocks.iter().all(|b| b.zeros == 1)
}

/// Reports for every code of length `2..=max_n`, in canonical order.
pub fn sweep(max_n: usize, family: Family, options: &ReportOptions) -> Result<Sweep, OracleError> {
    let limit = |i: Invariant| match i {
        Invariant::Beta | Invariant::Tau | Invariant::TauR => options.budget.max_n_beta,
        Invariant::Lambda => options.budget.max_n_lambda,
    };
    if options.oracle != OracleMode::Off {
        for &i in &options.invariants {
            if max_n > limit(i) {
                return Err(OracleError::BudgetExceeded {
                    what: "sweep length",
                    limit: limit(i),
                    actual: max_n,
                });
            }
        }
    }
    let codes = codes_up_to(max_n);
    let reports = codes
        .par_iter()
        .map(|c| invariant_report(c, family, options))
        .collect::<Result<Vec<_>, _>>()?;
    let mut discrepancies = Vec::new();
    for (c, r) in codes.iter().zip(&reports) {
        for d in &r.discrepancies {
            discrepancies.push(SweepDiscrepancy {
                code: r.code.clone(),
                exact_family: family == Family::Threshold && d.invariant == Invariant::Beta && exact_family(c),
                discrepancy: d.clone(),
            });
        }
    }
    let summary = SweepSummary {
        max_n,
        family,
        invariants: options.invariants.clone(),
        codes_tested: reports.len(),
        agreements: reports.iter().filter(|r| r.discrepancies.is_empty()).count(),
        exact_family_discrepancies: discrepancies.iter().filter(|d| d.exact_family).count(),
        discrepancies,
    };
    Ok(Sweep { reports, summary })
}

const CSV_HEADER: [&str; 12] = [
    "code",
    "family",
    "n",
    "m",
    "beta",
    "beta_source",
    "tau",
    "tau_source",
    "tau_r",
    "tau_r_source",
    "lambda",
    "lambda_source",
];

fn source_str(s: Option<Source>) -> &'static str {
    match s {
        Some(Source::Formula) => "formula",
        Some(Source::Oracle) => "oracle",
        Some(Source::Both) => "both",
        None => "",
    }
}

/// Flattens the per-code table to CSV.
pub fn sweep_csv(reports: &[InvariantReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        let mut row = vec![r.code.clone(), r.family.as_str().to_string(), r.n.to_string(), r.m.to_string()];
        for i in Invariant::ALL {
            let v = r.value(i);
            row.push(v.value.map(|x| x.to_string()).unwrap_or_default());
            row.push(source_str(v.source).to_string());
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

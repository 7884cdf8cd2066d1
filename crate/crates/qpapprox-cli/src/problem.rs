//! Problem-file schema and its mapping onto the core types.

use anyhow::{bail, Context};
use qpapprox_core::{
    DiophantineParams, GridRule, PeriodGrid, QuasiperiodicSpec, RationalMark, SupSamplingPolicy,
};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Coefficient {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Deserialize)]
pub struct DiophantineField {
    #[serde(rename = "C_a")]
    pub c_a: f64,
    pub tau: f64,
}

#[derive(Debug, Deserialize)]
pub struct MarkField {
    pub row: usize,
    pub col: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupOverrides {
    pub samples_per_oscillation: Option<usize>,
    pub min_per_dim: Option<usize>,
    pub max_total: Option<usize>,
}

/// On-disk problem description.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "P")]
    pub projection: Vec<Vec<f64>>,
    pub lattice: Vec<Vec<i64>>,
    pub coefficients: Vec<Coefficient>,
    #[serde(rename = "N")]
    pub cutoff: i64,
    pub eta: u32,
    pub diophantine: DiophantineField,
    #[serde(rename = "L")]
    pub lengths: Option<Vec<i64>>,
    #[serde(rename = "G")]
    pub nodes: Option<Vec<i64>>,
    #[serde(rename = "G_rule")]
    pub grid_rule: Option<String>,
    pub rational_marks: Option<Vec<MarkField>>,
    pub sup_sampling: Option<SupOverrides>,
}

impl ProblemFile {
    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read problem file {}", path.display()))?;
        let file: ProblemFile = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse problem file {}", path.display()))?;
        Ok(file)
    }

    pub fn to_spec(&self) -> anyhow::Result<QuasiperiodicSpec> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| qpapprox_core::Complex64::new(c.re, c.im))
            .collect();
        let spec = QuasiperiodicSpec::new(
            self.projection.clone(),
            self.lattice.clone(),
            coefficients,
            self.cutoff,
            DiophantineParams {
                c_a: self.diophantine.c_a,
                tau: self.diophantine.tau,
            },
        )?;
        let spec = match &self.rational_marks {
            Some(marks) => spec.with_rational_marks(
                marks
                    .iter()
                    .map(|m| RationalMark {
                        row: m.row,
                        col: m.col,
                        numerator: m.num,
                        denominator: m.den,
                    })
                    .collect(),
            )?,
            None => spec,
        };
        Ok(spec)
    }

    /// Assembles the grid, with command-line overrides taking precedence over
    /// the file's `L` / `G` / `G_rule` fields.
    pub fn to_grid(
        &self,
        lengths_override: Option<Vec<i64>>,
        nodes_override: Option<Vec<i64>>,
        rule_override: Option<&str>,
        eta_override: Option<u32>,
    ) -> anyhow::Result<PeriodGrid> {
        let lengths = lengths_override
            .or_else(|| self.lengths.clone())
            .ok_or_else(|| {
                anyhow::anyhow!("no period vector: set \"L\" in the file or pass --L")
            })?;
        let eta = eta_override.unwrap_or(self.eta);
        let rule_text = rule_override
            .map(str::to_owned)
            .or_else(|| self.grid_rule.clone());
        let nodes = nodes_override.or_else(|| self.nodes.clone());
        let grid = match (nodes, rule_text) {
            (Some(nodes), _) => PeriodGrid::new(lengths, nodes, eta)?,
            (None, Some(rule)) => PeriodGrid::from_rule(lengths, GridRule::parse(&rule)?, eta)?,
            (None, None) => {
                bail!("no grid: set \"G\" or \"G_rule\" in the file, or pass --G / --G-rule")
            }
        };
        Ok(grid)
    }

    pub fn sup_policy(&self, samples_override: Option<usize>) -> SupSamplingPolicy {
        let mut policy = SupSamplingPolicy::default();
        if let Some(o) = &self.sup_sampling {
            if let Some(v) = o.samples_per_oscillation {
                policy.samples_per_oscillation = v;
            }
            if let Some(v) = o.min_per_dim {
                policy.min_per_dim = v;
            }
            if let Some(v) = o.max_total {
                policy.max_total_multi = v;
            }
        }
        if let Some(v) = samples_override {
            policy.samples_per_oscillation = v;
        }
        policy
    }
}

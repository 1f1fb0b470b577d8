//! Job configuration: the on-disk JSON schema and its validated form.

use crate::CliError;
use kac_core::engine::{Quiver, RProvider};
use kac_core::exactalg::QPolynomial;
use kac_core::oracle::{interpolate_r, standard_relations, ArrowId, CyclicRelation, FieldSpec};
use kac_core::series::{DimVector, SeriesBound};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    #[default]
    None,
    LoopNilpotent,
    KroneckerNilpotent,
    Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One summand: an integer coefficient times a path of 1-based `(i, j, k)`
/// arrow identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<[u32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

/// Fill missing table entries by interpolating oracle counts over these fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolateSpec {
    pub fields: Vec<u32>,
}

/// The configuration file as written by the user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub vertices: usize,
    /// Arrow matrix; may be omitted for the built-in nilpotent providers.
    #[serde(default)]
    pub arrows: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub relations: Option<Vec<RelationSpec>>,
    #[serde(default)]
    pub provider: ProviderKind,
    #[serde(default)]
    pub g: Option<u32>,
    /// `"a,b,…"` keys mapping to ascending coefficient lists such as `"-1"` or `"1/2"`.
    #[serde(default)]
    pub table: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub interpolate: Option<InterpolateSpec>,
    pub bound: Vec<u32>,
    #[serde(default)]
    pub format: Format,
    /// Field sizes for the oracle suites.
    #[serde(default)]
    pub fields: Option<Vec<u32>>,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    /// Largest matrix size for the type-U lemma checks.
    #[serde(default)]
    pub lemma_size: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("cannot parse config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// A configuration after validation, with every default filled in.
#[derive(Clone, Debug)]
pub struct Job {
    pub quiver: Quiver,
    pub provider: RProvider,
    pub provider_kind: ProviderKind,
    /// Relations used by the oracle; `None` when a table provider gave none.
    pub relations: Option<Vec<CyclicRelation>>,
    pub relation_specs: Vec<RelationSpec>,
    pub bound: SeriesBound,
    pub format: Format,
    pub fields: Vec<u32>,
    pub cache: Option<PathBuf>,
    pub lemma_size: usize,
    pub seed: u64,
}

pub const DEFAULT_FIELDS: [u32; 2] = [2, 3];
pub const DEFAULT_LEMMA_SIZE: usize = 3;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn parse_dim(text: &str) -> Result<DimVector, CliError> {
    let parts: Result<Vec<u32>, _> = text.split(',').map(|s| s.trim().parse::<u32>()).collect();
    parts.map(DimVector::new).map_err(|_| config_err(format!("'{text}' is not a comma-separated dimension vector")))
}

fn parse_poly(coeffs: &[String]) -> Result<QPolynomial, CliError> {
    let mut terms = Vec::new();
    for (e, c) in coeffs.iter().enumerate() {
        let v: BigRational = c.trim().parse().map_err(|_| config_err(format!("'{c}' is not a rational number")))?;
        terms.push((e as u32, v));
    }
    Ok(QPolynomial::from_terms(terms))
}

fn parse_relation(quiver: &Quiver, spec: &RelationSpec) -> Result<CyclicRelation, CliError> {
    let mut terms = Vec::new();
    for t in &spec.terms {
        let mut path = Vec::new();
        for &[i, j, k] in &t.path {
            if i == 0 || j == 0 || k == 0 {
                return Err(config_err(format!("arrow ({i}, {j}, {k}): identifiers are 1-based")));
            }
            path.push(ArrowId::new(i as usize - 1, j as usize - 1, k - 1));
        }
        terms.push((t.coeff, path));
    }
    Ok(CyclicRelation::new(quiver, terms)?)
}

impl Job {
    /// Validates a configuration. `bound_override` replaces the configured bound.
    pub fn resolve(config: &JobConfig, bound_override: Option<&DimVector>) -> Result<Job, CliError> {
        let g = config.g;
        let need_g = || g.ok_or_else(|| config_err("the built-in nilpotent providers need \"g\""));
        let arrows = match (&config.arrows, config.provider) {
            (Some(a), _) => a.clone(),
            (None, ProviderKind::LoopNilpotent) => Quiver::jordan(need_g()?).arrows().to_vec(),
            (None, ProviderKind::KroneckerNilpotent) => Quiver::kronecker(need_g()?).arrows().to_vec(),
            (None, _) => return Err(config_err("\"arrows\" is required for this provider")),
        };
        if arrows.len() != config.vertices || arrows.iter().any(|r| r.len() != config.vertices) {
            return Err(config_err(format!("arrow matrix must be {0} x {0}", config.vertices)));
        }
        let quiver = Quiver::new(arrows)?;

        let bound = match bound_override {
            Some(b) => b.clone(),
            None => DimVector::new(config.bound.clone()),
        };
        if bound.len() != config.vertices {
            return Err(config_err(format!("bound has {} entries for {} vertices", bound.len(), config.vertices)));
        }
        let bound = SeriesBound::new(bound);

        let relation_specs = config.relations.clone().unwrap_or_default();
        let explicit: Option<Vec<CyclicRelation>> = match &config.relations {
            Some(specs) => Some(specs.iter().map(|s| parse_relation(&quiver, s)).collect::<Result<_, _>>()?),
            None => None,
        };

        let provider = match config.provider {
            ProviderKind::None => RProvider::NoRelations,
            ProviderKind::LoopNilpotent => RProvider::LoopNilpotent(need_g()?),
            ProviderKind::KroneckerNilpotent => RProvider::KroneckerNilpotent(need_g()?),
            ProviderKind::Table => {
                if config.table.is_none() && config.interpolate.is_none() {
                    return Err(config_err("provider \"table\" needs a \"table\" or an \"interpolate\" directive"));
                }
                let mut table = BTreeMap::new();
                for (key, coeffs) in config.table.iter().flatten() {
                    let alpha = parse_dim(key)?;
                    if alpha.len() != config.vertices {
                        return Err(config_err(format!("table key '{key}' has the wrong length")));
                    }
                    table.insert(alpha, parse_poly(coeffs)?);
                }
                if let Some(spec) = &config.interpolate {
                    let rels = explicit.as_ref().ok_or_else(|| config_err("\"interpolate\" needs \"relations\""))?;
                    let fields: Vec<FieldSpec> = spec.fields.iter().map(|&q| FieldSpec::with_size(q)).collect::<Result<_, _>>()?;
                    for alpha in bound.monomials().filter(|a| !a.is_zero()) {
                        if !table.contains_key(&alpha) {
                            let r = interpolate_r(&quiver, rels, &alpha, &fields)?;
                            table.insert(alpha, r);
                        }
                    }
                }
                RProvider::Table(table)
            }
        };
        provider.validate(&quiver)?;

        let relations = explicit.or_else(|| standard_relations(&quiver, &provider));
        let fields = config.fields.clone().unwrap_or_else(|| DEFAULT_FIELDS.to_vec());
        for &q in &fields {
            FieldSpec::with_size(q)?;
        }
        Ok(Job {
            quiver,
            provider,
            provider_kind: config.provider,
            relations,
            relation_specs,
            bound,
            format: config.format,
            fields,
            cache: config.cache.clone(),
            lemma_size: config.lemma_size.unwrap_or(DEFAULT_LEMMA_SIZE),
            seed: config.seed.unwrap_or(0),
        })
    }

    /// The provider's values on the box, as ascending coefficient strings.
    pub fn provider_table(&self) -> Result<BTreeMap<String, Vec<String>>, CliError> {
        let table = self.provider.table_for(&self.quiver, &self.bound)?;
        Ok(table.iter().map(|(a, p)| (dim_key(a), crate::table::poly_strings(p))).collect())
    }
}

pub fn dim_key(a: &DimVector) -> String {
    a.components().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

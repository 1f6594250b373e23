use serde::Deserialize;
use serde_json::Value;

use super::{rational_rows, rational_vector, RationalSpec};
use crate::cones::ConeGenerators;
use crate::economy::{Economy, Trader, Utility};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EconomyFile {
    n: usize,
    traders: Vec<TraderSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraderSpec {
    id: String,
    endowment: Vec<RationalSpec>,
    utility: UtilitySpec,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum UtilitySpec {
    Linear(Vec<RationalSpec>),
    MinLinear(Vec<Vec<RationalSpec>>),
    ConeGenerators(Vec<Vec<RationalSpec>>),
}

/// `{"n": …, "traders": [{"id", "endowment", "utility": {"linear" | "min_linear" | "cone_generators": …}}]}`
pub fn parse_economy(v: &Value) -> Result<Economy> {
    let file: EconomyFile = serde_json::from_value(v.clone())?;
    let traders = file
        .traders
        .into_iter()
        .map(|t| {
            let utility = match &t.utility {
                UtilitySpec::Linear(a) => Utility::Linear(rational_vector(a)?),
                UtilitySpec::MinLinear(rows) => Utility::MinLinear(rational_rows(rows)?),
                UtilitySpec::ConeGenerators(rows) => Utility::ExplicitCone(
                    ConeGenerators::new(file.n, rational_rows(rows)?)
                        .map_err(|e| Error::invalid(format!("trader {}: {e}", t.id)))?,
                ),
            };
            Trader::new(t.id, rational_vector(&t.endowment)?, utility)
        })
        .collect::<Result<Vec<_>>>()?;
    Economy::new(file.n, traders)
}

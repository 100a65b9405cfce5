use cheqlab_core::Limits;

use crate::error::CliError;

pub const BUDGET_ENV: &str = "CHEQLAB_BUDGET";

/// Default limits, with the work budget (search nodes and valuations)
/// taken from the flag if given, else from `CHEQLAB_BUDGET`.
pub fn limits(flag: Option<u64>) -> Result<Limits, CliError> {
    let budget = match flag {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(text) => Some(text.trim().parse::<u64>().map_err(|_| {
                CliError::Usage(format!(
                    "{BUDGET_ENV} must be a non-negative integer, got {text:?}"
                ))
            })?),
            Err(_) => None,
        },
    };
    Ok(match budget {
        Some(b) => Limits::default()
            .with_search_nodes(b)
            .with_valuations(b as u128),
        None => Limits::default(),
    })
}

//! Phase-space emission: build the double of a structure along a connection
//! and serialize it back into the file format.

use thiserror::Error;

use homlie::algebroid::checks::CheckConfig;
use homlie::connection::{levi_civita, Connection, ConnectionError};
use homlie::parakahler::build_phase_space;
use homlie::DEFAULT_SEED;

use crate::format::{self, FormatError, ParsedStructure};

#[derive(Debug, Error)]
pub enum PhaseError {
    #[error("phase space needs a metric (to solve for the connection) or an explicit connection block")]
    NoConnectionSource,
    #[error("connection error: {0}")]
    Connection(#[from] ConnectionError),
    #[error("format error: {0}")]
    Format(#[from] FormatError),
}

/// Builds the phase space of the parsed structure and returns it as a new
/// parsed structure carrying the canonical symplectic form.
pub fn phase_space_structure(parsed: &ParsedStructure) -> Result<ParsedStructure, PhaseError> {
    let st = &parsed.structure;
    let conn: Connection = match &parsed.connection {
        Some(c) => c.clone(),
        None => match &parsed.metric {
            Some(g) => levi_civita(st, g)?,
            None => return Err(PhaseError::NoConnectionSource),
        },
    };
    let cfg = CheckConfig {
        seed: parsed.seed.unwrap_or(DEFAULT_SEED),
        ..CheckConfig::default()
    };
    let (phase, omega) = build_phase_space(st, &conn, &cfg)?;
    Ok(ParsedStructure {
        name: format!("{}_phase_space", parsed.name),
        description: Some(format!(
            "Phase space of {} on the double of its section module.",
            parsed.name
        )),
        base_ring: parsed.base_ring.clone(),
        structure: phase,
        metric: None,
        symplectic: Some(omega),
        product_structure: None,
        split: None,
        connection: None,
        seed: parsed.seed,
    })
}

/// Serializes the phase space document.
pub fn phase_space_document(parsed: &ParsedStructure) -> Result<String, PhaseError> {
    let phase = phase_space_structure(parsed)?;
    Ok(format::serialize(&phase)?)
}

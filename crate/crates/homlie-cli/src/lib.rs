//! Structure-file format, builtin examples and the verification driver.

pub mod fixtures;
pub mod format;
pub mod phase;
pub mod runner;

/// Exit codes of the command-line driver.
pub mod exit {
    /// Every selected check passed.
    pub const ALL_PASS: u8 = 0;
    /// At least one check failed.
    pub const CHECK_FAILED: u8 = 1;
    /// Usage error or missing attachment for a requested check.
    pub const USAGE: u8 = 2;
    /// The structure file could not be parsed or validated.
    pub const PARSE: u8 = 3;
}

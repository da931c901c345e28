//! Library side of the `qree` command: state files, JSON output shapes,
//! the verification tables and the command implementations.

pub mod commands;
pub mod output;
pub mod state_file;
pub mod verify;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
}

//! Pieces shared by the command-line tool and the acceptance suite: the
//! verification report, table encoders, the on-disk cache and the checks.

pub mod cache;
pub mod output;
pub mod report;
pub mod verify;

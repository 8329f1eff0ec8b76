//! Library half of the `trilin` binary: command implementations, the seeded
//! tensor identity battery and the acceptance criteria, shared between the
//! CLI and the integration tests.

pub mod battery;
pub mod commands;
pub mod criteria;

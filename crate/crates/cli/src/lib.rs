//! Command implementations behind the `moleig` binary, exposed as a library
//! so the acceptance suite can drive them directly.

pub mod commands;
pub mod manifest;
pub mod sysfile;
pub mod tables;
pub mod verify;

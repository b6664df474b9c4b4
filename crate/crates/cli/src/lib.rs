//! Command line front end for the `braket-core` library: JSON bundles,
//! the bra-ket expression language and the `braket` subcommands.

pub mod cli;
pub mod dsl;
pub mod json;

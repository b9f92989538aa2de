//! Command-line and HTTP front end for the clusterlab kernel.

pub mod commands;
pub mod error;
pub mod io;
pub mod server;
pub mod session;

pub use commands::run;

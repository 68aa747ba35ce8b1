//! Command-line front end for `diagasym`: model files, subcommands and the
//! text, CSV and SVG renderings they emit.

pub mod commands;
pub mod error;
pub mod format;
pub mod model_file;
pub mod svg;

//! File formats and parsing for the `schubsplit` command-line tool.
//!
//! The binary's I/O surface lives here so that tests (and other tools)
//! can read, write and round-trip the same JSON documents the CLI
//! accepts: bundle presentations ([`bundlefile::BundleFile`]), wedge data
//! ([`bundlefile::WedgeFile`]) and the polynomial entry grammar
//! ([`polyparse::parse_poly`]).

pub mod bundlefile;
pub mod polyparse;

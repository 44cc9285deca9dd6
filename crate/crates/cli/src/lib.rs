//! Configuration, orchestration and file formats behind the `stirap` binary.

pub mod config;
pub mod error;
pub mod execute;
pub mod formats;
pub mod manifest;

use std::path::Path;

pub use config::{parse_config, Mode, RunConfig};
pub use error::{CliError, Result};
pub use execute::{execute, ExecOptions};
pub use manifest::{verify_manifest, RunManifest};

/// Run configurations shipped with the binary, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("fig2a", include_str!("../configs/fig2a.json")),
    ("fig2b", include_str!("../configs/fig2b.json")),
    ("fig3a", include_str!("../configs/fig3a.json")),
    ("fig3b", include_str!("../configs/fig3b.json")),
    ("fig4-l1-l2", include_str!("../configs/fig4-l1-l2.json")),
    ("fig4-l1-l3", include_str!("../configs/fig4-l1-l3.json")),
    ("fig4-l1-l4", include_str!("../configs/fig4-l1-l4.json")),
    ("fig4-l2-l3", include_str!("../configs/fig4-l2-l3.json")),
    ("appendixA", include_str!("../configs/appendixA.json")),
    ("fig5", include_str!("../configs/fig5.json")),
    ("fig7", include_str!("../configs/fig7.json")),
    ("fig8", include_str!("../configs/fig8.json")),
    ("fig9", include_str!("../configs/fig9.json")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Parse `source` as a file path if one exists there, else as a bundled
/// configuration name.
pub fn load_config(source: &str) -> Result<RunConfig> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(error::io_err(path))?;
        return parse_config(&text);
    }
    match bundled(source) {
        Some(text) => parse_config(text),
        None => {
            let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
            Err(CliError::Usage(format!(
                "no file {source:?} and no bundled configuration of that name (bundled: {})",
                names.join(", ")
            )))
        }
    }
}

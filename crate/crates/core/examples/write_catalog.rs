//! Regenerates `catalog/{16,24,36}` from the built-in recipes.
//!
//! cargo run --release --example write_catalog -- [root]

use std::path::PathBuf;

use grouplab::construct::reference_catalog_files;
use grouplab::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog"));
    for n in [16, 24, 36] {
        let dir = root.join(n.to_string());
        std::fs::create_dir_all(&dir)?;
        for (name, text) in reference_catalog_files(n, &Limits::default())? {
            std::fs::write(dir.join(&name), text)?;
        }
        println!("wrote {}", dir.display());
    }
    Ok(())
}

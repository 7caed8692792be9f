//! Regenerates the JSON fixture corpus: `cargo run -p psikit --example write_fixtures [DIR]`.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    psikit::fixtures::write_all(&dir)?;
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}

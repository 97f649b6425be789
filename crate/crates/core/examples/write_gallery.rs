//! Regenerates `gallery/` from the generators.
//!
//! cargo run --example write_gallery

use std::path::Path;

use dualfib::io::{gallery, negative_gallery, print};

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("gallery");
    for (dir, docs) in [(root.clone(), gallery()), (root.join("negative"), negative_gallery())] {
        std::fs::create_dir_all(&dir)?;
        for (file, doc) in docs {
            let path = dir.join(&file);
            std::fs::write(&path, print(&doc))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

//! Regenerates `fixtures/*.json` and `fixtures/corrupted/*.json` from the built-in fixtures.

use std::path::Path;

use nhom::{fixtures, format::serialize_algebra};

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    write_all(&dir, fixtures::bundled())?;
    write_all(&dir.join("corrupted"), fixtures::corrupted())
}

fn write_all(dir: &Path, algebras: Vec<(&str, nhom::NHomAlgebra)>) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, alg) in algebras {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serialize_algebra(&alg))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

//! Regenerates include/braidkit.h with cbindgen when the tool is installed;
//! otherwise the checked-in hand-written header (kept in sync by the ffi
//! tests' ABI surface) is used as-is.

use std::path::Path;
use std::process::Command;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
    let header = Path::new(&crate_dir).join("include/braidkit.h");
    let status = Command::new("cbindgen")
        .args(["--config", "cbindgen.toml", "--crate", "braidkit-ffi", "--output"])
        .arg(&header)
        .current_dir(&crate_dir)
        .status();
    match status {
        Ok(s) if s.success() => {}
        _ => println!(
            "cargo:warning=cbindgen not available; using checked-in {}",
            header.display()
        ),
    }
}

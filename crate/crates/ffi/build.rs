use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let mut header = Vec::new();
    cbindgen::generate(&crate_dir).expect("cbindgen generates the header").write(&mut header);
    let target = crate_dir.join("include").join("motzkin_ffi.h");
    fs::create_dir_all(target.parent().expect("include dir")).expect("create include dir");

    // Leave the committed header untouched unless its content changed, so
    // clean builds stay clean.
    if fs::read(&target).ok().as_deref() != Some(header.as_slice()) {
        fs::write(&target, header).expect("write header");
    }
}

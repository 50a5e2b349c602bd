use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = PathBuf::from(&crate_dir).join("include/orbicoh.h");
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("ORBICOH_H".into()),
        cpp_compat: true,
        documentation: true,
        header: Some("/* C interface to the orbicoh exact cohomology engine. */".into()),
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..Default::default()
        },
        ..Default::default()
    };
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(e) => panic!("cbindgen failed: {e:?}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}

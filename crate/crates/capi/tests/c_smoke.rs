//! Compiles and runs a C program against the generated header and the
//! static library, exercising the ABI from outside Rust.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile = if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    };
    // test builds emit only the rlib, so produce the staticlib explicitly
    let mut build = Command::new(env!("CARGO"));
    build
        .args(["build", "-p", "orbicoh-capi"])
        .current_dir(&manifest);
    if profile == "release" {
        build.arg("--release");
    }
    let status = build.status().expect("invoke cargo");
    assert!(
        status.success(),
        "cargo build for the static library failed"
    );
    let target_dir = manifest
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("target")
        .join(profile);
    let staticlib = target_dir.join("liborbicoh_capi.a");
    assert!(
        staticlib.exists(),
        "static library not found at {staticlib:?}"
    );
    let header_dir = manifest.join("include");
    let source = manifest.join("tests/smoke.c");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&tmp).unwrap();
    let exe = tmp.join("orbicoh_capi_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let compile = Command::new(&cc)
        .arg("-I")
        .arg(&header_dir)
        .arg(&source)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("invoke the C compiler");
    assert!(
        compile.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe).output().expect("run the smoke binary");
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}:\n{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("capi smoke ok"), "{stdout}");
}

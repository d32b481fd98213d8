//! Compiles and runs a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("oddsun.h").exists(), "header not generated");
    let lib = target_dir().join("liboddsun_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    assert!(cc.status.success());

    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "C smoke failed: {}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/oddsun.h"))
            .unwrap();
    for name in [
        "typedef struct OddsunFamily OddsunFamily;",
        "oddsun_family_new(",
        "oddsun_family_free(",
        "oddsun_find_odd(",
        "oddsun_find_even(",
        "oddsun_find_classic(",
        "oddsun_wreath(",
        "oddsun_reduce_3dm(",
        "oddsun_last_error(",
        "ODDSUN_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

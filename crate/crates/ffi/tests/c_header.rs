//! Compiles and runs a small C program against the generated header and the
//! static library. Skips quietly when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <assert.h>
#include <stddef.h>
#include "domcheck.h"

int main(void) {
    double entries[8] = {3.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0};
    DcMatrix *m = NULL;
    if (dc_matrix_new(2, 2, entries, &m) != DcStatus_Ok) return 1;
    double sv[2]; size_t written = 0;
    if (dc_singular_values(m, sv, 2, &written) != DcStatus_Ok) return 2;
    if (!(sv[0] == 4.0 && sv[1] == 3.0)) return 3;

    DcMap *t = NULL;
    if (dc_map_new_builtin("transpose", 2, &t) != DcStatus_Ok) return 4;
    DcVerdict verdict; double value;
    if (dc_check_k_positive(t, 2, NULL, &verdict, &value) != DcStatus_Ok) return 5;
    if (verdict != DcVerdict_Violated) return 6;
    if (!(value < -0.999999999 && value > -1.000000001)) return 7;

    DcConfig cfg = dc_config_default();
    if (cfg.seed != 0) return 8;

    dc_map_free(t);
    dc_matrix_free(m);
    return 0;
}
"#;

#[test]
fn generated_header_compiles_and_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = crate_dir.join("include");
    // target dir layout: <workspace>/target/<profile>/libdomcheck_ffi.a
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let static_lib = crate_dir
        .join("../../target")
        .join(profile)
        .join("libdomcheck_ffi.a");
    if !static_lib.exists() {
        eprintln!("skipping: static library not present at {}", static_lib.display());
        return;
    }
    let compiler = ["cc", "gcc", "clang"]
        .iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok());
    let Some(compiler) = compiler else {
        eprintln!("skipping: no C compiler on the path");
        return;
    };

    let dir = tempfile_dir();
    let source = dir.join("smoke.c");
    let binary = dir.join("smoke");
    std::fs::write(&source, C_SOURCE).unwrap();

    let compile = Command::new(compiler)
        .arg("-I")
        .arg(&include_dir)
        .arg(&source)
        .arg(&static_lib)
        .arg("-lm")
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("compiler invocation");
    assert!(
        compile.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("run smoke binary");
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}",
        run.status.code()
    );
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("domcheck-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

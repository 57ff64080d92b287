//! Compile and run a small C program against the generated header and the
//! static library, proving the ABI is consumable from C.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "schreier.h"

int main(void) {
    const char *json =
        "{ \"rank\": 2, \"names\": [\"a\", \"b\"], \"fiber\": 2,"
        "  \"action\": [[1, 0], [1, 0]], \"basepoint\": 0 }";
    SchreierCovering *covering = NULL;
    if (schreier_covering_from_json(json, &covering) != SCHREIER_STATUS_OK) return 1;
    if (schreier_covering_fiber_size(covering) != 2) return 2;

    bool member = false;
    if (schreier_covering_is_member(covering, "ab", &member) != SCHREIER_STATUS_OK || !member)
        return 3;
    if (schreier_covering_is_member(covering, "a", &member) != SCHREIER_STATUS_OK || member)
        return 4;

    SchreierBasis *basis = NULL;
    if (schreier_basis_compute(covering, &basis) != SCHREIER_STATUS_OK) return 5;
    if (schreier_basis_rank(basis) != 3) return 6;

    char *word = NULL;
    if (schreier_basis_rewrite(basis, "aa", &word) != SCHREIER_STATUS_OK) return 7;
    int ok = strcmp(word, "s0") == 0;
    schreier_string_free(word);
    if (!ok) return 8;

    if (schreier_basis_rewrite(basis, "a", &word) != SCHREIER_STATUS_NOT_MEMBER) return 9;

    schreier_basis_free(basis);
    schreier_covering_free(covering);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let staticlib = manifest
        .parent()
        .and_then(|p| p.parent())
        .map(|p| p.join("target").join(profile_dir()).join("libschreier_capi.a"))
        .expect("workspace layout");
    if !staticlib.exists() {
        // `cargo test` links the rlib only; produce the staticlib artifact
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".to_string());
        let mut build = Command::new(cargo);
        build.args(["build", "-p", "schreier-capi"]).current_dir(&manifest);
        if profile_dir() == "release" {
            build.arg("--release");
        }
        let out = build.output().expect("cargo build runs");
        assert!(out.status.success(), "cargo build failed:\n{}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(staticlib.exists(), "static library not found at {}", staticlib.display());

    let dir = std::env::temp_dir().join(format!("schreier-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let source = dir.join("main.c");
    let binary = dir.join("main");
    std::fs::write(&source, C_SOURCE).unwrap();

    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let compile = Command::new(&compiler)
        .arg(&source)
        .arg("-I")
        .arg(&include)
        .arg("-o")
        .arg(&binary)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .output();
    let compile = match compile {
        Ok(out) => out,
        Err(_) => {
            eprintln!("skipping: no C compiler available as {compiler}");
            return;
        }
    };
    assert!(
        compile.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("compiled program runs");
    assert!(run.status.success(), "C program exited with {:?}", run.status.code());
}

fn profile_dir() -> &'static str {
    if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    }
}

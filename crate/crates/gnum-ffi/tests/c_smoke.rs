//! Compiles and runs a small C program against the generated header and the
//! static library, exercising the handle API and the string-level entry
//! points end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <assert.h>
#include <string.h>
#include <stdio.h>
#include "gnum.h"

int main(void) {
    GnumHyper *a = NULL, *b = NULL, *sum = NULL;
    assert(gnum_hyper_parse("1 + e", &a) == GNUM_OK);
    assert(gnum_hyper_parse("e^2 / (1 - e)", &b) == GNUM_OK);
    assert(gnum_hyper_add(a, b, &sum) == GNUM_OK);

    GnumClass cls;
    assert(gnum_hyper_classify(b, &cls) == GNUM_OK && cls == GNUM_INFINITESIMAL);

    char *std_text = NULL;
    assert(gnum_hyper_std(sum, &std_text) == GNUM_OK);
    assert(strcmp(std_text, "1") == 0);
    gnum_string_free(std_text);

    char *round_trip = NULL;
    assert(gnum_hyper_to_string(sum, &round_trip) == GNUM_OK);
    GnumHyper *reparsed = NULL;
    assert(gnum_hyper_parse(round_trip, &reparsed) == GNUM_OK);
    int ord = 99;
    assert(gnum_hyper_compare(sum, reparsed, &ord) == GNUM_OK && ord == 0);
    gnum_string_free(round_trip);
    gnum_hyper_free(reparsed);

    char *value = NULL;
    assert(gnum_value_exact("{\"base\":2,\"preamble\":\"\",\"period\":\"01\"}", &value) == GNUM_OK);
    assert(strcmp(value, "1/3") == 0);
    gnum_string_free(value);

    char *bits = NULL;
    assert(gnum_encode("3/4", "0", "1", 6, &bits) == GNUM_OK);
    assert(strcmp(bits, "101111") == 0);
    gnum_string_free(bits);

    char *mu = NULL;
    assert(gnum_cylinder_measure(2, "0,10", &mu) == GNUM_OK);
    assert(strcmp(mu, "3/4") == 0);
    gnum_string_free(mu);

    /* error path: syntax error sets a message, null handle untouched */
    GnumHyper *bad = NULL;
    assert(gnum_hyper_parse("1 + + e", &bad) == GNUM_ERR_SYNTAX);
    assert(bad == NULL);
    assert(gnum_last_error_message() != NULL);

    gnum_hyper_free(a);
    gnum_hyper_free(b);
    gnum_hyper_free(sum);
    puts("c smoke ok");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    // target/debug, two levels up from the test executable in target/debug/deps
    let target_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let staticlib = target_dir.join("libgnum_ffi.a");
    // `cargo test` may not produce the staticlib artifact; build it if absent.
    if !staticlib.exists() {
        let status = Command::new(env!("CARGO"))
            .args(["build", "-p", "gnum-ffi"])
            .current_dir(&manifest)
            .status()
            .expect("run cargo build");
        assert!(status.success(), "cargo build -p gnum-ffi failed");
    }
    assert!(staticlib.exists(), "missing {}", staticlib.display());

    let work = target_dir.join("c_smoke");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let exe = work.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include_dir)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("run cc");
    assert!(out.status.success(), "cc failed: {}", String::from_utf8_lossy(&out.stderr));

    let out = Command::new(&exe).output().expect("run smoke binary");
    assert!(out.status.success(), "smoke binary failed: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "c smoke ok");
}

//! Compile and run a small C program against the generated header and
//! the shared library. Skips when no C compiler or no built artifact is
//! available (e.g. unusual test invocations).

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include "tropflow.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    const char *shop =
        "{\"machines\":["
        "{\"name\":\"mixing\",\"processing\":[[2,30]]},"
        "{\"name\":\"dividing\",\"processing\":[[1,1]]},"
        "{\"name\":\"rounding\",\"processing\":[[1,1]]},"
        "{\"name\":\"pre-proofing\",\"processing\":[[2,2]]},"
        "{\"name\":\"rolling\",\"processing\":[[1,1]]},"
        "{\"name\":\"proofing\",\"processing\":[[5,40]]},"
        "{\"name\":\"baking\",\"processing\":[[4,30]]}],"
        "\"transport\":[[0,0],[0,0],[0,0],[0,0],[1,20],[1,20]],"
        "\"capacities\":[2],\"quantities\":[4],\"clean_time\":3}";
    TropflowShop *handle = NULL;
    if (tropflow_shop_parse(shop, NULL, &handle) != TROPFLOW_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", tropflow_last_error());
        return 1;
    }
    if (tropflow_shop_type_count(handle) != 1 ||
        tropflow_shop_total_quantity(handle) != 4) {
        return 2;
    }
    uint32_t schedule[1] = {1};
    double block = 0.0, fast = 0.0;
    if (tropflow_shop_makespan(handle, schedule, 1, TROPFLOW_METHOD_BLOCK, &block) !=
        TROPFLOW_STATUS_OK) {
        fprintf(stderr, "block: %s\n", tropflow_last_error());
        return 3;
    }
    uint32_t best[1] = {0};
    size_t best_len = 0;
    if (tropflow_shop_optimize(handle, TROPFLOW_METHOD_FAST, 10, 0.0, best, &best_len,
                               &fast) != TROPFLOW_STATUS_OK) {
        fprintf(stderr, "optimize: %s\n", tropflow_last_error());
        return 4;
    }
    if (best_len != 1 || best[0] != 1 || fast != block) {
        fprintf(stderr, "mismatch: fast=%f block=%f\n", fast, block);
        return 5;
    }
    tropflow_shop_free(handle);
    printf("makespan %.1f\n", block);
    return 0;
}
"#;

#[test]
fn c_program_links_and_agrees() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let lib_dir = manifest.join("../../target/debug");
    if !lib_dir.join("libtropflow_ffi.so").exists() {
        eprintln!("skipping: libtropflow_ffi.so not built");
        return;
    }
    let Ok(cc) = which_cc() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let compile = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-ltropflow_ffi")
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-o")
        .arg(&bin)
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&bin).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.starts_with("makespan "), "unexpected output: {stdout}");
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().map(|o| o.status.success()).unwrap_or(false) {
            return Ok(cc);
        }
    }
    Err(())
}

use std::path::Path;
use std::process::Command;

const HEADER: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/include/knotlab.h");

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(HEADER).expect("build script writes the header");
    for name in [
        "knotlab_last_error_message",
        "knotlab_contour_new",
        "knotlab_contour_free",
        "knotlab_contour_sample",
        "knotlab_hankel",
        "knotlab_is_admissible",
        "knotlab_allowed_ell",
        "knotlab_gamma",
        "knotlab_shoot",
        "knotlab_metric_new",
        "knotlab_metric_free",
        "knotlab_metric_dim",
        "knotlab_metric_residual_curve",
        "typedef struct KnotlabContour KnotlabContour;",
        "KNOTLAB_STATUS_NUMERICAL = 3",
    ] {
        assert!(text.contains(name), "header is missing {name}");
    }
}

/// Compile a small C translation unit against the header when a C compiler
/// is around.
#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include "knotlab.h"
int smoke(void) {
    KnotlabContour *c = 0;
    KnotlabStatus st = knotlab_contour_new(1, 5.0, 0.25, 1.0, &c);
    KnotlabContourSample s;
    if (st == KNOTLAB_STATUS_OK) st = knotlab_contour_sample(c, 0.0, &s);
    knotlab_contour_free(c);
    return (int)st;
}
"#,
    )
    .unwrap();
    let include = Path::new(HEADER).parent().unwrap();
    match Command::new(&cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(include)
        .arg(&src)
        .output()
    {
        Ok(out) => assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        ),
        Err(_) => eprintln!("no C compiler ({cc}); skipping"),
    }
}

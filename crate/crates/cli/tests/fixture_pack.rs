//! The shipped `fixtures/` directory must match the library fixtures.
//! Regenerate with `HYPERLIN_BLESS=1 cargo test -p hyperlin-cli --test fixture_pack`.

use std::fs;
use std::path::PathBuf;

use hyperlin_core::fixtures;

fn pack() -> Vec<(&'static str, String)> {
    let mut files = vec![
        ("h_a.json", fixtures::h_a().to_json_pretty()),
        ("h_units.json", fixtures::h_units().to_json_pretty()),
        ("h_eq.json", fixtures::h_eq().to_json_pretty()),
        ("h_circ_4.json", fixtures::circulant(4).to_json_pretty()),
        ("h_circ_5.json", fixtures::circulant(5).to_json_pretty()),
        ("h_lower_5.json", fixtures::lower_triangular(5).to_json_pretty()),
        ("h_cov.json", fixtures::h_cov().to_json_pretty()),
        ("h_cov_base.json", fixtures::h_cov_base().to_json_pretty()),
        (
            "h_cov_map.json",
            serde_json::to_string_pretty(&fixtures::h_cov_map()).unwrap(),
        ),
    ];
    for (_, text) in &mut files {
        text.push('\n');
    }
    files
}

#[test]
fn fixture_pack_matches_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let bless = std::env::var_os("HYPERLIN_BLESS").is_some();
    for (name, text) in pack() {
        let path = dir.join(name);
        if bless {
            fs::create_dir_all(&dir).unwrap();
            fs::write(&path, &text).unwrap();
        }
        let shipped = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(shipped, text, "{name} is stale; rerun with HYPERLIN_BLESS=1");
    }
}

//! Keeps the shipped golden fixture files in sync with the hand-transcribed
//! reference polynomials. Run the ignored regeneration test after changing
//! the canonical text format:
//! `cargo test -p ptsturm --test golden_fixtures -- --ignored`

mod common;

use std::fs;
use std::path::PathBuf;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn expected() -> Vec<(&'static str, String)> {
    let ratfunc = |n: &ptsturm::Poly, d: &ptsturm::Poly| format!("({n}) / ({d})");
    let pf = |(a0, r, d): (ptsturm::Coef, ptsturm::Poly, ptsturm::Poly)| {
        format!("A0 = {a0}\nR = {r}\nD = {d}")
    };
    vec![
        ("secular_j2.txt", common::secular_j2().to_string()),
        ("secular_j3.txt", common::secular_j3().to_string()),
        ("secular_j4.txt", common::secular_j4().to_string()),
        ("f_j1.txt", "t".to_string()),
        ("f_j2.txt", "t - v".to_string()),
        ("f_j3.txt", ratfunc(&common::n_j3(), &common::d_j3())),
        ("f_j4.txt", ratfunc(&common::n_j4(), &common::d_j4())),
        // the pipeline's monic N₇ is the negative of the printed numerator
        (
            "f_j7_num.txt",
            (-&common::n_j7_printed()).to_string(),
        ),
        ("f_j7_den.txt", common::d_j7_printed().to_string()),
        ("jfrac_a0.txt", common::jfrac_a0().to_string()),
        ("jfrac_b1.txt", common::jfrac_b1().to_string()),
        ("jfrac_a1.txt", common::jfrac_a1().to_string()),
        ("jfrac_b2_tilde.txt", common::jfrac_b2_tilded().to_string()),
        ("jfrac_a2_tilde.txt", common::jfrac_a2_tilded().to_string()),
        ("jfrac_b2_j5.txt", common::jfrac_b2_full().to_string()),
        ("jfrac_a2_j6.txt", common::jfrac_a2_full().to_string()),
        ("pf_j3.txt", pf(common::pf_j3())),
        ("pf_j4.txt", pf(common::pf_j4())),
    ]
}

#[test]
fn fixtures_match_transcription() {
    for (name, content) in expected() {
        let path = fixture_dir().join(name);
        let on_disk = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing fixture {name}: {e}"));
        assert_eq!(on_disk.trim_end(), content, "fixture {name} out of sync");
    }
}

#[test]
#[ignore = "writes the fixture files; run once after format changes"]
fn regenerate_fixtures() {
    for (name, content) in expected() {
        fs::write(fixture_dir().join(name), format!("{content}\n")).unwrap();
    }
}

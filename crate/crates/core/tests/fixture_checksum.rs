//! Guards the bundled data files against accidental edits.

use sha2::{Digest, Sha256};

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[test]
fn results_fixture_checksum() {
    assert_eq!(
        sha256_hex(lsgo_core::stats::FIXTURE_CSV.as_bytes()),
        "2f316ec6385550b5be213c82cea6d4894c99f3357cf26a6d49bccb5992a36a6b"
    );
}

#[test]
fn parameter_file_checksum() {
    assert_eq!(
        sha256_hex(include_bytes!("../data/specialist_params.txt")),
        "573b11bf455fd6d37480cdd86276ff63f29d6709c2cdcecb09c6cfc5f72c82ae"
    );
}

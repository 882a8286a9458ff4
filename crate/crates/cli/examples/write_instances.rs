//! Writes the completion instances shipped as `gramsearch` inputs.
//!
//! Run with `cargo run -p sperf --example write_instances -- <out-dir>`.

use std::path::PathBuf;

use sperf::format::PartialGramFile;
use sperf_core::completion;

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/cli/fixtures".into()));
    for (file, p) in [
        ("gram_six_vectors.json", completion::six_vector_system()),
        ("gram_six_vectors_restricted.json", completion::six_vector_system_restricted()),
        ("gram_four_vector_block.json", completion::four_vector_block()),
        ("gram_ratio_seven.json", completion::ratio_seven_system()),
    ] {
        let text = serde_json::to_string_pretty(&PartialGramFile::from_partial(&p)).unwrap();
        std::fs::write(out.join(file), text + "\n").unwrap();
        println!("wrote {file}");
    }
}

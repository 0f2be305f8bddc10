use genus4_core::anchors::ANCHORS;

#[test]
fn every_anchor_is_verbatim_in_the_source_text() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.md");
    let text = std::fs::read_to_string(path).expect("paper.md next to the workspace");
    let missing: Vec<&str> = ANCHORS.iter().filter(|a| !text.contains(a.quote)).map(|a| a.id).collect();
    assert!(missing.is_empty(), "anchors not found verbatim: {missing:?}");
}

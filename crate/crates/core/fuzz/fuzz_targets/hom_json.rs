#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::json::{self, Limits};
use tropjac::SharpFsMonoid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = json::parse(text) else { return };
    let source = SharpFsMonoid::free(2);
    let Ok(h) = json::hom_from_json(&v, Some(&source), &Limits::default()) else { return };

    let back = json::hom_from_json(&json::hom_to_json(&h), None, &Limits::default())
        .expect("emitted hom must parse");
    assert_eq!(back, h);
    if h.validate() {
        for r in h.source().rays() {
            assert!(h.target().contains(&h.apply(r)).unwrap());
        }
    }
});

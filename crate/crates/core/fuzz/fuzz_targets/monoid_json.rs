#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::json::{self, Limits};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = json::parse(text) else { return };
    let Ok(m) = json::monoid_from_json(&v, &Limits::default(), "monoid") else { return };

    let back = json::monoid_from_json(&json::monoid_to_json(&m), &Limits::default(), "monoid")
        .expect("emitted monoid must parse");
    assert_eq!(back, m);
    for r in m.rays() {
        assert!(m.contains(r).unwrap());
        assert!(m.is_bounded_by(r, r).unwrap());
    }
});

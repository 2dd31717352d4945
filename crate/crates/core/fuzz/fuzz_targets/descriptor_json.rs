#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::json;
use tropjac::torsors::{extendability, BaseDescriptor};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = json::parse(text) else { return };
    let Ok(d) = json::descriptor_from_json(&v) else { return };

    assert_eq!(json::descriptor_from_json(&json::descriptor_to_json(&d)).unwrap(), d);
    assert_eq!(d.cartier_dual().cartier_dual(), d);
    for p in [0, 2, 3, 5] {
        let verdict = extendability(&d, &BaseDescriptor::new(p, 1).unwrap());
        let _ = json::verdict_to_json(&verdict);
    }
});

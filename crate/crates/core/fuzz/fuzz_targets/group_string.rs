#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::FgAbelianGroup;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = text.parse::<FgAbelianGroup>() else { return };
    let rendered = g.to_string();
    assert_eq!(rendered.parse::<FgAbelianGroup>().unwrap(), g);
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::json::{self, Limits};

const THETA: &str = r#"{"monoid": {"free": 2}, "vertices": ["u", "v"], "edges": [
    {"id": "a", "tail": "u", "head": "v", "length": [1, 0]},
    {"id": "b", "tail": "u", "head": "v", "length": [0, 1]},
    {"id": "c", "tail": "v", "head": "u", "length": [1, 1]}]}"#;

// Cocycles, cycles and vertex-value files are all parsed against a graph.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = json::parse(text) else { return };
    let g = json::graph_from_str(THETA, &Limits::default()).unwrap();

    if let Ok(f) = json::cocycle_from_json(&g, &v) {
        let _ = f.has_bounded_monodromy();
        let _ = json::cocycle_to_json(&f);
    }
    if let Ok(c) = json::cycle_from_json(&g, &v) {
        g.check_cycle(&c).expect("parsed cycles are cycles");
        let back = json::cycle_from_json(&g, &json::cycle_to_json(&g, &c)).unwrap();
        assert_eq!(back, c);
    }
    if let Ok(values) = json::vertex_values_from_json(&g, &v) {
        let _ = tropjac::plfun::make_pl(&g, values);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use tropjac::json::{self, Limits};

// Small caps keep each run fast; larger inputs are still parsed.
const MAX_EDGES: usize = 12;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let limits = Limits { max_rank: 3 };
    let Ok(g) = json::graph_from_str(text, &limits) else { return };

    let rendered = json::render(&json::graph_to_json(&g));
    let back = json::graph_from_str(&rendered, &limits).expect("emitted graph must parse");
    assert_eq!(back, g);

    let h = g.cycle_basis();
    assert_eq!(h.rank(), g.betti1());
    if g.edges().len() <= MAX_EDGES {
        // a pairing image outside the bounded lattice would be a bug
        if let Err(e) = tropjac::tropjac::trojac(&g) {
            panic!("trojac failed on a valid graph: {e}");
        }
    }
});

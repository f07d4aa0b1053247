#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // &[u8] implements BufRead; parse errors are the point, panics are bugs.
    let _ = frdgen::io::read_edge_list(data);
});

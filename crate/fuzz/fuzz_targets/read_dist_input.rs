#![no_main]

use infolab_core::io::read_dist_input;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = read_dist_input(text);
    }
});

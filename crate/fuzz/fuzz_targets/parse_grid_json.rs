#![no_main]

use infolab_core::io::parse_grid_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(grid) = parse_grid_json(text) {
            let width = grid.first().map_or(0, Vec::len);
            assert!(grid.iter().all(|row| row.len() == width));
        }
    }
});

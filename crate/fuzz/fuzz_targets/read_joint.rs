#![no_main]

use infolab_core::io::{read_joint, write_joint_csv, write_joint_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(joint) = read_joint(text) {
            assert_eq!(read_joint(&write_joint_csv(&joint)).unwrap(), joint);
            assert_eq!(read_joint(&write_joint_json(&joint)).unwrap(), joint);
        }
    }
});

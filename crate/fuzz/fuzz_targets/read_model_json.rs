#![no_main]

use infolab_core::io::read_model_json;
use infolab_core::otp::{ciphertext_dist, posterior_plaintext};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(model) = read_model_json(text) {
            if model.alphabet_size() <= 64 {
                let _ = ciphertext_dist(&model);
                let _ = posterior_plaintext(&model, 0);
            }
        }
    }
});

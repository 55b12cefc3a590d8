#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cfg) = pascomb::config::parse_instance_config(s) {
            // A parsed config must either build or fail cleanly.
            if let Ok(inst) = cfg.to_instance() {
                let _ = pascomb::model::classify(&inst);
            }
            let _ = cfg.omegas();
        }
    }
});

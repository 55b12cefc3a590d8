#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = pascomb::io::read_trace_csv(data) {
        for r in &rows {
            let _ = r.solution();
        }
    }
});

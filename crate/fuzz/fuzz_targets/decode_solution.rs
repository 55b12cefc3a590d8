#![no_main]

use libfuzzer_sys::fuzz_target;
use pascomb::model::Solution;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(sol) = Solution::decode(s) {
            assert_eq!(Solution::decode(&sol.encode()).ok(), Some(sol));
        }
    }
});

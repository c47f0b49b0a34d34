#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if data.len() < 4096 {
        let _ = latkit::term::parse(data);
    }
});

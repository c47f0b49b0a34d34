#![no_main]
use latkit::ladder::{decorate, window, DecorationSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(spec) = DecorationSpec::from_json(data) else { return };
    if spec.insert.len() > 16 {
        return;
    }
    if let Ok(d) = decorate(&window(3).unwrap(), &spec) {
        assert!(d.lattice.len() >= d.base);
    }
});

#![no_main]
use latkit::FiniteLattice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    // a small cap keeps the quadratic validation cheap
    if let Ok(l) = FiniteLattice::from_json_capped(data, 64) {
        let back = FiniteLattice::from_json(&l.to_json()).expect("emitted lattice re-parses");
        assert_eq!(back.covers(), l.covers());
        assert!(l.leq(l.bottom(), l.top()));
    }
});

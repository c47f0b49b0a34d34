#![no_main]
use latkit::term::{canonical, free_leq, parse};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if data.len() > 256 {
        return;
    }
    let Ok(t) = parse(data) else { return };
    let printed = t.to_string();
    assert_eq!(parse(&printed).expect("display output parses"), t);
    let c = canonical(&t);
    assert_eq!(canonical(&c), c);
    assert!(free_leq(&t, &c) && free_leq(&c, &t));
});

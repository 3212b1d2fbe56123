#![no_main]

use libfuzzer_sys::fuzz_target;

// Anything that parses must print canonically and reparse to the same
// problem, and the canonical text must be a fixed point.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(problem) = modgb::parse(text) else {
        return;
    };
    let printed = modgb::print(&problem);
    let back = modgb::parse(&printed).unwrap_or_else(|e| {
        panic!("canonical text failed to reparse: {e}\n{printed}");
    });
    assert_eq!(back.module.spec, problem.module.spec);
    assert_eq!(back.module.order, problem.module.order);
    assert_eq!(back.gens, problem.gens);
    assert_eq!(modgb::print(&back), printed);
});

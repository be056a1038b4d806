#![no_main]

use henkin_forge::coding::code;
use henkin_forge::parse::parse_formula;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_formula(text) {
        let printed = a.to_string();
        let back = parse_formula(&printed).expect("printed formulas parse");
        assert_eq!(back, a, "print/parse changed {printed}");
        let _ = code(&a);
    }
});

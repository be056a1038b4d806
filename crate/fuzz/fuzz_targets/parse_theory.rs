#![no_main]

use henkin_forge::parse::parse_theory;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(theory) = parse_theory(text) {
        let printed: String = theory.members().iter().map(|a| format!("{a}\n")).collect();
        let back = parse_theory(&printed).expect("printed theories parse");
        assert_eq!(back.members(), theory.members());
    }
});

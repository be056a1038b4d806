#![no_main]

use henkin_forge::parse::parse_proof;
use henkin_forge::proof::check;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_proof(text) {
        let printed = p.to_string();
        assert_eq!(parse_proof(&printed).expect("printed proofs parse"), p);
        let _ = check(&p, &[]);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    casimir_entropy_cli::fuzzing::list(data);
});

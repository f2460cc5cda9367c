mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn malformed_sessions_never_crash() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = common::fuzz_parse(&mut rng, 1000);
    assert!(s.failures.is_empty(), "{:#?}", s.failures);
    assert!(s.rejected > 500, "too few malformed inputs: {s:?}");
}

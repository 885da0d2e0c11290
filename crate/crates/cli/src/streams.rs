use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-sample RNG derivation: one 64-bit master seed selects the ChaCha8
/// key, the sample index selects the stream. Sample `i` therefore draws the
/// same values no matter in which order — or on how many workers — samples
/// are evaluated; only the aggregation order could differ, and all
/// aggregations here are commutative.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

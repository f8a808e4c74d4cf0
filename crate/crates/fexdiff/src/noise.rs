use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adds i.i.d. uniform noise on `[-delta1, delta1]` drawn from a ChaCha8 stream seeded by `seed`.
pub fn add_noise(values: &[f64], delta1: f64, seed: u64) -> Vec<f64> {
    assert!(delta1 >= 0.0, "noise level must be nonnegative");
    if delta1 == 0.0 {
        return values.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values
        .iter()
        .map(|v| v + rng.random_range(-delta1..=delta1))
        .collect()
}

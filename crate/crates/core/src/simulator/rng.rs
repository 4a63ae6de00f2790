use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Random stream owned by one link of one trial.
///
/// The ChaCha key is derived from `(master_seed, trial_index)` and the
/// stream id is the pair index; samples are consumed from the start of that
/// stream in order. Any (trial, pair) stream can therefore be rebuilt
/// without touching the others.
pub fn link_stream(master_seed: u64, trial_index: u64, pair_index: u64) -> ChaCha8Rng {
    let mut state = master_seed;
    let mut state = splitmix64(&mut state) ^ trial_index;
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    rng.set_stream(pair_index);
    rng
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("alphabet size must be in 1..=256, got {0}")]
    Alphabet(usize),
    #[error("patterns must be non-empty")]
    EmptyPattern,
}

/// The `k`-th symbol of a generated alphabet. Symbols start at `b'a'` and wrap
/// around the byte range, so the first 26 are the lowercase letters.
#[inline]
pub fn symbol(k: usize) -> u8 {
    b'a'.wrapping_add(k as u8)
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn check_alphabet(alphabet_size: usize) -> Result<(), CorpusError> {
    if (1..=256).contains(&alphabet_size) {
        Ok(())
    } else {
        Err(CorpusError::Alphabet(alphabet_size))
    }
}

pub(crate) fn uniform_from(rng: &mut impl Rng, alphabet_size: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| symbol(rng.gen_range(0..alphabet_size))).collect()
}

/// `len` independent uniform symbols over an alphabet of `alphabet_size`.
pub fn gen_uniform(alphabet_size: usize, len: usize, seed: u64) -> Result<Vec<u8>, CorpusError> {
    check_alphabet(alphabet_size)?;
    Ok(uniform_from(&mut ChaCha8Rng::seed_from_u64(seed), alphabet_size, len))
}

/// Like [`gen_uniform`] but rejects empty output.
pub fn gen_pattern(alphabet_size: usize, len: usize, seed: u64) -> Result<Vec<u8>, CorpusError> {
    if len == 0 {
        return Err(CorpusError::EmptyPattern);
    }
    gen_uniform(alphabet_size, len, seed)
}

/// Overwrites `copies` randomly placed windows of `text` with `pattern`.
/// Returns the offsets written, in the order drawn.
pub fn plant(rng: &mut impl Rng, text: &mut [u8], pattern: &[u8], copies: usize) -> Vec<usize> {
    if pattern.len() > text.len() {
        return Vec::new();
    }
    (0..copies)
        .map(|_| {
            let at = rng.gen_range(0..=text.len() - pattern.len());
            text[at..at + pattern.len()].copy_from_slice(pattern);
            at
        })
        .collect()
}

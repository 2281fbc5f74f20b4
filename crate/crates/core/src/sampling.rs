//! Uniform random standard Young tableaux via the hook walk.
//!
//! Randomness comes from ChaCha8 keyed by a 64-bit seed with a 64-bit stream
//! id. Batch sampling cuts the request into blocks of
//! [`SAMPLES_PER_BLOCK`] tableaux; block `b` reads the keystream from word
//! `b * 2^40`, so batch output depends only on `(seed, stream, shape,
//! count)` and not on how many workers ran it.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableau::{DescentFunction, StandardTableau};

pub const SAMPLES_PER_BLOCK: usize = 1024;

const BLOCK_WORD_SHIFT: u32 = 40;

/// Seedable, jumpable random source. Equal `(seed, stream)` pairs give
/// identical sequences.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Block `b` of this `(seed, stream)`, independent of the current position.
    pub fn block(&self, b: u64) -> RandomSource {
        let mut src = RandomSource::new(self.seed, self.stream);
        src.rng.set_word_pos((b as u128) << BLOCK_WORD_SHIFT);
        src
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// One uniform tableau of `shape` by the Greene–Nijenhuis–Wilf hook walk.
///
/// For `m = n, …, 1`: start at a uniform cell of the remaining diagram, jump
/// to a uniform other cell of the current hook until reaching a corner,
/// then put `m` there and delete the corner.
pub fn sample_syt<R: Rng + ?Sized>(shape: &Partition, rng: &mut R) -> StandardTableau {
    let n = shape.n();
    let mut row_len = shape.parts().to_vec();
    let mut col_len = shape.conjugate().parts().to_vec();
    let mut row_of = vec![0usize; n];
    for m in (1..=n).rev() {
        let mut idx = rng.gen_range(0..m);
        let mut i = 0;
        while idx >= row_len[i] {
            idx -= row_len[i];
            i += 1;
        }
        let mut j = idx;
        loop {
            let arm = row_len[i] - j - 1;
            let leg = col_len[j] - i - 1;
            if arm + leg == 0 {
                break;
            }
            let step = rng.gen_range(0..arm + leg);
            if step < arm {
                j += step + 1;
            } else {
                i += step - arm + 1;
            }
        }
        row_of[m - 1] = i;
        row_len[i] -= 1;
        col_len[j] -= 1;
    }
    StandardTableau::from_row_sequence(shape, &row_of)
}

/// Applies `map` to `count` independent uniform tableaux, in sample order.
/// `workers <= 1` runs on the calling thread.
pub fn map_samples<T, F>(
    shape: &Partition,
    count: usize,
    source: &RandomSource,
    workers: usize,
    map: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(StandardTableau) -> Result<T> + Sync,
{
    let blocks = count.div_ceil(SAMPLES_PER_BLOCK);
    let run_block = |b: usize| -> Result<Vec<T>> {
        let mut rng = source.block(b as u64);
        let len = SAMPLES_PER_BLOCK.min(count - b * SAMPLES_PER_BLOCK);
        (0..len).map(|_| map(sample_syt(shape, &mut rng))).collect()
    };
    let per_block: Vec<Vec<T>> = if workers <= 1 {
        (0..blocks).map(run_block).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..blocks)
                .into_par_iter()
                .map(run_block)
                .collect::<Result<_>>()
        })?
    };
    Ok(per_block.into_iter().flatten().collect())
}

pub fn sample_tableaux(
    shape: &Partition,
    count: usize,
    source: &RandomSource,
    workers: usize,
) -> Result<Vec<StandardTableau>> {
    map_samples(shape, count, source, workers, Ok)
}

/// `d_f` over `count` independent uniform tableaux, in floating point.
pub fn sample_statistics(
    shape: &Partition,
    f: &DescentFunction,
    count: usize,
    source: &RandomSource,
    workers: usize,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be >= 1".into()));
    }
    f.check_domain(shape.n())?;
    map_samples(shape, count, source, workers, |t| t.descent_statistic_f64(f))
}

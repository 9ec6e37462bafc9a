//! Singular points of surfaces in P^3 over finite fields of characteristic 2.
//!
//! The crate is organized bottom-up: [`ff2k`] implements GF(2^m), [`mpoly`]
//! and [`upoly`] polynomials over it, [`geometry`] projective points and
//! conics, [`singular`] the enumeration and classification of singular
//! points, and [`families`] the explicit surfaces whose singular loci are
//! known in closed form. [`verify`] checks those closed forms against the
//! enumeration.

pub mod families;
pub mod ff2k;
pub mod geometry;
pub mod linalg;
pub mod mpoly;
pub mod singular;
pub mod upoly;
pub mod verify;

/// Seed used for every randomized step unless overridden.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Whether data-parallel loops use the rayon pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

/// `(0..n).map(f).collect()`, in parallel when requested and compiled in.
/// The output order is always `0..n`.
pub fn for_each_index<R, F>(par: Parallelism, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par == Parallelism::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..n).map(f).collect()
}

/// Runs `f` on a pool of `threads` workers (a no-op wrapper without the
/// `parallel` feature).
pub fn run_with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

use serde::Serialize;

/// Feasibility guards and the seed for randomized subroutines.
///
/// Every exponential search in the crate checks one of these before starting and
/// fails with [`Error::CapExceeded`](crate::Error::CapExceeded) instead of running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Submodule enumeration runs only when `p^length <= 2^submodule_bits`.
    pub submodule_bits: u32,
    /// Exhaustive searches over a Hom space or an endomorphism quotient of
    /// dimension `d` run only when `p^d <= 2^exhaustive_bits`.
    pub exhaustive_bits: u32,
    /// Random samples tried before an exhaustive search.
    pub random_tries: usize,
    /// Length bound override for indecomposable enumeration (`None`: default by type).
    pub enumerate_len: Option<usize>,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { submodule_bits: 12, exhaustive_bits: 16, random_tries: 64, enumerate_len: None, seed: 0x5eed }
    }
}

impl Caps {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn exhaustive_ok(&self, p: u8, dim: usize) -> bool {
        dim as f64 * (p as f64).log2() <= self.exhaustive_bits as f64 + 1e-9
    }

    pub(crate) fn rng(&self, salt: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ColoredGraph;
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 100_000;

/// Connected simple 3-regular graph from the pairing model, resampling
/// until the pairing has no loops, no multi-edges and is connected.
pub fn random_3regular(n: usize, seed: u64) -> Result<ColoredGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "3-regular graphs need an even vertex count >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_ATTEMPTS {
        points.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = ColoredGraph::from_edges(n, &edges) {
            if g.is_connected() {
                return Ok(g);
            }
        }
        points.sort_unstable();
    }
    Err(Error::BudgetExceeded(format!(
        "no simple connected pairing after {MAX_ATTEMPTS} attempts"
    )))
}

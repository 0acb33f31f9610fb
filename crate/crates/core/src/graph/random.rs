use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Erdős–Rényi `G(n, q)`: pairs `(i, j)`, `i < j`, are visited in
/// lexicographic order and each consumes exactly one uniform deviate.
pub fn sample_erdos_renyi(n: usize, q: f64, seed: u64) -> Result<Graph> {
    sample_erdos_renyi_stream(n, q, seed, 0)
}

/// As [`sample_erdos_renyi`], drawing from an independent stream of the
/// counter-based generator. Ensembles use the sample index as stream id.
pub fn sample_erdos_renyi_stream(n: usize, q: f64, seed: u64, stream: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid(format!("edge probability {q} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let u: f64 = rng.random();
            if u < q {
                edges.push((i, j, 1));
            }
        }
    }
    Graph::from_edges(n, 2, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        for seed in 0..5 {
            assert_eq!(sample_erdos_renyi(7, 0.0, seed).unwrap().edge_count(), 0);
            assert_eq!(sample_erdos_renyi(7, 1.0, seed).unwrap().edge_count(), 21);
        }
    }

    #[test]
    fn deterministic() {
        let a = sample_erdos_renyi(12, 0.4, 99).unwrap();
        let b = sample_erdos_renyi(12, 0.4, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_erdos_renyi_stream(12, 0.4, 99, 1).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(sample_erdos_renyi(3, 1.5, 0).is_err());
        assert!(sample_erdos_renyi(3, f64::NAN, 0).is_err());
    }

    #[test]
    fn edge_count_mean() {
        let (n, q, samples) = (8usize, 0.3, 10_000u64);
        let pairs = (n * (n - 1) / 2) as f64;
        let counts: Vec<f64> = (0..samples)
            .map(|s| sample_erdos_renyi_stream(n, q, 2024, s).unwrap().edge_count() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / samples as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
        let se = (var / samples as f64).sqrt();
        assert!((mean - q * pairs).abs() < 3.0 * se, "mean {mean} vs {}", q * pairs);
    }
}

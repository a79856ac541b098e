//! Seeded `G(n, 1/2)` sampling and Monte Carlo checks of the random-graph
//! energy asymptotics.
//!
//! Randomness comes from a splitmix64 stream so that a `(n, seed)` pair names
//! the same graph in any implementation: potential edges are visited
//! row-major over `i < j`, and each consumes the next bit of the stream,
//! most significant bit of each 64-bit output first.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::graphs::{canonical_pairs, Graph};
use crate::linalg::{jacobi_eigenvalues, singular_values_symmetric, LinalgError};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// First output of a splitmix64 stream seeded with `x`.
pub fn splitmix64(x: u64) -> u64 {
    SplitMix64::new(x).next_u64()
}

/// Seed of trial (or restart) `t` derived from a base seed.
pub fn derive_seed(seed: u64, t: u64) -> u64 {
    splitmix64(seed ^ t.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

/// Bits of a splitmix64 stream, most significant first.
#[derive(Debug, Clone)]
pub struct BitStream {
    rng: SplitMix64,
    word: u64,
    left: u32,
}

impl BitStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::new(seed),
            word: 0,
            left: 0,
        }
    }

    pub fn next_bit(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        self.left -= 1;
        (self.word >> self.left) & 1 == 1
    }
}

/// `G(n, 1/2)` sample: each pair `i < j` is an edge iff its stream bit is 1.
pub fn sample_gnp_half(n: usize, seed: u64) -> Graph {
    let mut bits = BitStream::new(seed);
    let edges: Vec<_> = canonical_pairs(n).into_iter().filter(|_| bits.next_bit()).collect();
    Graph::from_edges(n.max(1), edges).expect("canonical pairs form a simple graph")
}

/// Energy and the two largest singular values of one sampled adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trial {
    pub energy: f64,
    pub sigma1: f64,
    pub sigma2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Mean of `E / n^{3/2}`.
    pub mean_energy_ratio: f64,
    /// Mean of `sigma_1 / n`.
    pub mean_sigma1_ratio: f64,
    /// Maximum of `sigma_2 / sqrt(n)`.
    pub max_sigma2_ratio: f64,
    pub per_trial: Vec<Trial>,
}

impl EnsembleStats {
    /// Folds per-trial results in order into the aggregate fields.
    pub fn aggregate(n: usize, seed: u64, per_trial: Vec<Trial>) -> Self {
        let nf = n as f64;
        let count = per_trial.len() as f64;
        let mut energy_sum = 0.0;
        let mut sigma1_sum = 0.0;
        let mut sigma2_max = f64::NEG_INFINITY;
        for t in &per_trial {
            energy_sum += t.energy / nf.powf(1.5);
            sigma1_sum += t.sigma1 / nf;
            sigma2_max = sigma2_max.max(t.sigma2 / nf.sqrt());
        }
        Self {
            n,
            trials: per_trial.len(),
            seed,
            mean_energy_ratio: energy_sum / count,
            mean_sigma1_ratio: sigma1_sum / count,
            max_sigma2_ratio: sigma2_max,
            per_trial,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Runs `trials` independent `G(n, 1/2)` samples; trial `t` uses seed
/// `derive_seed(seed, t)`. Trials run in parallel and are folded in trial
/// order, so the result does not depend on scheduling.
pub fn montecarlo(n: usize, trials: usize, seed: u64) -> Result<EnsembleStats, EnsembleError> {
    if n < 2 {
        return Err(EnsembleError::Precondition(format!("n must be at least 2, got {n}")));
    }
    if trials == 0 {
        return Err(EnsembleError::Precondition("trials must be at least 1".into()));
    }
    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let g = sample_gnp_half(n, derive_seed(seed, t));
            let sv = singular_values_symmetric(&g.adjacency())?;
            Ok(Trial {
                energy: sv.energy(),
                sigma1: sv.values[0],
                sigma2: sv.values[1],
            })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    Ok(EnsembleStats::aggregate(n, seed, per_trial))
}

/// Panel count used by [`semicircle_energy_constant`].
///
/// The integrand has a square-root singularity at 1, so composite Simpson
/// converges only like `h^{3/2}` there; a million panels put the error near
/// `1e-10`.
pub const SEMICIRCLE_PANELS: usize = 1_000_000;

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = (panels.max(2) + 1) & !1;
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// `|x| sqrt(1 - x^2)` on `[-1, 1]`, zero outside.
pub fn semicircle_moment_integrand(x: f64) -> f64 {
    x.abs() * (1.0 - x * x).max(0.0).sqrt()
}

/// `(2/pi) * integral_{-1}^{1} |x| sqrt(1 - x^2) dx`, which equals `4/(3 pi)`.
/// The integrand is even, so it is integrated over `[0, 1]` and doubled.
pub fn semicircle_energy_constant_with(panels: usize) -> f64 {
    2.0 / PI * 2.0 * simpson(semicircle_moment_integrand, 0.0, 1.0, panels)
}

pub fn semicircle_energy_constant() -> f64 {
    semicircle_energy_constant_with(SEMICIRCLE_PANELS)
}

/// Semicircle density `(2/pi) sqrt(1 - x^2)` on `[-1, 1]`.
pub fn semicircle_density(x: f64) -> f64 {
    2.0 / PI * (1.0 - x * x).max(0.0).sqrt()
}

/// Closed-form distribution function of the semicircle density.
pub fn semicircle_cdf(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI
}

/// Lower edge of the histogram window, in units of `sqrt(n)`.
pub const HISTOGRAM_LO: f64 = -1.25;
/// Upper edge of the histogram window, in units of `sqrt(n)`.
pub const HISTOGRAM_HI: f64 = 1.25;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub sample_count: usize,
}

impl Histogram {
    /// Semicircle mass of each bin.
    pub fn reference_masses(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| semicircle_cdf(w[1]) - semicircle_cdf(w[0]))
            .collect()
    }

    /// `sum |mass - reference|` over bins.
    pub fn l1_distance_to_semicircle(&self) -> f64 {
        self.masses
            .iter()
            .zip(self.reference_masses())
            .map(|(m, r)| (m - r).abs())
            .sum()
    }

    /// `bin_lo,bin_hi,mass,reference_mass` rows, header first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,mass,reference_mass\n");
        for ((w, m), r) in self.bin_edges.windows(2).zip(&self.masses).zip(self.reference_masses()) {
            out.push_str(&format!("{:?},{:?},{:?},{:?}\n", w[0], w[1], m, r));
        }
        out
    }
}

/// Histogram of the adjacency eigenvalues divided by `sqrt(n)`, over `bins`
/// equal bins spanning `[-1.25, 1.25]`. Values outside the window (the Perron
/// eigenvalue, for one) are counted in the nearest end bin.
pub fn spectral_histogram(g: &Graph, bins: usize) -> Result<Histogram, EnsembleError> {
    if bins < 2 {
        return Err(EnsembleError::Precondition(format!("bins must be at least 2, got {bins}")));
    }
    let n = g.order();
    let scale = (n as f64).sqrt();
    let eigenvalues = jacobi_eigenvalues(&g.adjacency())?;

    let width = (HISTOGRAM_HI - HISTOGRAM_LO) / bins as f64;
    let bin_edges: Vec<f64> = (0..=bins)
        .map(|k| if k == bins { HISTOGRAM_HI } else { HISTOGRAM_LO + k as f64 * width })
        .collect();
    let mut counts = vec![0usize; bins];
    for lambda in eigenvalues {
        let x = lambda / scale;
        let k = ((x - HISTOGRAM_LO) / width).floor();
        let k = if k < 0.0 { 0 } else { (k as usize).min(bins - 1) };
        counts[k] += 1;
    }
    Ok(Histogram {
        bin_edges,
        masses: counts.iter().map(|&c| c as f64 / n as f64).collect(),
        sample_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn splitmix_reference_outputs() {
        // Reference sequence for seed 1234567 from the published C implementation.
        let mut rng = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(got, vec![6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn bit_stream_is_msb_first() {
        let word = splitmix64(99);
        let mut bits = BitStream::new(99);
        for k in (0..64).rev() {
            assert_eq!(bits.next_bit(), (word >> k) & 1 == 1);
        }
    }

    #[test]
    fn trivial_samples() {
        let g = sample_gnp_half(1, 5);
        assert_eq!((g.order(), g.size()), (1, 0));
        assert_eq!(sample_gnp_half(30, 42), sample_gnp_half(30, 42));
        assert_ne!(sample_gnp_half(30, 42), sample_gnp_half(30, 43));
    }

    #[test]
    fn sample_edge_count_near_binomial_mean() {
        let total: usize = (0..20).map(|s| sample_gnp_half(200, s).size()).sum();
        let mean = total as f64 / 20.0;
        assert!((mean - 9950.0).abs() <= 0.05 * 9950.0, "mean {mean}");
    }

    #[test]
    fn montecarlo_preconditions() {
        assert!(montecarlo(1, 3, 0).is_err());
        assert!(montecarlo(5, 0, 0).is_err());
    }

    #[test]
    fn montecarlo_small_invariants() {
        let stats = montecarlo(24, 6, 11).unwrap();
        assert_eq!(stats.per_trial.len(), 6);
        for t in &stats.per_trial {
            assert!(t.sigma1 >= t.sigma2 && t.sigma2 >= 0.0);
            assert!(t.energy >= t.sigma1 + t.sigma2);
        }
        let again = EnsembleStats::aggregate(stats.n, stats.seed, stats.per_trial.clone());
        assert_eq!(again, stats);
        assert_eq!(montecarlo(24, 6, 11).unwrap(), stats);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 6);
        assert_abs_diff_eq!(v, 3.75 - 3.0 + 3.0, epsilon = 1e-13);
    }

    #[test]
    fn semicircle_constant() {
        assert_eq!(semicircle_moment_integrand(0.0), 0.0);
        assert_eq!(semicircle_moment_integrand(1.0), 0.0);
        assert_eq!(semicircle_moment_integrand(-1.0), 0.0);
        let c = semicircle_energy_constant();
        assert!((c - 4.0 / (3.0 * PI)).abs() <= 1e-8);
        let coarse = semicircle_energy_constant_with(SEMICIRCLE_PANELS / 2);
        assert!((c - coarse).abs() <= 1e-8);
        assert!(c > 0.4244131 && c < 0.4244132);
    }

    #[test]
    fn semicircle_cdf_matches_density() {
        assert_abs_diff_eq!(semicircle_cdf(-1.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(semicircle_cdf(1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(semicircle_cdf(0.0), 0.5, epsilon = 1e-15);
        let by_quadrature = simpson(semicircle_density, -0.3, 0.6, 2000);
        assert_abs_diff_eq!(semicircle_cdf(0.6) - semicircle_cdf(-0.3), by_quadrature, epsilon = 1e-12);
    }

    #[test]
    fn histogram_examples() {
        let k2 = crate::graphs::Family::Complete(2).build().unwrap();
        let h = spectral_histogram(&k2, 2).unwrap();
        assert_eq!(h.masses, vec![0.5, 0.5]);
        assert_eq!(h.bin_edges, vec![-1.25, 0.0, 1.25]);

        let e5 = Graph::empty(5).unwrap();
        let h = spectral_histogram(&e5, 5).unwrap();
        assert_eq!(h.masses, vec![0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(h.sample_count, 5);

        assert!(spectral_histogram(&e5, 1).is_err());
    }

    #[test]
    fn histogram_saturates_outliers() {
        let k10 = crate::graphs::Family::Complete(10).build().unwrap();
        // eigenvalues 9 and -1 (x9); scaled: 2.85 and -0.316
        let h = spectral_histogram(&k10, 10).unwrap();
        assert_eq!(h.masses[9], 0.1);
        assert_abs_diff_eq!(h.masses.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        let csv = h.to_csv();
        assert!(csv.starts_with("bin_lo,bin_hi,mass,reference_mass\n-1.25,-1.0,"));
        assert_eq!(csv.lines().count(), 11);
    }
}

//! Reproducible evaluation points: a Kronecker (golden-ratio) sequence
//! with a seeded Cranley–Patterson shift, mapped into a domain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::Domain;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Low-discrepancy point stream inside a domain.
#[derive(Clone, Debug)]
pub struct PointSequence {
    shift: f64,
    index: u64,
    domain: Domain,
    seed: u64,
}

impl PointSequence {
    pub fn new(seed: u64, domain: Domain) -> Self {
        let shift = ChaCha8Rng::seed_from_u64(seed).gen::<f64>();
        PointSequence {
            shift,
            index: 0,
            domain,
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_point(&mut self) -> f64 {
        self.index += 1;
        let u = (self.shift + self.index as f64 * GOLDEN).fract();
        // keep off the boundary
        let u = 0.02 + 0.96 * u;
        map_unit(u, self.domain)
    }

    pub fn take_points(&mut self, k: usize) -> Vec<f64> {
        (0..k).map(|_| self.next_point()).collect()
    }
}

/// Maps `u ∈ (0, 1)` into the bulk of `domain`: affinely for intervals,
/// onto `[-3, 3]` for the real line and `[0, 6]` for the half line.
fn map_unit(u: f64, domain: Domain) -> f64 {
    match domain {
        Domain::Interval { a, b } => a + u * (b - a),
        Domain::RealLine => -3.0 + 6.0 * u,
        Domain::HalfLine => 6.0 * u,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_inside() {
        let mut a = PointSequence::new(7, Domain::unit());
        let mut b = PointSequence::new(7, Domain::unit());
        let pa = a.take_points(50);
        assert_eq!(pa, b.take_points(50));
        assert!(pa.iter().all(|&x| x > 0.0 && x < 1.0));
        let mut c = PointSequence::new(8, Domain::unit());
        assert_ne!(pa[0], c.next_point());
        let mut h = PointSequence::new(1, Domain::HalfLine);
        assert!(h.take_points(20).iter().all(|&x| x > 0.0));
    }
}

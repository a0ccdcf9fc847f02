use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane::{DirectedLine, HPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut ChaCha8Rng, max_rho: f64) -> HPoint {
    let rho = rng.gen_range(0.0..max_rho);
    let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    HPoint::from_polar(rho, theta).unwrap()
}

pub fn random_line(rng: &mut ChaCha8Rng, max_rho: f64) -> DirectedLine {
    let p = random_point(rng, max_rho);
    let heading = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    DirectedLine::through_heading(&p, heading)
}

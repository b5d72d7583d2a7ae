//! Deterministic pseudo-random supports for property suites.
//!
//! Each support has three axial points `x^a, y^b, z^c` with exponents in
//! `[2, 9]` plus up to four extra points with coordinates at most 9,
//! rejection-sampled until the polyhedron is simplicial (convenience holds
//! by construction). Bounds this small keep every parallelepiped scan well
//! under 10⁵ candidate points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::newton::NewtonPolyhedron;
use crate::polyparse::Support;

const RETRY_CAP: usize = 200;

/// Generate `count` supports reproducibly from `seed`. The same seed always
/// yields the same sequence; a longer run extends a shorter one.
pub fn generate_corpus(seed: u64, count: usize) -> Vec<Support> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut reseed_round = 0u64;
    while out.len() < count {
        let mut accepted = None;
        for _ in 0..RETRY_CAP {
            let candidate = sample(&mut rng);
            let poly = NewtonPolyhedron::build(&candidate);
            if poly.is_simplicial() && poly.is_convenient() {
                accepted = Some(candidate);
                break;
            }
        }
        match accepted {
            Some(s) => out.push(s),
            None => {
                // Practically unreachable; keeps generation total and
                // deterministic if it ever triggers.
                reseed_round += 1;
                rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(reseed_round)));
            }
        }
    }
    out
}

fn sample(rng: &mut ChaCha8Rng) -> Support {
    let a = rng.gen_range(2..=9);
    let b = rng.gen_range(2..=9);
    let c = rng.gen_range(2..=9);
    let mut pts = vec![vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]];
    let extras = rng.gen_range(0..=4);
    let mut tries = 0;
    let mut added = 0;
    while added < extras && tries < 50 {
        tries += 1;
        let p = vec![
            rng.gen_range(0..=9i64),
            rng.gen_range(0..=9i64),
            rng.gen_range(0..=9i64),
        ];
        if p.iter().all(|&x| x == 0) || pts.contains(&p) {
            continue;
        }
        pts.push(p);
        added += 1;
    }
    Support::from_points(3, pts).expect("sampled support is valid")
}

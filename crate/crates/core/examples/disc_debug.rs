use std::time::Instant;

use specset::linalg::operator_norm;
use specset::numrange::{ando_radius, numerical_radius};
use specset::rng::CounterRng;

fn main() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let trials = 30;
    for i in 0..trials {
        let mut rng = CounterRng::substream(0xA0D0, i);
        let n = 2 + (rng.below(7) as usize);
        let t = rng.matrix(n, n);
        let sweep = numerical_radius(&t, 1e-9).value;
        let t0 = Instant::now();
        let (mu, cert) = ando_radius(&t, 1e-5).unwrap();
        let dt = t0.elapsed().as_millis();
        let err = (mu - sweep).abs();
        worst = worst.max(err);
        let scale = 1.0 + operator_norm(&t);
        println!(
            "trial {i:2} n={n}: err={err:.2e} min_eig={:+.2e} rel={:+.1e} ({dt} ms)",
            cert.block_min_eig,
            cert.block_min_eig / scale
        );
    }
    println!(
        "worst |mu - sweep| = {worst:.3e}, total {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

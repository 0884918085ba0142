use specset::cmatrix::CMatrix;
use specset::numrange::{ando_radius, numerical_radius, support_value_only};
use specset::rng::CounterRng;
use specset::linalg::jacobi_eig;

fn main() {
    let mut rng = CounterRng::substream(0xA0D0, 14);
    let n = 2 + (rng.below(7) as usize);
    let t = rng.matrix(n, n);
    let w = numerical_radius(&t, 1e-10);
    println!("n={n} w={:.12} theta*={:.6}", w.value, w.theta_star);

    // Scan for near-tied support maxima across angles.
    let k = 2880;
    let mut best: Vec<(f64, f64)> = vec![];
    for j in 0..k {
        let th = std::f64::consts::TAU * j as f64 / k as f64;
        let h = support_value_only(&t, th);
        if w.value - h < 1e-3 {
            best.push((th, w.value - h));
        }
    }
    println!("angles within 1e-3 of the max: {} entries", best.len());
    for (th, gap) in best.iter().take(12) {
        println!("  theta={th:.4} gap={gap:.2e}");
    }

    match ando_radius(&t, 1e-6) {
        Ok((mu, cert)) => {
            println!("ando mu={mu:.12}");
            let block = CMatrix::block2x2(&cert.a, &t, &t.adjoint(), &cert.b);
            let (vals, _) = jacobi_eig(&block);
            println!("cert bottom eigs: {:?}", &vals[..6.min(vals.len())]);
        }
        Err(e) => println!("ando error: {e}"),
    }
}

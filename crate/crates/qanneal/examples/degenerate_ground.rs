//! A degenerate ground level splits the final weight evenly: every ground
//! configuration ends with the same probability, and their sum follows the
//! closed form for an M-fold degenerate level.

use qanneal::analytic::degenerate_prediction;
use qanneal::dynamics::{evolve, EvolveOptions};
use qanneal::ising::IsingInstance;
use qanneal::schedule::{Protocol, Schedule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn main() -> qanneal::Result<()> {
    let n_qubits = 6;
    let dim = 1usize << n_qubits;
    let g = 2.0;

    println!("N = {n_qubits}, g = {g}\n");
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "M", "sum P", "closed form", "max P_i", "min P_i");
    for m in [1usize, 2, 8, 16] {
        // spectrum with an exactly M-fold ground level
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut draws: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        draws.sort_by(f64::total_cmp);
        let mut diagonal = vec![draws[0]; m];
        diagonal.extend_from_slice(&draws[m..]);
        let instance = IsingInstance::from_diagonal(n_qubits, diagonal)?;
        assert_eq!(instance.stats().ground_degeneracy, m);

        let schedule = Schedule::new(Protocol::ProjectorInvT, g, &instance, 100.0, 1000.0)?;
        let opts = EvolveOptions { rel_tol: 1e-9, abs_tol: 1e-11, ..Default::default() };
        let run = evolve(&instance, &schedule, &opts)?;

        let summed: f64 = run.probabilities[..m].iter().sum();
        let lo = run.probabilities[..m].iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = run.probabilities[..m].iter().cloned().fold(0.0f64, f64::max);
        println!(
            "{m:>4} {summed:>12.6} {:>12.6} {hi:>12.6} {lo:>12.6}",
            degenerate_prediction(g, dim, m)?
        );
    }
    println!("\nweight inside the level stays uniform while the level total grows with M");
    Ok(())
}

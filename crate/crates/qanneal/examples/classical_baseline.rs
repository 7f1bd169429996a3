//! Residual energy versus compute budget on flat-density random landscapes:
//! closed-form quantum annealing falls as ~1/budget while the coupling stays
//! small against the state count, then crosses over to exponential decay;
//! simulated annealing improves in plateaus and stalls. A small-system table
//! cross-checks the integrator against the closed form point by point.

use qanneal::experiments::{relaxation_curve, RelaxationMode};
use qanneal::ising::IsingInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn flat_spectrum_instance(n_qubits: usize, seed: u64) -> qanneal::Result<IsingInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diagonal: Vec<f64> = (0..1usize << n_qubits).map(|_| rng.random_range(0.0..1.0)).collect();
    IsingInstance::from_diagonal(n_qubits, diagonal)
}

fn main() -> qanneal::Result<()> {
    let budgets: Vec<f64> = (0..7).map(|i| 2.0f64.powi(i + 2)).collect();
    let wide = flat_spectrum_instance(12, 99)?;

    let analytic = relaxation_curve(RelaxationMode::QuantumProtocol1Analytic, &wide, &budgets, 1)?;
    let classical = relaxation_curve(RelaxationMode::ClassicalSa, &wide, &budgets, 1)?;

    println!("N = 12 flat-density landscape\n");
    println!("{:>10} {:>15} {:>15}", "budget", "quantum exact", "classical SA");
    for i in 0..budgets.len() {
        println!("{:>10.0} {:>15.6} {:>15.6}", budgets[i], analytic[i].eps_res, classical[i].eps_res);
    }

    // slope of the exact curve over the upper half of the budget range;
    // ~-1 while the coupling stays well below the state count
    let k = budgets.len() / 2;
    let slope = {
        let xs: Vec<f64> = budgets[k..].iter().map(|b| b.ln()).collect();
        let ys: Vec<f64> = analytic[k..].iter().map(|p| p.eps_res.ln()).collect();
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    };
    println!("\nexact-curve slope over the upper half: {slope:.3}");

    // integrator vs closed form on a system small enough to run quickly
    let small = flat_spectrum_instance(6, 99)?;
    let small_budgets: Vec<f64> = vec![4.0, 8.0, 16.0, 32.0];
    let numeric = relaxation_curve(RelaxationMode::QuantumProtocol1Numeric, &small, &small_budgets, 1)?;
    let exact = relaxation_curve(RelaxationMode::QuantumProtocol1Analytic, &small, &small_budgets, 1)?;
    println!("\nN = 6 cross-check, integrated vs closed form");
    println!("{:>10} {:>13} {:>13} {:>10}", "budget", "integrated", "closed form", "ratio");
    for i in 0..small_budgets.len() {
        println!(
            "{:>10.0} {:>13.6} {:>13.6} {:>10.4}",
            small_budgets[i],
            numeric[i].eps_res,
            exact[i].eps_res,
            numeric[i].eps_res / exact[i].eps_res
        );
    }
    Ok(())
}

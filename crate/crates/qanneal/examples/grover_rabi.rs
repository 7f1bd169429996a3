//! Unstructured search as a two-level Rabi problem: a constant coupling
//! tuned slightly off the ideal point swings the population onto the marked
//! state in a time scaling with the square root of the search space.

use qanneal::analytic::grover_params;
use qanneal::dynamics::grover::evolve_grover;
use qanneal::dynamics::EvolveOptions;

fn main() -> qanneal::Result<()> {
    println!("{:>4} {:>8} {:>14} {:>12} {:>10}", "N", "dim", "duration", "g_const", "P(marked)");
    for n_qubits in [4usize, 6, 8, 10, 12] {
        let dim = 1usize << n_qubits;
        let params = grover_params(dim, 1.0)?;
        let res = evolve_grover(n_qubits, 1.0, &EvolveOptions::default())?;
        println!(
            "{n_qubits:>4} {dim:>8} {:>14.2} {:>12.6} {:>10.6}",
            params.duration, params.g_const, res.p0
        );
    }

    // a trace of the half Rabi swing at N = 8
    let opts = EvolveOptions { record_trace: true, trace_points: 17, ..Default::default() };
    let res = evolve_grover(8, 1.0, &opts)?;
    println!("\npopulation transfer at N = 8:");
    for (t, p0) in res.trace.as_ref().expect("tracing was on") {
        println!("  t = {t:8.2}  P = {p0:.4} |{}", "#".repeat((p0 * 50.0) as usize));
    }

    // detuning the coupling spoils the transfer
    println!("\ndetuning sweep at N = 8:");
    for eps in [0.5, 1.0, 2.0] {
        let res = evolve_grover(8, eps, &EvolveOptions::default())?;
        println!("  eps = {eps:3.1}  P(marked) = {:.4}", res.p0);
    }
    Ok(())
}

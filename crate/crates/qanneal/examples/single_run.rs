//! One anneal end to end: draw a random 8-qubit instance, integrate the
//! inverse-time protocol, and compare the final rank distribution against
//! the closed form.

use qanneal::analytic::geometric_prediction;
use qanneal::dynamics::{evolve, EvolveOptions};
use qanneal::ising::{IsingInstance, RandomMode};
use qanneal::schedule::{Protocol, Schedule};

fn main() -> qanneal::Result<()> {
    let instance = IsingInstance::random(RandomMode::FullRandomCouplings, 8, 42)?;
    let stats = instance.stats();
    println!(
        "instance: N = {}, bandwidth {:.3}, ground energy {:.3}",
        instance.n_qubits(),
        stats.bandwidth,
        stats.ground_energy
    );

    let g = 2.0;
    let schedule = Schedule::new(Protocol::ProjectorInvT, g, &instance, 100.0, 1000.0)?;
    println!(
        "schedule: tau_a = {:.3e}, t0 = {:.3e}, T = {:.3e}",
        schedule.tau_a(),
        schedule.t0(),
        schedule.t_end()
    );

    let opts = EvolveOptions { rel_tol: 1e-9, abs_tol: 1e-11, ..Default::default() };
    let run = evolve(&instance, &schedule, &opts)?;
    let pred = geometric_prediction(g, instance.dim())?;

    println!("\n{:>4} {:>12} {:>12}", "n", "numeric", "closed form");
    for n in 0..8 {
        println!("{n:>4} {:12.6} {:12.6}", run.probabilities[n], pred.probabilities[n]);
    }

    let tvd: f64 = 0.5
        * run
            .probabilities
            .iter()
            .zip(&pred.probabilities)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    println!("\nTVD(numeric, closed form) = {tvd:.2e}");
    println!("steps = {}, norm error = {:.1e}", run.stats.steps, run.norm_error);
    Ok(())
}

//! Runs the three annealing protocols on one instance at matched annealing
//! time and sweeps the coupling strength: the inverse-time projector
//! protocol keeps the lowest excitation everywhere.

use qanneal::dynamics::{evolve, EvolveOptions};
use qanneal::ising::{IsingInstance, RandomMode};
use qanneal::schedule::{Protocol, Schedule};

fn main() -> qanneal::Result<()> {
    let instance = IsingInstance::random(RandomMode::FullRandomCouplings, 10, 1)?;
    // the inverse-square protocol accumulates phase linearly in t0_factor, so
    // it gets a later start and a tighter tolerance to hold the norm budget
    let protocols = [
        (Protocol::ProjectorInvT, 1e-9, 1000.0),
        (Protocol::TransverseInvT, 1e-10, 1000.0),
        (Protocol::ProjectorInvT2, 1e-9, 100.0),
    ];

    println!("N = 10, ratio_T = 100, shared tau_a per column\n");
    println!("{:>6} {:>10} {:>10} {:>10}", "g", "p1", "p2", "p3");
    for i in 0..6 {
        let g = 2.0f64.powi(i - 1);
        let mut row = Vec::new();
        for (proto, rel, t0f) in protocols {
            let sched = Schedule::new(proto, g, &instance, 100.0, t0f)?;
            let opts = EvolveOptions { rel_tol: rel, abs_tol: rel * 1e-2, ..Default::default() };
            row.push(evolve(&instance, &sched, &opts)?.n_bar);
        }
        println!("{g:6.2} {:10.5} {:10.5} {:10.5}", row[0], row[1], row[2]);
    }
    Ok(())
}

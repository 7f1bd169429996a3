//! Records the excitation curve of a single anneal on a logarithmic time
//! axis and prints it as a text strip chart: most of the relaxation happens
//! within a few annealing times, then the state freezes.

use qanneal::dynamics::{evolve, EvolveOptions};
use qanneal::ising::{IsingInstance, RandomMode};
use qanneal::schedule::{Protocol, Schedule};

fn main() -> qanneal::Result<()> {
    let instance = IsingInstance::random(RandomMode::FullRandomCouplings, 8, 7)?;
    let schedule = Schedule::new(Protocol::ProjectorInvT, 2.0, &instance, 1000.0, 100.0)?;
    let opts = EvolveOptions {
        rel_tol: 1e-9,
        abs_tol: 1e-11,
        record_trace: true,
        trace_points: 33,
        ..Default::default()
    };
    let run = evolve(&instance, &schedule, &opts)?;
    let trace = run.trace.as_ref().expect("tracing was on");

    let tau = schedule.tau_a();
    println!("t / tau_a    n_bar     p0");
    for point in trace.iter().step_by(2) {
        let bar_len = (point.n_bar * 60.0).round() as usize;
        println!(
            "{:9.3} {:8.4} {:7.4} |{}",
            point.t / tau,
            point.n_bar,
            point.p0,
            "#".repeat(bar_len)
        );
    }
    println!(
        "\nfinal: n_bar = {:.5}, p0 = {:.5} after {} steps",
        run.n_bar, run.p0, run.stats.steps
    );
    Ok(())
}

//! Closed-form excitation statistics without any time evolution: the
//! geometric law over energy ranks, its coupling-strength dependence, and
//! the qubit-count estimate for beating a classical scan on real hardware.

use qanneal::analytic::{effective_temperature, geometric_prediction, hardware_estimate, PParam};

fn main() -> qanneal::Result<()> {
    let n_qubits = 10;
    let dim = 1usize << n_qubits;

    println!("N = {n_qubits} ({dim} states), P(n) = p^n (1-p) / (1 - p^dim)\n");
    println!("{:>6} {:>12} {:>12} {:>12} {:>10}", "g", "p", "P(0)", "<n>", "n_bar");
    for g in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let pred = geometric_prediction(g, dim)?;
        let p = match pred.p {
            PParam::Uniform(p) => p,
            PParam::PerState(_) => unreachable!("uniform overlaps"),
        };
        println!("{g:6.2} {p:12.6} {:12.6} {:12.4} {:10.6}", pred.p0, pred.mean_n, pred.n_bar);
    }

    // the rank distribution is thermal-like; the matching temperature
    // follows from p = exp(-delta / k_B T_eff)
    let g = 2.0;
    let pred = geometric_prediction(g, dim)?;
    let t_eff = effective_temperature(g, dim, 1.0)?;
    println!("\ng = {g}: k_B T_eff in units of the level spacing = {t_eff:.4}");
    println!("leading probabilities: {:?}", &pred.probabilities[..4]);

    // how many qubits before a 10 GHz / 1 ms / 1000-run budget stops scaling
    let bound = hardware_estimate(1e10, 1e-3, 1000)?;
    println!("\nhardware bound for (10 GHz, 1 ms, 1000 runs): {bound:.2} qubits");
    Ok(())
}

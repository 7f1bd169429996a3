// Scratch probe for acceptance calibration. Not part of the shipped examples.

use qanneal::analytic::geometric_prediction;
use qanneal::dynamics::{evolve, EvolveOptions};
use qanneal::ising::{IsingInstance, RandomMode};
use qanneal::schedule::{Protocol, Schedule};

fn tvd(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

/// Scale-free minimum-gap measure: min spacing divided by the typical
/// minimum delta_bar/(dim-1) of iid spacings. u ~ Exp(1) for flat spectra.
fn gap_stats(inst: &IsingInstance) -> (f64, f64) {
    let stats = inst.stats();
    let dim = inst.dim();
    let sorted: Vec<f64> = stats.perm.iter().map(|&b| inst.energy(b)).collect();
    let delta_bar = stats.bandwidth / (dim as f64 - 1.0);
    let mut min_all = f64::INFINITY;
    let mut min_low = f64::INFINITY;
    for (i, w) in sorted.windows(2).enumerate() {
        let s = w[1] - w[0];
        if s < min_all {
            min_all = s;
        }
        if i < 8 && s < min_low {
            min_low = s;
        }
    }
    (min_all * (dim as f64 - 1.0) / delta_bar, min_low / delta_bar)
}

fn run_tvd(inst: &IsingInstance, g: f64) -> f64 {
    let sched = Schedule::new(Protocol::ProjectorInvT, g, inst, 100.0, 1000.0).unwrap();
    let opts = EvolveOptions { rel_tol: 1e-9, abs_tol: 1e-11, ..Default::default() };
    let res = evolve(inst, &sched, &opts).unwrap();
    let pred = geometric_prediction(g, inst.dim());
    tvd(&res.probabilities, &pred)
}

fn guarded(n: usize, seed: u64, floor: f64) -> (IsingInstance, u32) {
    for attempt in 0..64u32 {
        let s = seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let inst = IsingInstance::random(RandomMode::FullRandomCouplings, n, s).unwrap();
        let (u, _) = gap_stats(&inst);
        if u >= floor && inst.stats().ground_degeneracy == 1 {
            return (inst, attempt);
        }
    }
    panic!("no instance passed the gap floor in 64 attempts");
}

fn main() {
    let t_all = std::time::Instant::now();

    // Part A: TVD vs min-gap correlation at the historically worst cells.
    println!("part A: per-seed TVD vs gap measures");
    for &(n, g) in &[(2usize, 1.0f64), (4, 2.0), (4, 4.0), (5, 1.0), (5, 2.0), (6, 2.0)] {
        let mut rows: Vec<(f64, f64, f64, u64)> = Vec::new();
        for k in 0..24u64 {
            let seed = 10_000 * n as u64 + 100 * (g as u64) + k;
            let inst = IsingInstance::random(RandomMode::FullRandomCouplings, n, seed).unwrap();
            if inst.stats().ground_degeneracy != 1 {
                continue;
            }
            let (u_all, u_low) = gap_stats(&inst);
            rows.push((run_tvd(&inst, g), u_all, u_low, seed));
        }
        rows.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        println!("cell N={n} g={g}: worst five of {} seeds", rows.len());
        for r in rows.iter().take(5) {
            println!("  tvd={:.3e} u_all={:.3} low/mean={:.3} seed={}", r.0, r.1, r.2, r.3);
        }
        let med = rows[rows.len() / 2].0;
        let over = rows.iter().filter(|r| r.0 > 0.02).count();
        println!("  median tvd={med:.3e} over_threshold={over}/{}", rows.len());
    }
    println!("part A wall {:?}", t_all.elapsed());

    // Part B: guarded grid scan per master seed.
    for &floor in &[0.2f64, 0.5] {
        println!("part B: floor={floor}");
        for &master in &[11u64, 21, 31, 41, 51, 61, 71, 81] {
            let mut worst = (0.0f64, 0usize, 0.0f64);
            let mut redraws = 0u32;
            for n in 2..=10usize {
                for (gi, &g) in [1.0f64, 2.0, 4.0, 8.0].iter().enumerate() {
                    let seed = qanneal::experiments::realization_seed(master, n, gi);
                    let (inst, att) = guarded(n, seed, floor);
                    redraws += att;
                    let t = run_tvd(&inst, g);
                    if t > worst.0 {
                        worst = (t, n, g);
                    }
                }
            }
            println!(
                "  master={master} worst={:.3e} at N={} g={} redraws={redraws}",
                worst.0, worst.1, worst.2
            );
        }
    }
    println!("total wall {:?}", t_all.elapsed());
}

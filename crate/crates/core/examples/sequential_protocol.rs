//! Outcome distribution of the one-control-qubit protocol, checked against the
//! joint control and auxiliary simulation.

use coherence_shor::numtheory::{Enumeration, FactorInstance};
use coherence_shor::protocol::{self, ProtocolConfig};

fn main() -> coherence_shor::Result<()> {
    let inst = FactorInstance::with_bits(15, 7, 6)?;
    for p in [1.0, 0.6, 0.0] {
        let config = ProtocolConfig::uniform(inst, p, 0)?;
        let dist = protocol::averaged_distribution(&config)?;
        let oracle = protocol::brute_force_oracle(&config)?;
        let gap = dist
            .iter()
            .zip(&oracle.distribution)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let exact = protocol::exact_success_probability(&config, Enumeration::Candidates)?;
        let top: Vec<(usize, f64)> = {
            let mut v: Vec<(usize, f64)> = dist.iter().copied().enumerate().collect();
            v.sort_by(|a, b| b.1.total_cmp(&a.1));
            v.truncate(4);
            v
        };
        println!(
            "p = {p}: success {:.6}, oracle {:.6}, max gap {gap:.1e}, most likely {top:.4?}",
            exact.exact, oracle.success
        );
    }
    Ok(())
}

//! Seeded sampling against the exact value.

use coherence_shor::numtheory::{Enumeration, FactorInstance};
use coherence_shor::protocol::{self, ProtocolConfig};

fn main() -> coherence_shor::Result<()> {
    let inst = FactorInstance::new(15, 7)?;
    for p in [1.0, 0.5, 0.0] {
        let config = ProtocolConfig::uniform(inst, p, 42)?;
        let exact = protocol::exact_success_probability(&config, Enumeration::Candidates)?.exact;
        let s = protocol::sample_trials(&config, 50_000)?;
        println!(
            "p = {p}: exact {exact:.5}, sampled {:.5} +- {:.5} ({} / {})",
            s.frequency, s.stderr, s.successes, s.trials
        );
    }
    let config = ProtocolConfig::uniform(inst, 1.0, 42)?;
    for i in 0..5 {
        println!("{:?}", protocol::run_trial(&config, i));
    }
    Ok(())
}

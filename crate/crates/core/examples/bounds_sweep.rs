//! Lower bound, exact value and upper bound as the resources vary.

use coherence_shor::bounds::{self, BoundReport, UpperBoundForm};
use coherence_shor::numtheory::{Enumeration, FactorInstance};
use coherence_shor::protocol::{self, ProtocolConfig};

fn main() -> coherence_shor::Result<()> {
    let inst = FactorInstance::new(21, 2)?;
    let (lo, hi) = bounds::classical_bounds(&inst);
    println!("N = 21, x = 2, r = {}, L = {}, classical in [{lo:.5}, {hi:.5}]", inst.order(), inst.bits());
    println!("p     lower    exact    upper");
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let config = ProtocolConfig::uniform(inst, p, 0)?;
        let exact = protocol::exact_success_probability(&config, Enumeration::Candidates)?.exact;
        let b = BoundReport::new(&config, Some(exact), UpperBoundForm::DoubleFloor);
        println!("{p:.1}   {:.5}  {exact:.5}  {:.5}", b.lower, b.upper);
    }
    for l in [1, 2, 4, 8, 16] {
        println!("viete({l:2}) = {:.10}", bounds::viete_product(l));
    }
    println!("4/pi^2    = {:.10}", bounds::FOUR_OVER_PI_SQ);
    Ok(())
}

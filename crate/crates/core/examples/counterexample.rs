//! Pre-processing by a detection-incoherent channel can raise D.

use coherence_shor::measures::{self, CounterexampleWitness};

fn main() -> coherence_shor::Result<()> {
    let w = CounterexampleWitness::standard();
    let report = measures::verify_witness(&w)?;
    println!("D(theta)       = {:.12}", report.d_theta);
    println!("D(theta o phi) = {:.12}", report.d_composed);
    println!("violation      = {:.12}", report.violation());
    println!("phi DI: {}, CPTP: {}", report.phi_is_di, report.phi_is_cptp);
    println!("Choi spectrum of phi: {:.6?}", report.phi_choi_eigenvalues);
    Ok(())
}

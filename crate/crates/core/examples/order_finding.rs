//! Continued-fraction post-processing of every outcome for N = 15, x = 7.

use coherence_shor::numtheory::{self, CandidateKind, Enumeration, FactorInstance};

fn main() -> coherence_shor::Result<()> {
    let inst = FactorInstance::new(15, 7)?;
    println!("N = {}, x = {}, r = {}, L = {}", inst.n(), inst.x(), inst.order(), inst.bits());

    for k in [0, 64, 63, 65, 100, 192] {
        let cf = numtheory::continued_fraction(k, inst.q())?;
        let out = numtheory::cfa_estimate_order(k, &inst)?;
        println!("k = {k:3}: convergents {:?} -> estimate {:?}", cf.convergents(), out.estimate);
    }

    for j in numtheory::coprime_numerators(inst.order()) {
        let k1 = numtheory::candidate_set(j, &inst, CandidateKind::Guaranteed)?;
        let k2 = numtheory::candidate_set(j, &inst, CandidateKind::Permitted)?;
        println!("j = {j}: |K1| = {}, |K2| = {}", k1.len(), k2.len());
    }

    let f = numtheory::count_f(&inst, Enumeration::Exhaustive);
    let (lo, hi) = numtheory::f_bounds(&inst);
    println!("f = {f} in [{lo}, {hi}]");
    println!("factors from r: {:?}", numtheory::extract_factor(&inst)?);
    Ok(())
}

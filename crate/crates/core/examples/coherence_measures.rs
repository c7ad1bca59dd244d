//! Cohering power, NSID and the sign-vector functional along the two families.

use coherence_shor::channels::{ChannelFamily, QuantumChannel};
use coherence_shor::measures;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coherence_shor::Result<()> {
    println!("p     C(prep)  M(detect)  D(detect)");
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let prep = ChannelFamily::prep(p)?.channel();
        let detect = ChannelFamily::detect(p)?.channel();
        println!(
            "{p:.1}   {:.6} {:.6}   {:.6}",
            measures::cohering_power(&prep)?.value,
            measures::nsid_qubit(&detect)?.value,
            measures::d_functional(&detect)?.value,
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ch = QuantumChannel::random(2, 2, 2, &mut rng);
    let d = measures::d_functional(&ch)?;
    println!("random channel: D = {:.6}, witness {:?}", d.value, d.witness);
    Ok(())
}

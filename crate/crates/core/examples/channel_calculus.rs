//! Kraus, Choi and membership checks on a few qubit channels.

use coherence_shor::channels::{ChannelFamily, ChannelSpec, DensityMatrix, QuantumChannel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn describe(name: &str, ch: &QuantumChannel) {
    let eig = ch.choi().eigenvalues();
    println!(
        "{name:>12}: kraus = {}, cptp = {}, unital = {}, mio = {}, di = {}, choi spectrum = {:.3?}",
        ch.kraus().len(),
        ch.is_cptp(),
        ch.is_unital(),
        ch.is_mio(),
        ch.is_di(),
        eig
    );
}

fn main() -> coherence_shor::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    describe("hadamard", &QuantumChannel::hadamard());
    describe("dephasing", &QuantumChannel::dephasing(2));
    describe("prep(0.4)", &ChannelFamily::prep(0.4)?.channel());
    describe("random di", &QuantumChannel::random_di(2, 2, &mut rng));
    describe("random mio", &QuantumChannel::random_mio(2, 2, &mut rng));

    let h = QuantumChannel::hadamard();
    let plus = h.apply(&DensityMatrix::basis(2, 0))?;
    println!("H|0><0|H = {:.3}", plus.matrix());

    let composed = QuantumChannel::dephasing(2).compose(&h);
    describe("dephase o H", &composed);

    let spec = ChannelSpec::from_channel(&ChannelFamily::detect(0.25)?.channel());
    println!("{}", serde_json::to_string(&spec).expect("serialisable"));
    Ok(())
}

//! End-to-end factoring through the command-line entry point.

fn main() {
    for p in ["1", "0.5", "0"] {
        let code = coherence_shor::cli::main_with([
            "coherence-shor", "factor", "--n", "15", "--p-prep", p, "--p-detect", p, "--seed", "7",
        ]);
        assert_eq!(code, 0);
    }
}

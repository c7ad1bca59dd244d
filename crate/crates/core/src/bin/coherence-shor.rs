fn main() {
    std::process::exit(coherence_shor::cli::main_with(std::env::args_os()));
}

fn main() {
    std::process::exit(khperiodic::cli::main());
}

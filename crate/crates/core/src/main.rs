fn main() {
    std::process::exit(hypvis::cli::main());
}

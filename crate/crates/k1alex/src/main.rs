fn main() {
    std::process::exit(k1alex::cli::main_with_args(std::env::args()));
}

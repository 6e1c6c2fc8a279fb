fn main() {
    std::process::exit(hyperdecay::cli::main_with_args(std::env::args_os()));
}

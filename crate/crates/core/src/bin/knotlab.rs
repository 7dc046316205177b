fn main() {
    std::process::exit(knotlab::cli::main_with_args(std::env::args_os()));
}

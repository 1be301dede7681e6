fn main() {
    std::process::exit(polylab::cli::main_with_args(std::env::args_os()));
}

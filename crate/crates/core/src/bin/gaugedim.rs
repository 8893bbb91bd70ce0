fn main() {
    std::process::exit(gaugedim::cli::main_with_args(std::env::args_os()));
}

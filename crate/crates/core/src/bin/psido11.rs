fn main() {
    std::process::exit(psido11::cli::main_with_args(std::env::args_os()));
}

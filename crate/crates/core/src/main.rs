fn main() {
    std::process::exit(logoclass::cli::main_with_args(std::env::args_os()));
}

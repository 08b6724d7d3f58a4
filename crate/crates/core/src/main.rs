fn main() {
    std::process::exit(goldbach_lab::cli::main_with_args(std::env::args_os()));
}

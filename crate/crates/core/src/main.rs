fn main() {
    std::process::exit(leja_lab::cli::main_with_args(std::env::args_os()));
}

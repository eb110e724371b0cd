fn main() {
    std::process::exit(a2tilde::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(costas::cli::main_with_args(std::env::args_os()));
}

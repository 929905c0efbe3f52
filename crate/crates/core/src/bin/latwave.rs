fn main() {
    std::process::exit(latwave::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(mayerpath::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(muntz_core::cli::main_with_args(std::env::args_os()));
}

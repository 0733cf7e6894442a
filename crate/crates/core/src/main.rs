//! Command-line entry point.

fn main() {
    std::process::exit(superspecial::cli::main_with_args(std::env::args_os()));
}

fn main() { std::process::exit(triptych::cli::run(std::env::args_os())) }

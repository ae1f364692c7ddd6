fn main() {
    std::process::exit(cubic_modular::cli::run(std::env::args_os()));
}

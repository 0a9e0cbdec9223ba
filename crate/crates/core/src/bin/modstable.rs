fn main() {
    std::process::exit(modstable::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(cantus::cli::run(std::env::args_os()));
}

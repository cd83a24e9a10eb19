fn main() {
    std::process::exit(locdeg::cli::run(std::env::args_os()));
}

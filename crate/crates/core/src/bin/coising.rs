fn main() {
    std::process::exit(coising::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(antijam::cli::run(std::env::args_os()));
}

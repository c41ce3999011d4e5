fn main() {
    std::process::exit(ropeladder::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(twistflux::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(flowinv::cli::run(std::env::args()));
}

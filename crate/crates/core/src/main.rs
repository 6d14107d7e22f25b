fn main() {
    std::process::exit(bounded_density::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(achromatic::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(morikit::cli::run(std::env::args_os()));
}

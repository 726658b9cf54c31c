fn main() {
    std::process::exit(pathbetti::cli::run());
}

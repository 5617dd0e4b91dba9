fn main() {
    std::process::exit(jssp::cli::run());
}

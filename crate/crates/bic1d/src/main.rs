fn main() {
    std::process::exit(bic1d::cli::run());
}

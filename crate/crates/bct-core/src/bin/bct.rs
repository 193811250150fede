fn main() {
    std::process::exit(bct_core::cli::run());
}

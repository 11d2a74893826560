fn main() {
    std::process::exit(matrix_waring::cli::run());
}

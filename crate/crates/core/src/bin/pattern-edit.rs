fn main() {
    std::process::exit(pattern_edit::cli::cli_main());
}

fn main() {
    std::process::exit(rex_cli::run());
}

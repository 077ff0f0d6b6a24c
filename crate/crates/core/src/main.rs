fn main() {
    std::process::exit(hasse_forge::cli::entry());
}

fn main() {
    std::process::exit(gkpid::cli::run());
}

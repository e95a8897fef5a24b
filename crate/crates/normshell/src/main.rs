fn main() {
    std::process::exit(normshell::cli::run(std::env::args_os()));
}

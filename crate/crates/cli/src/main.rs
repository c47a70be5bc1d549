fn main() {
    std::process::exit(coprime_cli::run(std::env::args_os()));
}

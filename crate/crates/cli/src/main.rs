fn main() {
    std::process::exit(korteweg_cli::run_cli(std::env::args_os()));
}

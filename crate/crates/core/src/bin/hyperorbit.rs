fn main() {
    std::process::exit(hyperorbit::cli::run_cli(std::env::args_os()));
}

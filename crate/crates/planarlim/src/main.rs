fn main() {
    std::process::exit(planarlim::cli::run_cli(std::env::args_os()));
}

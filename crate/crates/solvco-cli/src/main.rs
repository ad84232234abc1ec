fn main() {
    std::process::exit(solvco_cli::run_cli());
}

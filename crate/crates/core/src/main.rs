fn main() {
    std::process::exit(thermal_bell::cli::run(std::env::args_os()));
}

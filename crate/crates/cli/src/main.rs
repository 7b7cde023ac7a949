fn main() {
    std::process::exit(pds_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(granular_growth::harness::cli_main(std::env::args_os()));
}

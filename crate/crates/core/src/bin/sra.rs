fn main() {
    std::process::exit(sra_core::cli::run(std::env::args_os()));
}

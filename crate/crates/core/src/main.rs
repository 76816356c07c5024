fn main() {
    std::process::exit(thue_core::cli::run(std::env::args_os()));
}

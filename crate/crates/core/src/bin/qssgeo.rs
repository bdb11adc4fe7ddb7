fn main() {
    std::process::exit(qssgeo::cli::main_with_args(std::env::args_os()));
}

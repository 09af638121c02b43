fn main() {
    std::process::exit(gridram::cli::run(std::env::args_os()));
}

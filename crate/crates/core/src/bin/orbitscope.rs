fn main() {
    std::process::exit(orbitscope::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(posipoly::cli::run(std::env::args_os()));
}

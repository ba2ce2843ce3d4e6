fn main() {
    std::process::exit(quartrep::cli::run(std::env::args_os()));
}

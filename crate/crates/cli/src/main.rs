fn main() {
    std::process::exit(fourfold_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(weakdeg::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(lambert_hpq::cli::run(std::env::args_os()));
}

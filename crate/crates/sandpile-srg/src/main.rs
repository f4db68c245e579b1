fn main() {
    std::process::exit(sandpile_srg::cli::run(std::env::args_os()));
}

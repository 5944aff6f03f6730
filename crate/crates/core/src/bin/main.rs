fn main() {
    std::process::exit(syntax_distract::cli::run(std::env::args_os()));
}

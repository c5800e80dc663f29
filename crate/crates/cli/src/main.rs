fn main() {
    std::process::exit(slowperc_cli::run(std::env::args_os()));
}

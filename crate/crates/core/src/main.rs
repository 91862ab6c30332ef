fn main() {
    std::process::exit(idnc::cli::main_with_args(std::env::args_os()));
}

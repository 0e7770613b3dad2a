fn main() {
    std::process::exit(pushcalc::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(focaljet::cli::main_from_env());
}

fn main() {
    std::process::exit(poleplace::cli::main_with_env());
}

fn main() {
    std::process::exit(entmono::cli::main_entry());
}

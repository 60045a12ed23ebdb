fn main() {
    std::process::exit(gbs::cli::main_entry());
}

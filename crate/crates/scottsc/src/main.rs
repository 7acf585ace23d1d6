fn main() {
    std::process::exit(scottsc::cli::main_entry());
}

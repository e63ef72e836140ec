fn main() {
    std::process::exit(symtrig::cli::main());
}

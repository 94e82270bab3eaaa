fn main() {
    std::process::exit(tailindex::cli::main());
}

fn main() {
    std::process::exit(polybloch::cli::main());
}

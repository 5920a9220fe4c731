fn main() {
    std::process::exit(clebsch::cli::main());
}

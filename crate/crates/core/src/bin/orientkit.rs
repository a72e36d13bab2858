fn main() {
    orientkit::cli::main()
}

fn main() {
    std::process::exit(gengreen::cli::main_with(std::env::args_os()));
}

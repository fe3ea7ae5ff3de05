fn main() {
    let (out, code) = causaldef::cli::run(std::env::args_os());
    if code < causaldef::cli::EXIT_REGIME {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}

fn main() {
    let (code, out) = eqfix_cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}

fn main() {
    let (code, out) = nonsimple::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}

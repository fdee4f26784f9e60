fn main() {
    let (code, output) = polygraphs::cli::run_command(std::env::args_os());
    print!("{output}");
    std::process::exit(code);
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = cli_shell::main_with(args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}

use std::io::Write;

fn main() {
    let exec = constacyclic_cli::run(std::env::args_os());
    std::io::stdout().write_all(exec.stdout.as_bytes()).ok();
    std::io::stderr().write_all(exec.stderr.as_bytes()).ok();
    std::process::exit(exec.code);
}

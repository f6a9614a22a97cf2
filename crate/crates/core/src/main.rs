use std::io::Write;

fn main() {
    let out = torusq::report::run_cli(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}

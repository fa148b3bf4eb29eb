use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exit = tpfree_cli::run(std::env::args_os());
    print!("{}", exit.stdout);
    eprint!("{}", exit.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(exit.code as u8)
}

use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = ordgraph_cli::run(std::env::args().skip(1));
    if code == 0 {
        print!("{}", output);
    } else {
        eprint!("{}", output);
    }
    ExitCode::from(code as u8)
}

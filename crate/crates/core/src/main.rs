use std::io::Write;
use std::process::ExitCode;

use bfm_workbench::cli::execute;

fn main() -> ExitCode {
    let e = execute(std::env::args_os());
    if let Some(m) = &e.message {
        if e.code == 0 {
            print!("{m}");
        } else {
            eprintln!("{}", m.trim_end());
        }
    }
    if let Some(json) = &e.manifest {
        if !e.written {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(json.as_bytes());
        }
    }
    ExitCode::from(e.code as u8)
}

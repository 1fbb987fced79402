use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kbundle_cli::cli::Cli;
use kbundle_cli::run::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.task_kind();
    let job = match cli.job() {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run(command, job, !cli.common.sequential);
    let to_stdout = cli.common.json_out.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
        if let Some(path) = &cli.common.json_out {
            let written = std::fs::File::create(path).and_then(|mut f| writeln!(f, "{}", report.to_json()));
            if let Err(e) = written {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    if let Some(e) = &report.error {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(report.exit_code as u8)
}

use std::process::ExitCode;

use clap::Parser;

use acqsched_cli::{cmd_aggregate, cmd_report, cmd_run, summary_line, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args).map(|summary| {
            for t in &summary.trajectories {
                println!("{}", summary_line(t));
            }
            let failed = summary.failed();
            println!(
                "wrote {} trajectories ({} failed) to {}",
                summary.trajectories.len(),
                failed,
                summary.path.display()
            );
            if failed == summary.trajectories.len() {
                eprintln!("error: every cell failed");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }),
        Command::Aggregate { input, output } => cmd_aggregate(&input, &output).map(|r| {
            println!(
                "aggregated {} functions, {} curve rows -> {}",
                r.bounds.len(),
                r.curves.len(),
                output.display()
            );
            for b in r.bounds.iter().filter(|b| b.degenerate) {
                println!("warning: {} has a constant log-regret; normalized to 0", b.function);
            }
            ExitCode::SUCCESS
        }),
        Command::Report { aggregate, output } => cmd_report(&aggregate, &output).map(|files| {
            println!("wrote {} plot-data files to {}", files.len(), output.display());
            ExitCode::SUCCESS
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

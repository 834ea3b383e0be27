use clap::Parser;

fn main() -> std::process::ExitCode {
    let cli = lsgo_harness::cli::Cli::parse();
    match lsgo_harness::execute(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

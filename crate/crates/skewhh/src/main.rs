use clap::Parser;

fn main() -> std::process::ExitCode {
    let cli = skewhh::verifier::cli::Cli::parse();
    skewhh::verifier::cli::main_with(cli)
}

mod cli;

fn main() {
    std::process::exit(cli::run_command(std::env::args_os()));
}

fn main() -> std::process::ExitCode {
    dyntaylor::cli::run(std::env::args_os())
}

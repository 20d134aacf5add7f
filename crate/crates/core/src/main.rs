fn main() -> std::process::ExitCode {
    paley::cli::run(std::env::args_os())
}
